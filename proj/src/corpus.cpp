#include "normgen/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "normgen/broise.hpp"
#include "normgen/commutator.hpp"

namespace normgen {

namespace {

constexpr double kPi = std::numbers::pi;

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

CaseResult from_certificate(const Certificate& c, const VerifyReport& r) {
  CaseResult out;
  out.n = static_cast<int>(c.target.rows());
  out.length = r.length;
  out.budget = c.claimed_budget;
  out.residual = r.residual;
  out.residual_tol = r.residual_tol;
  out.pass = r.pass;
  if (!r.pass && !r.failures.empty()) out.note = r.failures.front();
  return out;
}

std::vector<double> random_partition(std::mt19937_64& rng, int total, int parts) {
  // parts positive integers summing to total, as cut points.
  std::vector<int> cuts;
  for (int k = 1; k < total; ++k) cuts.push_back(k);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(static_cast<std::size_t>(parts - 1));
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> sizes;
  int prev = 0;
  for (int c : cuts) {
    sizes.push_back(c - prev);
    prev = c;
  }
  sizes.push_back(total - prev);
  return sizes;
}

RationalSpectrum random_rational(std::mt19937_64& rng, int s0, int atoms) {
  const std::vector<double> sizes = random_partition(rng, s0, atoms);
  CircleSpectrum angles = random_spectrum(atoms, rng);
  std::sort(angles.angles.begin(), angles.angles.end());
  angles.angles.erase(std::unique(angles.angles.begin(), angles.angles.end()), angles.angles.end());
  while (static_cast<int>(angles.angles.size()) < atoms) {
    angles.angles.push_back(canonical_angle(angles.angles.back() + 0.37));
  }
  std::vector<RationalAtom> out;
  for (int k = 0; k < atoms; ++k) out.push_back({angles.angles[k], Rational(static_cast<std::int64_t>(sizes[k]), s0)});
  return RationalSpectrum::from_atoms(std::move(out));
}

RationalSpectrum shrink_rational(const RationalSpectrum& r, double factor) {
  CircleSpectrum spec;
  for (const auto& a : r.atoms()) spec.angles.push_back(a.angle);
  const CenteredSpectrum c = center_phase(spec);
  std::vector<RationalAtom> out;
  for (std::size_t k = 0; k < c.angles.size(); ++k) out.push_back({factor * c.angles[k], r.atoms()[k].weight});
  return RationalSpectrum::from_atoms(std::move(out));
}

long ceil_ratio(const Rational& q) { return q.numerator() / q.denominator() + (q.denominator() == 1 ? 0 : 1); }

}  // namespace

Matrix random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

CircleSpectrum random_spectrum(int n, std::mt19937_64& rng) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (double& x : a) x = uniform(rng, -kPi, kPi);
  std::sort(a.begin(), a.end());
  const double jitter = 0.5 / std::max(1, n);
  for (double& x : a) x += uniform(rng, -jitter, jitter);
  if (n >= 3 && uniform(rng, 0.0, 1.0) < 0.2) {
    const int k = uniform_int(rng, 0, n - 2);
    a[static_cast<std::size_t>(k + 1)] = a[static_cast<std::size_t>(k)];
  }
  return CircleSpectrum::from_angles(std::move(a));
}

UnitaryRep random_conjugate(const CircleSpectrum& spec, std::mt19937_64& rng) {
  const Matrix w = random_unitary(spec.size(), rng);
  return UnitaryRep::from_matrix(w * diagonal_matrix(spec.angles) * w.adjoint());
}

CircleSpectrum shrink_to(const CircleSpectrum& spec, double bound) {
  double l0 = ell_profile(spec).values[0];
  if (l0 <= bound) return spec;
  const CenteredSpectrum c = center_phase(spec);
  double f = 1.0;
  std::vector<double> a = c.angles;
  for (int it = 0; it < 200 && l0 > bound; ++it) {
    f *= std::max(0.05, 0.95 * bound / l0);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = f * c.angles[k];
    l0 = ell_profile(CircleSpectrum::from_angles(a)).values[0];
  }
  return CircleSpectrum::from_angles(a);
}

std::mt19937_64 case_rng(std::uint64_t seed, const std::string& suite, int id) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                   static_cast<std::uint32_t>(id)};
  for (char ch : suite) words.push_back(static_cast<unsigned char>(ch));
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

PairCase sample_rank_dependent(std::mt19937_64& rng, int n_min, int n_max, int m_max) {
  const int n = uniform_int(rng, std::max(2, n_min), std::max(2, n_max));
  CircleSpectrum vs = random_spectrum(n, rng);
  while (ell_profile(vs).values[0] < 0.05) vs = random_spectrum(n, rng);
  const int m = uniform_int(rng, 1, m_max);
  const CircleSpectrum us = shrink_to(random_spectrum(n, rng), m * ell_profile(vs).values[0]);
  return {n, random_conjugate(us, rng), random_conjugate(vs, rng), m, 1};
}

PairCase sample_rank_independent(std::mt19937_64& rng, int n_min, int n_max, int m_max) {
  const int n = uniform_int(rng, std::max(3, n_min), std::max(3, n_max));
  const int s = uniform_int(rng, 2, (n - 1) / 2 + 1);
  CircleSpectrum vs = random_spectrum(n, rng);
  while (ell_profile(vs).values[s - 1] < 0.05) vs = random_spectrum(n, rng);
  const int m = uniform_int(rng, 1, m_max);
  const CircleSpectrum us = shrink_to(random_spectrum(n, rng), m * ell_profile(vs).values[s - 1]);
  return {n, random_conjugate(us, rng), random_conjugate(vs, rng), m, s};
}

PairCase sample_full(std::mt19937_64& rng, int n_min, int n_max) {
  const int n = uniform_int(rng, std::max(2, n_min), std::max(2, n_max));
  CircleSpectrum vs = random_spectrum(n, rng);
  while (ell_profile(vs).values[0] < 0.05) vs = random_spectrum(n, rng);
  const CircleSpectrum us = random_spectrum(n, rng);
  return {n, random_conjugate(us, rng), random_conjugate(vs, rng), 1, 1};
}

RationalCase sample_pipeline(std::mt19937_64& rng, int s0_max, int m_max) {
  static const Rational kWindows[] = {Rational(1), Rational(1, 2), Rational(1, 3), Rational(2, 3),
                                      Rational(1, 4), Rational(3, 4), Rational(1, 6)};
  for (;;) {
    const int s0 = uniform_int(rng, 2, s0_max);
    const RationalSpectrum u = random_rational(rng, s0, uniform_int(rng, 1, std::min(s0, 6)));
    const RationalSpectrum v = random_rational(rng, s0, uniform_int(rng, 2, std::min(s0, 6)));
    Rational s = kWindows[uniform_int(rng, 0, 6)];
    const Embedding e = lcm_embed(u, v);
    const SProfile pv = ell_profile(e.b);
    long window = ceil_ratio(s * e.s0);
    while (window > 1 && pv.values[static_cast<std::size_t>(window - 1)] < 0.05) {
      s = Rational(window - 1, e.s0);
      window = ceil_ratio(s * e.s0);
    }
    const double lv = pv.values[static_cast<std::size_t>(window - 1)];
    if (lv < 0.05) continue;
    const int m = uniform_int(rng, 1, m_max);
    RationalSpectrum us = u;
    double lu = rational_ell(us, Rational(0));
    for (int it = 0; it < 200 && lu > m * lv; ++it) {
      us = shrink_rational(us, std::max(0.05, 0.95 * m * lv / lu));
      lu = rational_ell(us, Rational(0));
    }
    if (lu > m * lv) continue;
    return {us, v, m, s};
  }
}

const std::vector<std::string>& corpus_suites() {
  static const std::vector<std::string> names{"rank_dependent", "rank_independent", "full", "pipeline", "broise",
                                              "commutator"};
  return names;
}

CaseResult run_case(const std::string& suite, int id, const CorpusOptions& o) {
  std::mt19937_64 rng = case_rng(o.seed, suite, id);
  CaseResult out;
  try {
    if (suite == "rank_dependent") {
      const PairCase p = sample_rank_dependent(rng, o.n_min, o.n_max);
      const Certificate c = generate_rank_dependent(p.u, p.v, p.m);
      out = from_certificate(c, verify_certificate(c));
      out.pass = out.pass && out.length <= 8L * p.m * p.n;
    } else if (suite == "rank_independent") {
      const PairCase p = sample_rank_independent(rng, o.n_min, o.n_max);
      const Certificate c = generate_rank_independent(p.u, p.v, p.m, p.s);
      out = from_certificate(c, verify_certificate(c));
      out.pass = out.pass && out.length <= 24L * p.m * ((p.n + p.s - 1) / p.s);
    } else if (suite == "full") {
      const PairCase p = sample_full(rng, o.n_min, o.n_max);
      const Certificate c = generate_full(p.u, p.v);
      out = from_certificate(c, verify_certificate(c));
    } else if (suite == "pipeline") {
      const RationalCase p = sample_pipeline(rng);
      const Certificate c = pipeline_generate(p.u, p.v, p.m, p.s);
      out = from_certificate(c, verify_certificate(c));
      out.pass = out.pass && out.length <= 48L * p.m * ceil_ratio(Rational(1) / p.s);
    } else if (suite == "broise") {
      const int k = uniform_int(rng, 1, std::max(1, std::min(8, o.n_max)));
      const UnitaryRep w = UnitaryRep::from_matrix(random_unitary(k, rng));
      const Certificate c = broise_kernel_certificate(w, Symmetry::reference(k));
      out = from_certificate(c, verify_certificate(c));
      out.pass = out.pass && out.length == 4;
    } else if (suite == "commutator") {
      const int n = uniform_int(rng, std::max(2, o.n_min), std::max(2, o.n_max));
      const CircleSpectrum u = random_spectrum(n, rng);
      out.n = n;
      out.pass = aux_inequality_check(u).pass;
      const LlboundReport ll = llbound_diagnostic(u);
      out.metric = ll.degenerate ? 0.0 : ll.ratio;
    } else {
      throw Error(ErrorKind::Domain, "unknown suite " + suite);
    }
  } catch (const Error& e) {
    out.pass = false;
    out.note = e.what();
  }
  out.suite = suite;
  out.id = id;
  return out;
}

nlohmann::json run_corpus(const CorpusOptions& o) {
  if (o.n_min < 1 || o.n_max < o.n_min) throw Error(ErrorKind::Domain, "bad size range");
  if (o.cases < 0) throw Error(ErrorKind::Domain, "cases must be non-negative");
  struct Job {
    std::string suite;
    int id;
  };
  std::vector<Job> jobs;
  for (const std::string& s : corpus_suites()) {
    for (int id = 0; id < o.cases; ++id) jobs.push_back({s, id});
  }
  std::vector<CaseResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) results[k] = run_case(jobs[k].suite, jobs[k].id, o);
  };
  unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  std::sort(results.begin(), results.end(),
            [](const CaseResult& a, const CaseResult& b) { return std::tie(a.suite, a.id) < std::tie(b.suite, b.id); });

  nlohmann::json report;
  report["schema"] = "normgen-report/1";
  report["seed"] = o.seed;
  report["sizes"] = {o.n_min, o.n_max};
  report["cases_per_suite"] = o.cases;
  nlohmann::json suites = nlohmann::json::object();
  nlohmann::json cases = nlohmann::json::array();
  int failed_total = 0;
  for (const std::string& name : corpus_suites()) {
    int passed = 0, failed = 0;
    double max_residual = 0.0, max_ratio = 0.0, max_metric = 0.0;
    for (const CaseResult& r : results) {
      if (r.suite != name) continue;
      (r.pass ? passed : failed)++;
      max_residual = std::max(max_residual, r.residual);
      if (r.budget > 0) max_ratio = std::max(max_ratio, static_cast<double>(r.length) / r.budget);
      max_metric = std::max(max_metric, r.metric);
    }
    failed_total += failed;
    nlohmann::json s{{"passed", passed}, {"failed", failed}};
    if (name == "commutator") {
      s["max_llbound_ratio"] = max_metric;
      s["llbound_constant"] = kLlboundConstant;
    } else {
      s["max_residual"] = max_residual;
      s["max_budget_ratio"] = max_ratio;
    }
    suites[name] = s;
  }
  for (const CaseResult& r : results) {
    nlohmann::json c{{"suite", r.suite}, {"id", r.id}, {"n", r.n}, {"pass", r.pass}};
    if (r.suite != "commutator") {
      c["length"] = r.length;
      c["budget"] = r.budget;
      c["residual"] = r.residual;
    } else {
      c["llbound_ratio"] = r.metric;
    }
    if (!r.note.empty()) c["note"] = r.note;
    cases.push_back(std::move(c));
  }
  report["suites"] = suites;
  report["cases"] = cases;
  report["all_passed"] = failed_total == 0;
  return report;
}

}  // namespace normgen
