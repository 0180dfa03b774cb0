#include "normgen/generation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "normgen/su2_walk.hpp"

namespace normgen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTrivialAngle = 1e-15;

long ceil_div(long a, long b) { return (a + b - 1) / b; }

long ceil_inverse(double s) { return static_cast<long>(std::ceil(1.0 / s - 1e-12)); }

Matrix embed_blocks(int n, const std::vector<std::pair<int, Mat2>>& blocks) {
  Matrix out = Matrix::Identity(n, n);
  for (const auto& [j, b] : blocks) out.block(j, j, 2, 2) = b;
  return out;
}

// Source block data: the 2x2 commutator c = v_b r v_b* r*, its class angle and frame.
struct SourceBlock {
  Mat2 r;
  Mat2 c;
  double alpha = 0.0;
  Mat2 frame;  // c = frame diag(e^{i alpha}) frame*
};

SourceBlock source_block(std::span<const double> gamma, int j) {
  SourceBlock s;
  const double delta = canonical_angle(gamma[j] - gamma[j + 1]);
  if (std::abs(delta) <= kPi / 2) {
    s.r = swap2();
  } else {
    // A rotation by beta gives cos(alpha) = 1 - sin^2(beta) (1 - cos delta); pick alpha = pi/2.
    const double sb = std::sqrt(1.0 / (1.0 - std::cos(delta)));
    const double cb = std::sqrt(std::max(0.0, 1.0 - sb * sb));
    s.r << cb, -sb, sb, cb;
  }
  Mat2 vb = Mat2::Zero();
  vb(0, 0) = unit(gamma[j]);
  vb(1, 1) = unit(gamma[j + 1]);
  s.c = vb * s.r * vb.adjoint() * s.r.adjoint();
  s.alpha = class_angle(s.c);
  s.frame = conjugator_to_reference(s.c, s.alpha);
  return s;
}

void check_layout(const std::vector<int>& idx, int n, const char* what) {
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] < 0 || idx[a] > n - 2) throw Error(ErrorKind::Layout, std::string(what) + " block index out of range");
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (std::abs(idx[a] - idx[b]) < 2) throw Error(ErrorKind::Layout, std::string(what) + " blocks overlap");
    }
  }
}

// Permutation sending e_{j_k} -> e_{i_k}, e_{j_k+1} -> e_{i_k+1}; the rest in increasing order.
Matrix alignment(int n, const std::vector<int>& sources, const std::vector<int>& targets) {
  std::vector<int> image(static_cast<std::size_t>(n), -1);
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (std::size_t k = 0; k < sources.size(); ++k) {
    image[sources[k]] = targets[k];
    image[sources[k] + 1] = targets[k] + 1;
    hit[targets[k]] = hit[targets[k] + 1] = true;
  }
  int free_target = 0;
  for (int p = 0; p < n; ++p) {
    if (image[p] >= 0) continue;
    while (hit[free_target]) ++free_target;
    image[p] = free_target;
    hit[free_target] = true;
  }
  Matrix q = Matrix::Zero(n, n);
  for (int p = 0; p < n; ++p) q(image[p], p) = 1.0;
  return q;
}

// u ~ F diag(e^{i angles}) F* up to a unit scalar.
struct Frame {
  std::vector<double> angles;
  Matrix F;
};

Matrix permute_columns(const Matrix& w, const std::vector<int>& order) {
  Matrix out(w.rows(), w.cols());
  for (std::size_t k = 0; k < order.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = w.col(order[k]);
  return out;
}

// Centered and angle-sum ordered frame of the target.
Frame target_frame(const CircleSpectrum& spec, const Matrix& w) {
  const CenteredSpectrum centered = center_phase(spec);
  const AngleSumOrdering ord = angle_sum_optimalize(centered.angles);
  return {ord.angles, permute_columns(w, ord.sigma)};
}

struct BaseFrame {
  Frame frame;
  OptimalOrdering opt;
};

BaseFrame base_frame(const CircleSpectrum& spec, const Matrix& w) {
  OptimalOrdering opt = optimalize(spec);
  Frame f{opt.angles.angles, permute_columns(w, opt.order)};
  return {std::move(f), std::move(opt)};
}

std::vector<BlockTarget> product_factors(const std::vector<double>& angles) {
  std::vector<BlockTarget> out;
  double phi = 0.0;
  for (std::size_t i = 0; i + 1 < angles.size(); ++i) {
    phi += angles[i];
    if (angle_modulus(phi) > kTrivialAngle) out.push_back({static_cast<int>(i), phi});
  }
  return out;
}

void append_mapped(Fragment& out, const Fragment& frag, const Matrix& fu, const Matrix& fv) {
  for (const Step& st : frag) out.push_back({fu * st.g * fv.adjoint(), st.e});
}

struct Inputs {
  Matrix target;
  Matrix base;
  CircleSpectrum u;
  CircleSpectrum v;
  Matrix wu;
  Matrix wv;
};

Inputs inputs_from(const UnitaryRep& u, const UnitaryRep& v, std::uint64_t seed) {
  if (u.n() != v.n()) throw Error(ErrorKind::Dimension, "u and v must have the same size");
  Diagonalization du = diagonalize_normal(u, seed);
  Diagonalization dv = diagonalize_normal(v, seed + 1);
  return {u.matrix(), v.matrix(), std::move(du.spectrum), std::move(dv.spectrum), std::move(du.W), std::move(dv.W)};
}

Inputs inputs_diagonal(const CircleSpectrum& u, const CircleSpectrum& v) {
  if (u.size() != v.size()) throw Error(ErrorKind::Dimension, "u and v must have the same size");
  const int n = u.size();
  return {diagonal_matrix(u.angles), diagonal_matrix(v.angles), u, v, Matrix::Identity(n, n), Matrix::Identity(n, n)};
}

nlohmann::json tolerance_metadata() {
  return {{"unitarity", kTol.unitarity}, {"rank", kTol.rank}, {"ell", kTol.ell},
          {"eq_per_step", kTol.eq_per_step}, {"tie", kTol.tie}};
}

Certificate start_certificate(const Inputs& in, Theorem th, int m, double s, long budget) {
  Certificate c;
  c.target = in.target;
  c.base = in.base;
  c.theorem = th;
  c.params = {m, s, static_cast<int>(in.target.rows())};
  c.claimed_budget = budget;
  c.metadata["tolerances"] = tolerance_metadata();
  return c;
}

bool is_central(const CircleSpectrum& spec) { return ell_profile(spec).values[0] <= kTol.rank; }

// One single-block call per product factor, all from the widest gap of v.
Fragment rank_dependent_core(const Inputs& in, int m, nlohmann::json& meta) {
  const Frame tf = target_frame(in.u, in.wu);
  const BaseFrame bf = base_frame(in.v, in.wv);
  const int walk_m = 4 * m;
  const int j0 = bf.opt.sigma[0];
  Fragment out;
  int calls = 0;
  for (const BlockTarget& t : product_factors(tf.angles)) {
    const Fragment frag = generate_block(t, bf.frame.angles, walk_m, j0);
    append_mapped(out, frag, tf.F, bf.frame.F);
    ++calls;
  }
  meta["walk_multiplier"] = walk_m;
  meta["source_block"] = j0;
  meta["calls"] = calls;
  meta["heuristic_optimal_order"] = bf.opt.heuristic;
  return out;
}

// Largest set of pairwise separated indices among the given ones: every other element of each run.
std::vector<int> separated_subset(std::vector<int> idx) {
  std::sort(idx.begin(), idx.end());
  std::vector<int> out;
  std::size_t k = 0;
  while (k < idx.size()) {
    std::size_t end = k;
    while (end + 1 < idx.size() && idx[end + 1] == idx[end] + 1) ++end;
    for (std::size_t p = k; p <= end; p += 2) out.push_back(idx[p]);
    k = end + 1;
  }
  return out;
}

Fragment rank_independent_core(const Inputs& in, int m, int s, nlohmann::json& meta) {
  const Frame tf = target_frame(in.u, in.wu);
  const BaseFrame bf = base_frame(in.v, in.wv);
  const int walk_m = 4 * m;
  const int b = s / 2;

  std::vector<int> top(bf.opt.sigma.begin(), bf.opt.sigma.begin() + s);
  std::vector<int> cand = separated_subset(top);
  std::vector<std::pair<double, int>> by_alpha;
  for (int j : cand) by_alpha.emplace_back(source_block(bf.frame.angles, j).alpha, j);
  std::stable_sort(by_alpha.begin(), by_alpha.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<int> sources;
  for (int k = 0; k < b; ++k) sources.push_back(by_alpha[k].second);

  const std::vector<BlockTarget> factors = product_factors(tf.angles);
  Fragment out;
  int calls = 0;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<BlockTarget> group;
    for (const BlockTarget& t : factors)
      if (t.index % 2 == parity) group.push_back(t);
    std::stable_sort(group.begin(), group.end(), [](const BlockTarget& x, const BlockTarget& y) {
      return angle_modulus(x.angle) > angle_modulus(y.angle);
    });
    for (std::size_t start = 0; start < group.size(); start += static_cast<std::size_t>(b)) {
      const std::size_t len = std::min(group.size() - start, static_cast<std::size_t>(b));
      const std::vector<BlockTarget> chunk(group.begin() + static_cast<long>(start),
                                           group.begin() + static_cast<long>(start + len));
      const std::vector<int> src(sources.begin(), sources.begin() + static_cast<long>(len));
      append_mapped(out, generate_simultaneous(bf.frame.angles, chunk, src, walk_m), tf.F, bf.frame.F);
      ++calls;
    }
  }
  meta["walk_multiplier"] = walk_m;
  meta["block_size"] = 2 * b;
  meta["source_blocks"] = sources;
  meta["calls"] = calls;
  meta["heuristic_optimal_order"] = bf.opt.heuristic;
  return out;
}

Certificate rank_independent_from(const Inputs& in, int m, int s) {
  const int n = static_cast<int>(in.target.rows());
  if (m < 1) throw Error(ErrorKind::Domain, "m must be positive");
  if (s < 1 || 2 * (s - 1) > n - 1) throw Error(ErrorKind::Domain, "s must satisfy 1 <= s <= (n-1)/2 + 1");
  HypothesisReport hyp = hypothesis_check(in.u, in.v, m, s);
  if (!hyp.satisfied) throw HypothesisError(std::move(hyp));
  if (is_central(in.v)) throw Error(ErrorKind::Degenerate, "v is central");
  Certificate c = start_certificate(in, Theorem::RankIndep, m, s, 24L * m * ceil_div(n, s));
  if (is_central(in.u)) return c;
  if (s == 1) {
    c.metadata["fallback"] = "rank_dep";
    c.steps = rank_dependent_core(in, m, c.metadata);
  } else {
    c.steps = rank_independent_core(in, m, s, c.metadata);
  }
  return c;
}

}  // namespace

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::RankDep: return "rank_dep";
    case Theorem::RankIndep: return "rank_indep";
    case Theorem::FullGen: return "full_gen";
    case Theorem::Pipeline: return "pipeline";
    case Theorem::BroiseKernel: return "broise_kernel";
  }
  return "rank_dep";
}

Theorem theorem_from_string(const std::string& s) {
  for (Theorem t : {Theorem::RankDep, Theorem::RankIndep, Theorem::FullGen, Theorem::Pipeline, Theorem::BroiseKernel})
    if (s == to_string(t)) return t;
  throw Error(ErrorKind::Parse, "unknown theorem tag '" + s + "'");
}

HypothesisReport hypothesis_check(const CircleSpectrum& u, const CircleSpectrum& v, int m, int s) {
  if (u.size() != v.size()) throw Error(ErrorKind::Dimension, "u and v must have the same size");
  const int n = u.size();
  if (s < 0 || s > n) throw Error(ErrorKind::Domain, "s outside 0..n");
  HypothesisReport r;
  r.m = m;
  r.s = s;
  r.ell0_u = ell_profile(u).values[0];
  const std::vector<double> pv = ell_profile(v).values;
  r.satisfied = true;
  for (int i = 0; i < s; ++i) {
    r.ell_v.push_back(pv[i]);
    r.slack.push_back(r.ell0_u - m * pv[i]);
    if (r.slack.back() > kTol.hypothesis) r.satisfied = false;
  }
  while (r.max_feasible_s < n && r.ell0_u - m * pv[r.max_feasible_s] <= kTol.hypothesis) ++r.max_feasible_s;
  if (r.ell0_u <= kTol.hypothesis || s == 0) {
    r.min_feasible_m = 1;
  } else if (pv[s - 1] > kTol.rank) {
    r.min_feasible_m = std::max(1L, static_cast<long>(std::ceil((r.ell0_u - kTol.hypothesis) / pv[s - 1])));
  }
  return r;
}

HypothesisReport hypothesis_check(const UnitaryRep& u, const UnitaryRep& v, int m, int s) {
  return hypothesis_check(diagonalize_normal(u).spectrum, diagonalize_normal(v).spectrum, m, s);
}

SwapCommutator swap_commutator(std::span<const double> gamma, int j) {
  const int n = static_cast<int>(gamma.size());
  if (j < 0 || j > n - 2) throw Error(ErrorKind::Index, "block index out of range");
  const Matrix v = diagonal_matrix(std::vector<double>(gamma.begin(), gamma.end()));
  const Matrix g = embed_blocks(n, {{j, swap2()}});
  SwapCommutator out;
  out.commutator = v * g * v.adjoint() * g.adjoint();
  out.fragment = {{Matrix::Identity(n, n), 1}, {g, -1}};
  return out;
}

Fragment generate_block(const BlockTarget& target, std::span<const double> gamma, int m, int j) {
  const std::vector<BlockTarget> t{target};
  const std::vector<int> s{j};
  return generate_simultaneous(gamma, t, s, m);
}

Fragment generate_simultaneous(std::span<const double> gamma, std::span<const BlockTarget> targets,
                               std::span<const int> sources, int m) {
  const int n = static_cast<int>(gamma.size());
  if (targets.size() != sources.size()) throw Error(ErrorKind::Layout, "one source block per target block");
  if (m < 2 || m % 2 != 0) throw Error(ErrorKind::Domain, "walk multiplier must be even and positive");
  std::vector<int> ti;
  std::vector<int> sj;
  for (const BlockTarget& t : targets) ti.push_back(t.index);
  check_layout(ti, n, "target");
  check_layout(std::vector<int>(sources.begin(), sources.end()), n, "source");

  struct Lane {
    BlockTarget target;
    int source;
    SourceBlock block;
    std::vector<Mat2> ys;
  };
  std::vector<Lane> lanes;
  int steps = 0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const double a = angle_modulus(targets[k].angle);
    if (a <= kTrivialAngle) continue;
    Lane lane{targets[k], sources[k], source_block(gamma, sources[k]), {}};
    if (lane.block.alpha < 1e-12) throw Error(ErrorKind::BudgetInfeasible, "source block has no gap");
    const int need = su2_min_steps(a, lane.block.alpha, m);
    if (need < 0) {
      throw Error(ErrorKind::BudgetInfeasible, "block angle " + std::to_string(a) + " exceeds the walk budget " +
                                                   std::to_string(m) + " x " + std::to_string(lane.block.alpha));
    }
    steps = std::max(steps, need);
    lanes.push_back(std::move(lane));
  }
  if (lanes.empty()) return {};

  std::vector<std::pair<int, Mat2>> g_blocks;
  for (Lane& lane : lanes) {
    lane.ys = su2_walk_to(diag2(lane.target.angle), lane.block.alpha, steps);
    g_blocks.emplace_back(lane.source, lane.block.r);
  }
  ti.clear();
  for (const Lane& lane : lanes) {
    ti.push_back(lane.target.index);
    sj.push_back(lane.source);
  }
  const Matrix g = embed_blocks(n, g_blocks);
  const Matrix q = alignment(n, sj, ti);

  Fragment out;
  for (int t = 0; t < steps; ++t) {
    std::vector<std::pair<int, Mat2>> h_blocks;
    for (const Lane& lane : lanes) h_blocks.emplace_back(lane.source, lane.ys[t] * lane.block.frame.adjoint());
    const Matrix qh = q * embed_blocks(n, h_blocks);
    out.push_back({qh, 1});
    out.push_back({qh * g, -1});
  }
  return out;
}

Certificate generate_rank_dependent(const UnitaryRep& u, const UnitaryRep& v, int m, const GenOptions& opts) {
  if (m < 1) throw Error(ErrorKind::Domain, "m must be positive");
  const Inputs in = inputs_from(u, v, opts.seed);
  if (is_central(in.v)) throw Error(ErrorKind::Degenerate, "v is central");
  HypothesisReport hyp = hypothesis_check(in.u, in.v, m, 1);
  if (!hyp.satisfied) throw HypothesisError(std::move(hyp));
  const int n = u.n();
  Certificate c = start_certificate(in, Theorem::RankDep, m, 1.0, 8L * m * n);
  if (is_central(in.u)) return c;
  c.steps = rank_dependent_core(in, m, c.metadata);
  return c;
}

Certificate generate_rank_independent(const UnitaryRep& u, const UnitaryRep& v, int m, int s, const GenOptions& opts) {
  return rank_independent_from(inputs_from(u, v, opts.seed), m, s);
}

Certificate generate_rank_independent_diagonal(const CircleSpectrum& u, const CircleSpectrum& v, int m, int s) {
  return rank_independent_from(inputs_diagonal(u, v), m, s);
}

Certificate generate_full(const UnitaryRep& u, const UnitaryRep& v, const GenOptions& opts) {
  const Inputs in = inputs_from(u, v, opts.seed);
  const double l0 = ell_profile(in.v).values[0];
  if (l0 <= kTol.rank) throw Error(ErrorKind::Degenerate, "v is central");
  const int m = static_cast<int>(std::ceil(2.0 / l0 - 1e-12));
  const int n = u.n();
  Certificate c = start_certificate(in, Theorem::FullGen, m, 1.0, 8L * n * m);
  c.metadata["ell0_v"] = l0;
  c.metadata["corollary_budget"] = 16.0 * n / l0;
  if (is_central(in.u)) return c;
  c.steps = rank_dependent_core(in, m, c.metadata);
  return c;
}

BudgetTable theorem_budgets(const BudgetQuery& q) {
  if (q.m < 1 || q.n < 1 || q.s_index < 1 || !(q.s > 0.0 && q.s <= 1.0)) {
    throw Error(ErrorKind::Domain, "budget parameters out of range");
  }
  BudgetTable t;
  const long inv = ceil_inverse(q.s);
  t.rank_dependent = 8 * q.m * q.n;
  t.rank_independent = 24 * q.m * ceil_div(q.n, q.s_index);
  t.pipeline = 48 * q.m * inv;
  t.main_theorem = 18432 * q.m * inv;
  t.bng_ii1 = 589824 * q.m * inv;
  if (q.ell && *q.ell > 0.0) {
    const double l = *q.ell;
    t.full_generation = 8 * q.n * static_cast<long>(std::ceil(2.0 / l - 1e-12));
    t.full_generation_raw = 16.0 * static_cast<double>(q.n) / l;
    t.log_budget = q.c * std::abs(std::log(l)) / l;
  }
  return t;
}

CounterexampleReport counterexample_pair(int n, cplx lambda, cplx mu) {
  if (n < 2) throw Error(ErrorKind::Domain, "counterexample needs n >= 2");
  const double la = std::arg(lambda);
  const double ma = std::arg(mu);
  std::vector<double> ua(static_cast<std::size_t>(n), la);
  std::vector<double> va(static_cast<std::size_t>(n), ma);
  ua[0] = -(n - 1) * la;
  va[0] = -(n - 1) * ma;
  const CircleSpectrum us = CircleSpectrum::from_angles(ua);
  const CircleSpectrum vs = CircleSpectrum::from_angles(va);

  CounterexampleReport r;
  r.n = n;
  r.u = diagonal_matrix(us.angles);
  r.v = diagonal_matrix(vs.angles);
  // Lifted to SU(n), a product of k conjugates of v^{+-1} is mu^l z (1 + rank <= k) with z^n = 1,
  // so k >= rank(1 - c u) for some c = mu^{-l} z. We scan |l| <= n, and add the scalar that
  // fixes the first entry: for unbounded l it cannot be excluded, the other n-1 entries can.
  std::vector<cplx> scalars{unit((n - 1) * la)};
  for (int l = -n; l <= n; ++l) {
    for (int z = 0; z < n; ++z) scalars.push_back(unit(-l * ma + 2.0 * kPi * z / n));
  }
  r.lower_bound = n;
  const Matrix id = Matrix::Identity(n, n);
  for (cplx c : scalars) {
    const RankDistance d = rank_distance(c * r.u, id);
    if (d.rank < r.lower_bound) {
      r.lower_bound = d.rank;
      r.rank_distance = d.value();
    }
  }
  const double lu = ell_profile(us).values[0];
  const double lv = ell_profile(vs).values[0];
  r.minimal_m = std::max(1L, static_cast<long>(std::ceil((lu - kTol.hypothesis) / lv)));
  r.max_feasible_s = hypothesis_check(us, vs, static_cast<int>(r.minimal_m), 1).max_feasible_s;
  r.fallback_budget = 8 * r.minimal_m * n;
  return r;
}

}  // namespace normgen
