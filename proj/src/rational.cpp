#include "normgen/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/integer/common_factor_rt.hpp>

namespace normgen {

namespace {

constexpr double kPi = std::numbers::pi;

double chord(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (a - b))); }

// Best rational approximation with denominator <= max_den, by continued fractions.
Rational best_rational(double x, std::int64_t max_den) {
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    if (a > 9e15) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    const std::int64_t p2 = ai * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = r - a;
    if (frac < 1e-18) break;
    r = 1.0 / frac;
  }
  return q1 == 0 ? Rational(0) : Rational(p1, q1);
}

double to_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

}  // namespace

RationalSpectrum RationalSpectrum::from_atoms(std::vector<RationalAtom> atoms) {
  if (atoms.empty()) throw Error(ErrorKind::Validation, "rational spectrum needs at least one atom");
  Rational total(0);
  for (RationalAtom& a : atoms) {
    if (!std::isfinite(a.angle)) throw Error(ErrorKind::Validation, "non-finite angle");
    a.angle = canonical_angle(a.angle);
    if (a.weight <= Rational(0)) throw Error(ErrorKind::Validation, "weights must be positive");
    total += a.weight;
  }
  if (total != Rational(1)) throw Error(ErrorKind::Validation, "weights must sum to exactly 1");
  std::sort(atoms.begin(), atoms.end(), [](const RationalAtom& x, const RationalAtom& y) { return x.angle < y.angle; });
  for (std::size_t k = 0; k + 1 < atoms.size(); ++k) {
    if (atoms[k].angle == atoms[k + 1].angle) throw Error(ErrorKind::Validation, "atom angles must be distinct");
  }
  return RationalSpectrum(std::move(atoms));
}

std::int64_t RationalSpectrum::denominator() const {
  std::int64_t l = 1;
  for (const RationalAtom& a : atoms_) l = boost::integer::lcm(l, a.weight.denominator());
  return l;
}

double rational_ell(const RationalSpectrum& spec, const Rational& t) {
  if (t >= Rational(1)) return 0.0;
  if (t < Rational(0)) throw Error(ErrorKind::Domain, "t must be non-negative");
  const auto& atoms = spec.atoms();
  std::vector<double> phis;
  for (const auto& a : atoms) phis.push_back(a.angle);
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (std::size_t b = a + 1; b < atoms.size(); ++b) {
      const double mid = 0.5 * (atoms[a].angle + atoms[b].angle);
      phis.push_back(mid);
      phis.push_back(mid + kPi);
    }
  }
  double best = INFINITY;
  std::vector<std::pair<double, Rational>> d;
  for (double phi : phis) {
    d.clear();
    for (const auto& a : atoms) d.emplace_back(chord(phi, a.angle), a.weight);
    std::sort(d.begin(), d.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    // Smallest r with weight{dist > r} <= t.
    Rational above(0);
    double value = 0.0;
    for (const auto& [dist, w] : d) {
      above += w;
      if (above > t) {
        value = dist;
        break;
      }
    }
    best = std::min(best, value);
  }
  return best;
}

Approximation rational_approximate(std::span<const WeightedAtom> input, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::Domain, "eps must be positive");
  std::vector<WeightedAtom> atoms;
  double total = 0.0;
  for (WeightedAtom a : input) {
    if (!(a.weight >= 0.0) || !std::isfinite(a.angle)) throw Error(ErrorKind::Validation, "bad atom");
    total += a.weight;
    if (a.weight == 0.0) continue;
    a.angle = canonical_angle(a.angle);
    atoms.push_back(a);
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::Precondition, "weights must sum to 1");
  std::sort(atoms.begin(), atoms.end(), [](const auto& x, const auto& y) { return x.angle < y.angle; });
  std::vector<WeightedAtom> merged;
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().angle == a.angle) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }

  // Weights that are already small-denominator rationals are kept as they are.
  {
    std::vector<RationalAtom> exact;
    Rational sum(0);
    bool ok = true;
    for (const auto& a : merged) {
      const Rational r = best_rational(a.weight, 1000000);
      if (r <= Rational(0) || std::abs(to_double(r) - a.weight) > 1e-15 * std::max(1.0, a.weight) + 4e-16) {
        ok = false;
        break;
      }
      exact.push_back({a.angle, r});
      sum += r;
    }
    if (ok && sum == Rational(1)) {
      Approximation out{RationalSpectrum::from_atoms(exact), true, static_cast<int>(exact.size()), 1, 0.0, 0.0, 0.0};
      out.denominator = out.spectrum.denominator();
      return out;
    }
  }

  // Net: each atom joins the group of the first atom within chord eps/6 before it.
  struct Group {
    double angle;
    std::vector<WeightedAtom> members;
    double mass = 0.0;
  };
  std::vector<Group> groups;
  for (const auto& a : merged) {
    if (groups.empty() || chord(a.angle, groups.back().angle) >= eps / 6.0) groups.push_back({a.angle, {}, 0.0});
    groups.back().members.push_back(a);
    groups.back().mass += a.weight;
  }
  const int n_net = static_cast<int>(groups.size());
  // Rounding error below (eps / 6N)^2 in trace, i.e. below eps / 6N in 2-norm.
  const long double bound = std::pow(6.0L * n_net / static_cast<long double>(eps), 2.0L);
  if (bound > 1e15L) throw Error(ErrorKind::BlowUp, "eps too small for 64-bit denominators");
  const auto den = static_cast<std::int64_t>(std::floor(bound)) + 1;

  std::vector<RationalAtom> out_atoms;
  Rational kept_total(0);
  double dist2 = 0.0;
  std::vector<std::pair<double, double>> moved;  // (angle, mass) sent to angle 0
  for (const Group& g : groups) {
    auto num = static_cast<std::int64_t>(std::floor(static_cast<long double>(g.mass) * den));
    if (static_cast<long double>(num) / den > g.mass) --num;
    const Rational r(num, den);
    double keep = to_double(r);
    for (const auto& a : g.members) {
      const double k = std::min(keep, a.weight);
      keep -= k;
      dist2 += k * std::pow(chord(a.angle, g.angle), 2);
      dist2 += (a.weight - k) * std::pow(chord(a.angle, 0.0), 2);
    }
    if (num > 0) {
      out_atoms.push_back({g.angle, r});
      kept_total += r;
    }
  }
  const Rational q0 = Rational(1) - kept_total;
  if (q0 > Rational(0)) {
    auto zero = std::find_if(out_atoms.begin(), out_atoms.end(), [](const RationalAtom& a) { return a.angle == 0.0; });
    if (zero != out_atoms.end()) {
      zero->weight += q0;
    } else {
      out_atoms.push_back({0.0, q0});
    }
  }
  Approximation out{RationalSpectrum::from_atoms(std::move(out_atoms)), false, n_net, den, to_double(q0), 0.0, 0.0};
  out.certified_bound = std::sqrt(std::pow(eps / 6.0, 2) + 4.0 * out.remainder);
  out.realized_distance = std::sqrt(std::max(0.0, dist2));
  return out;
}

Approximation rational_approximate(const CircleSpectrum& input, double eps) {
  std::vector<WeightedAtom> atoms;
  for (double a : input.angles) atoms.push_back({a, 1.0 / input.size()});
  return rational_approximate(atoms, eps);
}

Embedding lcm_embed(const RationalSpectrum& a, const RationalSpectrum& b, std::int64_t s0_max) {
  const std::int64_t s0 = boost::integer::lcm(a.denominator(), b.denominator());
  if (s0 > s0_max) {
    throw Error(ErrorKind::BlowUp, "lcm of denominators is " + std::to_string(s0) + " > " + std::to_string(s0_max) +
                                       "; use a coarser approximation");
  }
  auto expand = [s0](const RationalSpectrum& r) {
    std::vector<double> angles;
    for (const auto& atom : r.atoms()) {
      const Rational copies = atom.weight * s0;
      angles.insert(angles.end(), static_cast<std::size_t>(copies.numerator()), atom.angle);
    }
    return CircleSpectrum{std::move(angles)};
  };
  return {s0, expand(a), expand(b)};
}

Certificate pipeline_generate(const RationalSpectrum& u, const RationalSpectrum& v, int m, const Rational& s) {
  if (m < 1) throw Error(ErrorKind::Domain, "m must be positive");
  if (s <= Rational(0) || s > Rational(1)) throw Error(ErrorKind::Domain, "s must lie in (0, 1]");
  const Embedding e = lcm_embed(u, v);
  const std::int64_t s0 = e.s0;
  const long inv = static_cast<long>((Rational(1) / s).numerator() / (Rational(1) / s).denominator() +
                                     ((Rational(1) / s).denominator() == 1 ? 0 : 1));
  const long budget = 48L * m * inv;

  // Indices i with i/s0 < s cover every t in [0, s).
  const Rational ss = s * s0;
  const auto window = static_cast<int>(ss.numerator() / ss.denominator() + (ss.denominator() == 1 ? 0 : 1));
  HypothesisReport hyp = hypothesis_check(e.a, e.b, m, std::min<int>(window, static_cast<int>(s0)));
  if (!hyp.satisfied) throw HypothesisError(std::move(hyp));

  Certificate c;
  if (hyp.ell0_u <= kTol.rank || s0 < 2) {
    c.target = diagonal_matrix(e.a.angles);
    c.base = diagonal_matrix(e.b.angles);
    c.params = {m, to_double(s), static_cast<int>(s0)};
  } else {
    const int disc = std::max(1, std::min(window, static_cast<int>((s0 - 1) / 2 + 1)));
    c = generate_rank_independent_diagonal(e.a, e.b, m, disc);
    c.metadata["discrete_window"] = disc;
  }
  c.theorem = Theorem::Pipeline;
  c.claimed_budget = budget;
  c.params.m = m;
  c.params.s = to_double(s);
  c.s0 = s0;
  c.metadata["s"] = {{"num", s.numerator()}, {"den", s.denominator()}};
  c.metadata["hypothesis_indices"] = hyp.s;
  c.metadata["matching_conjugator"] = "identity";
  return c;
}

std::optional<double> stability_threshold(const UnitaryRep& u) {
  const SProfile p = ell_profile(u);
  const int n = static_cast<int>(p.values.size());
  std::optional<double> kappa;
  for (int i = 0; i < n; ++i) {
    const double lhs = p.values[std::min(2 * i, n - 1)];
    if (lhs <= kTol.easy_direction) continue;
    const double k = (2.0 * p.values[i] - lhs) / 2.0;
    kappa = kappa ? std::min(*kappa, k) : k;
  }
  if (!kappa) return std::nullopt;
  return *kappa / std::sqrt(static_cast<double>(n));
}

StabilityReport approx_stability_check(const UnitaryRep& u, const UnitaryRep& uprime, double eps) {
  if (u.n() != uprime.n()) throw Error(ErrorKind::Dimension, "u and u' must have the same size");
  const int n = u.n();
  StabilityReport r;
  r.distance = norm2(u.matrix() - uprime.matrix());
  r.claimed_eps = eps;
  r.distance_below_eps = r.distance < eps;
  r.threshold = stability_threshold(u);
  const SProfile p = ell_profile(u);
  const SProfile q = ell_profile(uprime);
  r.holds = true;
  for (int i = 0; i < n; ++i) {
    StabilityRow row{i, p.values[std::min(2 * i, n - 1)], 2.0 * q.values[i], false};
    row.holds = row.lhs <= row.rhs + kTol.easy_direction;
    if (!row.holds) {
      r.violations.push_back(i);
      r.holds = false;
    }
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace normgen
