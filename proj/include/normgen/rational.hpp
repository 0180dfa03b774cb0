#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "normgen/generation.hpp"
#include "normgen/spectral.hpp"

namespace normgen {

using Rational = boost::rational<std::int64_t>;

struct RationalAtom {
  double angle = 0.0;
  Rational weight;
};

/// Finite spectrum with exact rational weights summing to 1; angles pairwise distinct.
class RationalSpectrum {
 public:
  static RationalSpectrum from_atoms(std::vector<RationalAtom> atoms);

  const std::vector<RationalAtom>& atoms() const { return atoms_; }
  /// lcm of the weight denominators.
  std::int64_t denominator() const;

 private:
  explicit RationalSpectrum(std::vector<RationalAtom> a) : atoms_(std::move(a)) {}
  std::vector<RationalAtom> atoms_;
};

/// Continuous step profile: ell_t = min over the circle of the weighted t-quantile of distances.
double rational_ell(const RationalSpectrum& spec, const Rational& t);

struct WeightedAtom {
  double angle = 0.0;
  double weight = 0.0;
};

struct Approximation {
  RationalSpectrum spectrum;
  bool unchanged = false;        // input weights were already rational
  int net_size = 0;
  std::int64_t denominator = 1;  // common denominator used for rounding
  double remainder = 0.0;        // trace of the mass moved to angle 0
  double certified_bound = 0.0;  // upper bound on the 2-norm distance, below eps
  double realized_distance = 0.0;
};

/// Rational-weight approximation within 2-norm distance eps: a net at resolution eps/6,
/// weights rounded down to a common denominator, the leftover mass placed at angle 0.
Approximation rational_approximate(std::span<const WeightedAtom> input, double eps);
Approximation rational_approximate(const CircleSpectrum& input, double eps);

struct Embedding {
  std::int64_t s0 = 1;
  CircleSpectrum a;
  CircleSpectrum b;
  UnitaryRep a_matrix() const { return UnitaryRep::diagonal(a); }
  UnitaryRep b_matrix() const { return UnitaryRep::diagonal(b); }
};

/// Both spectra as diagonal matrices in M_{s0}, s0 the lcm of all weight denominators.
Embedding lcm_embed(const RationalSpectrum& a, const RationalSpectrum& b, std::int64_t s0_max = kS0Max);

/// u as at most 48 m ceil(1/s) conjugates of v^{+-1}, assuming ell_0(u) <= m ell_t(v) for t in [0, s).
Certificate pipeline_generate(const RationalSpectrum& u, const RationalSpectrum& v, int m, const Rational& s);

struct StabilityRow {
  int index = 0;
  double lhs = 0.0;  // ell_{min(2i, n-1)}(u)
  double rhs = 0.0;  // 2 ell_i(u')
  bool holds = false;
};

struct StabilityReport {
  double distance = 0.0;
  double claimed_eps = 0.0;
  bool distance_below_eps = false;
  std::optional<double> threshold;  // any u' this close satisfies every row; empty = no limit
  std::vector<StabilityRow> rows;
  std::vector<int> violations;
  bool holds = false;
};

/// Sufficient distance for the doubling inequality: (min over active i of ell_i - ell_{2i}/2) / sqrt(n).
std::optional<double> stability_threshold(const UnitaryRep& u);

StabilityReport approx_stability_check(const UnitaryRep& u, const UnitaryRep& uprime, double eps);

}  // namespace normgen
