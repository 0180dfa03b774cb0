#pragma once

#include <span>
#include <vector>

#include "normgen/spectral.hpp"

namespace normgen {

/// A diagonal ordering whose adjacent chord-gap sequence is lexicographically maximal.
struct OptimalOrdering {
  CircleSpectrum angles;   // reordered spectrum
  std::vector<int> order;  // angles.angles[k] = input[order[k]]
  std::vector<int> sigma;  // indices 0..n-2 sorting diffs descending (stable)
  std::vector<double> diffs;
  bool heuristic = false;  // true above the exhaustive cutoff or if tie tracking was truncated
};

struct AngleSumOrdering {
  std::vector<double> angles;
  std::vector<int> sigma;  // angles[k] = input[sigma[k]]
  double prefix_max = 0.0;
};

/// Unwrapped real angles with zero sum, plus the phase psi with e^{i psi} u = diag(e^{i angles}).
struct CenteredSpectrum {
  std::vector<double> angles;
  double phase = 0.0;
};

using DiagonalFactor = std::vector<cplx>;

OptimalOrdering optimalize(const CircleSpectrum& spec);

AngleSumOrdering angle_sum_optimalize(std::span<const double> alphas);

std::vector<DiagonalFactor> torus_decompose(const CircleSpectrum& spec);

/// Factor i carries (e^{i Phi_i}, e^{-i Phi_i}) at positions (i, i+1), Phi_i = a_0 + ... + a_i.
std::vector<DiagonalFactor> product_decompose(std::span<const double> angles);

/// Cuts the circle at the widest gap, unwraps, and subtracts the mean. Entry order is kept.
CenteredSpectrum center_phase(const CircleSpectrum& spec);

struct CageRow {
  int index = 0;
  bool has_lower = false;
  double lower = 0.0;  // diffs[sigma(2i)] / 2
  double ell = 0.0;
  double mid = 0.0;    // mu_i(1 - lambda u), lambda = conj of the last optimal eigenvalue
  double upper = 0.0;  // diffs[sigma(i)]
  bool pass = false;
};

struct CageReport {
  std::vector<CageRow> rows;
  bool pass = true;
};

CageReport singular_cage_check(const OptimalOrdering& opt, double tol = kTol.ell);

struct LemOptReport {
  std::vector<double> centered;
  double lhs = 0.0;  // 2 |t_0 - t_1|
  double rhs = 0.0;  // max |t_i|
  bool holds = false;
};

LemOptReport lem_opt_check(const OptimalOrdering& opt);

}  // namespace normgen
