#pragma once

#include <vector>

#include <Eigen/Dense>

#include "normgen/spectral.hpp"

namespace normgen {

using Mat2 = Eigen::Matrix2cd;

struct Su2Step {
  Mat2 conjugator;
  int exponent = 1;
};

/// diag(e^{i theta}, e^{-i theta}).
Mat2 diag2(double theta);

/// The swap [[0,1],[1,0]].
Mat2 swap2();

/// [[cos t + i sin t1, b], [-b, cos t - i sin t1]] with b = sqrt(sin^2 t - sin^2 t1) >= 0.
Mat2 su2_step_matrix(double theta, double theta1);

/// g with g diag(e^{i theta}, e^{-i theta}) g* = vprime, from the closed-form 2x2 eigenvectors.
Mat2 conjugator_to_reference(const Mat2& vprime, double theta);

/// Class angle in [0, pi] of a 2x2 special unitary, from its trace.
double class_angle(const Mat2& x);

/// Fewest steps L such that some product of L conjugates of diag(e^{i alpha}, e^{-i alpha})
/// has class angle a. alpha in (0, pi). Returns -1 if more than max_steps are needed.
int su2_min_steps(double a, double alpha, int max_steps);

/// Conjugators y_1..y_L with prod_k y_k D y_k* = target, D = diag(e^{i alpha}, e^{-i alpha}).
/// target must be special unitary; L must be at least su2_min_steps.
std::vector<Mat2> su2_walk_to(const Mat2& target, double alpha, int steps);

/// Writes diag(e^{i phi}, e^{-i phi}) as at most m conjugates of v^{+-1}, v = diag(e^{i theta}, e^{-i theta}).
std::vector<Su2Step> su2_walk(double phi, double theta, int m);

}  // namespace normgen
