#include "normgen/su2_walk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace normgen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kReachTol = 1e-9;

struct Interval {
  double lo;
  double hi;
};

// Class angles reachable by multiplying a class-g element with a class-alpha element.
Interval one_step(double g, double alpha) {
  return {std::abs(g - alpha), std::min(g + alpha, 2.0 * kPi - g - alpha)};
}

Interval grow(const Interval& r, double alpha) {
  auto top = [&](double g) { return std::min(g + alpha, 2.0 * kPi - g - alpha); };
  Interval out;
  if (r.lo <= alpha && alpha <= r.hi) {
    out.lo = 0.0;
  } else {
    out.lo = std::min(std::abs(r.lo - alpha), std::abs(r.hi - alpha));
  }
  if (r.lo <= kPi - alpha && kPi - alpha <= r.hi) {
    out.hi = kPi;
  } else {
    out.hi = std::max(top(r.lo), top(r.hi));
  }
  return out;
}

bool contains(const Interval& r, double a) { return a >= r.lo - kReachTol && a <= r.hi + kReachTol; }

}  // namespace

Mat2 diag2(double theta) {
  Mat2 d = Mat2::Zero();
  d(0, 0) = unit(theta);
  d(1, 1) = unit(-theta);
  return d;
}

Mat2 swap2() {
  Mat2 s = Mat2::Zero();
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  return s;
}

Mat2 su2_step_matrix(double theta, double theta1) {
  const double s = std::sin(theta);
  const double s1 = std::sin(theta1);
  double b2 = s * s - s1 * s1;
  if (b2 < -1e-12) throw Error(ErrorKind::Domain, "su2_step_matrix needs sin^2 theta1 <= sin^2 theta");
  const double b = std::sqrt(std::max(b2, 0.0));
  const double c = std::cos(theta);
  Mat2 v;
  v << cplx(c, s1), cplx(b, 0.0), cplx(-b, 0.0), cplx(c, -s1);
  return v;
}

Mat2 conjugator_to_reference(const Mat2& vprime, double theta) {
  const cplx tr = vprime.trace();
  if (std::abs(tr - 2.0 * std::cos(theta)) > 1e-9) {
    throw Error(ErrorKind::Conjugacy, "trace does not match 2 cos theta");
  }
  const Mat2 m = vprime - unit(theta) * Mat2::Identity();
  Eigen::Vector2cd x(m(0, 1), -m(0, 0));
  const Eigen::Vector2cd y(m(1, 1), -m(1, 0));
  if (y.norm() > x.norm()) x = y;
  if (x.norm() < 1e-14) return Mat2::Identity();  // vprime is scalar
  x.normalize();
  const int big = std::abs(x(0)) >= std::abs(x(1)) ? 0 : 1;
  x *= std::conj(x(big)) / std::abs(x(big));
  Mat2 g;
  g << x(0), -std::conj(x(1)), x(1), std::conj(x(0));
  return g;
}

double class_angle(const Mat2& x) {
  const double c = std::clamp(0.5 * x.trace().real(), -1.0, 1.0);
  return std::acos(c);
}

int su2_min_steps(double a, double alpha, int max_steps) {
  Interval r{alpha, alpha};
  for (int k = 1; k <= max_steps; ++k) {
    if (contains(r, a)) return k;
    r = grow(r, alpha);
  }
  return -1;
}

std::vector<Mat2> su2_walk_to(const Mat2& target, double alpha, int steps) {
  if (steps < 1) throw Error(ErrorKind::Domain, "walk needs at least one step");
  if (!(alpha > 0.0 && alpha < kPi)) throw Error(ErrorKind::DegenerateStep, "reference class angle must lie in (0, pi)");
  const double a = class_angle(target);

  std::vector<Interval> reach{{alpha, alpha}};
  for (int k = 1; k < steps; ++k) reach.push_back(grow(reach.back(), alpha));
  if (!contains(reach.back(), a)) {
    throw Error(ErrorKind::BudgetInfeasible, "class angle " + std::to_string(a) + " not reachable in " +
                                                  std::to_string(steps) + " steps of " + std::to_string(alpha));
  }

  // Backward plan of class angles, each reachable from its predecessor.
  std::vector<double> plan(static_cast<std::size_t>(steps));
  plan.back() = std::clamp(a, reach.back().lo, reach.back().hi);
  for (int k = steps - 2; k >= 0; --k) {
    const Interval j = one_step(plan[k + 1], alpha);
    const double lo = std::max(j.lo, reach[k].lo);
    const double hi = std::min(j.hi, reach[k].hi);
    plan[k] = 0.5 * (lo + hi);
  }

  std::vector<Mat2> ys{Mat2::Identity()};
  Mat2 prod = diag2(alpha);
  double gamma = alpha;
  Mat2 frame = Mat2::Identity();
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  for (int k = 1; k < steps; ++k) {
    const double sg = std::sin(gamma);
    double s1 = sa;
    if (sg > 1e-12) s1 = std::clamp((std::cos(gamma) * ca - std::cos(plan[k])) / sg, -sa, sa);
    const Mat2 vp = su2_step_matrix(alpha, std::asin(s1));
    ys.push_back(frame * conjugator_to_reference(vp, alpha));
    prod = prod * (frame * vp * frame.adjoint());
    gamma = class_angle(prod);
    frame = conjugator_to_reference(prod, gamma);
  }

  const Mat2 align = conjugator_to_reference(target, a) * frame.adjoint();
  for (Mat2& y : ys) y = align * y;

  Mat2 check = Mat2::Identity();
  const Mat2 d = diag2(alpha);
  for (const Mat2& y : ys) check = check * (y * d * y.adjoint());
  const double residual = (check - target).cwiseAbs().maxCoeff();
  if (residual > 1e-9) {
    throw Error(ErrorKind::NumericalDegeneracy, "walk residual " + std::to_string(residual));
  }
  return ys;
}

std::vector<Su2Step> su2_walk(double phi, double theta, int m) {
  if (m < 2 || m % 2 != 0) throw Error(ErrorKind::Domain, "m must be even and positive");
  const double p = canonical_angle(phi);
  const double t = canonical_angle(theta);
  const double a = std::abs(p);
  const double alpha = std::abs(t);
  if (a < 1e-15) return {{Mat2::Identity(), 1}, {Mat2::Identity(), -1}};
  if (alpha < 1e-15) throw Error(ErrorKind::DegenerateStep, "theta = 0 cannot reach a nonzero angle");
  if (a > m * alpha * (1.0 + 1e-9)) {
    throw Error(ErrorKind::BudgetInfeasible, "|phi| > m |theta|");
  }
  const int steps = su2_min_steps(a, alpha, m);
  if (steps < 0) {
    throw Error(ErrorKind::BudgetInfeasible, "target not reachable within m steps (|theta| > pi/2 shrinks the reachable set)");
  }
  const std::vector<Mat2> ys = su2_walk_to(diag2(p), alpha, steps);

  // v^e = diag(e^{i alpha}) when e t > 0; otherwise absorb a swap into the conjugator.
  const int e = p * t < 0.0 ? -1 : 1;
  const bool swap = e * t < 0.0;
  std::vector<Su2Step> out;
  for (const Mat2& y : ys) out.push_back({swap ? Mat2(y * swap2()) : y, e});
  return out;
}

}  // namespace normgen
