#pragma once

// Reference computations for the tests. None of these call into the library's
// s-number or ordering code; they use brute force or closed forms instead.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;

inline double chord(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (a - b))); }

/// Cyclic Jacobi for a real symmetric matrix. Returns eigenvalues (descending) and
/// the matching eigenvectors as columns.
inline std::pair<std::vector<double>, RMat> jacobi_eigen(RMat a) {
  const Eigen::Index n = a.rows();
  RMat v = RMat::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = 0.5 * (a(q, q) - a(p, p)) / a(p, q);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int x, int y) { return a(x, x) > a(y, y); });
  std::vector<double> vals;
  RMat vecs(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    vals.push_back(a(idx[k], idx[k]));
    vecs.col(k) = v.col(idx[k]);
  }
  return {vals, vecs};
}

/// Real form [[A, -B], [B, A]] of a Hermitian A + iB; each eigenvalue appears twice.
inline RMat realify(const CMat& h) {
  const Eigen::Index n = h.rows();
  RMat r(2 * n, 2 * n);
  r << h.real(), -h.imag(), h.imag(), h.real();
  return r;
}

/// Eigenvalues of a Hermitian matrix, descending, by Jacobi on the real form.
inline std::vector<double> hermitian_eigenvalues(const CMat& h) {
  const auto [vals, vecs] = jacobi_eigen(realify(h));
  std::vector<double> out;
  for (std::size_t k = 0; k < vals.size(); k += 2) out.push_back(vals[k]);
  return out;
}

/// Singular values from the eigenvalues of x* x.
inline std::vector<double> singular_values(const CMat& x) {
  std::vector<double> ev = hermitian_eigenvalues(x.adjoint() * x);
  for (double& e : ev) e = std::sqrt(std::max(0.0, e));
  return ev;
}

inline double op_norm(const CMat& x) { return singular_values(x).front(); }

/// Orthonormal basis for the span of the top-2k real eigenvectors of the real form,
/// read back as complex vectors: the top-k eigenspace of x* x.
inline CMat top_singular_subspace(const CMat& x, int k) {
  const Eigen::Index n = x.rows();
  const auto [vals, vecs] = jacobi_eigen(realify(x.adjoint() * x));
  CMat basis(n, 0);
  for (Eigen::Index c = 0; c < 2 * k && basis.cols() < k; ++c) {
    Eigen::VectorXcd w(n);
    for (Eigen::Index r = 0; r < n; ++r) w(r) = cplx(vecs(r, c), vecs(r + n, c));
    for (Eigen::Index b = 0; b < basis.cols(); ++b) w -= basis.col(b).dot(w) * basis.col(b);
    const double nw = w.norm();
    if (nw < 1e-8) continue;
    basis.conservativeResize(n, basis.cols() + 1);
    basis.col(basis.cols() - 1) = w / nw;
  }
  return basis;
}

/// mu_i as the infimum of |x (1 - p)| over projections p of rank i, attained at the
/// top-i singular subspace.
inline double mu_by_projection(const CMat& x, int i) {
  const Eigen::Index n = x.rows();
  const CMat q = top_singular_subspace(x, i);
  const CMat p = q * q.adjoint();
  return op_norm(x * (CMat::Identity(n, n) - p));
}

/// |x (1 - p)| for a Haar-random rank-i projection p; never below mu_i.
inline double random_projection_value(const CMat& x, int i, std::mt19937_64& rng) {
  const Eigen::Index n = x.rows();
  std::normal_distribution<double> g;
  CMat z(n, std::max(i, 1));
  for (Eigen::Index r = 0; r < z.rows(); ++r)
    for (Eigen::Index c = 0; c < z.cols(); ++c) z(r, c) = cplx(g(rng), g(rng));
  CMat p = CMat::Zero(n, n);
  if (i > 0) {
    Eigen::HouseholderQR<CMat> qr(z);
    const CMat q = qr.householderQ() * CMat::Identity(n, i);
    p = q * q.adjoint();
  }
  return op_norm(x * (CMat::Identity(n, n) - p));
}

/// ell_i by arcs: the smallest r with n-i spectral points inside a chord ball of radius
/// r, i.e. 2 sin(A/4) for the shortest arc A holding n-i circularly consecutive points.
inline double ell_by_arcs(std::vector<double> angles, int i) {
  const int n = static_cast<int>(angles.size());
  const int need = n - i;
  if (need <= 1) return 0.0;
  for (double& a : angles) a = std::remainder(a, 2.0 * kPi);
  std::sort(angles.begin(), angles.end());
  double best = 2.0 * kPi;
  for (int start = 0; start < n; ++start) {
    const int end = start + need - 1;
    const double span = end < n ? angles[end] - angles[start] : angles[end - n] + 2.0 * kPi - angles[start];
    best = std::min(best, span);
  }
  return 2.0 * std::sin(best / 4.0);
}

/// min over lambda of the mean chord distance, by a dense grid plus golden refinement.
inline double one_norm_by_grid(const std::vector<double>& angles) {
  auto f = [&](double phi) {
    double s = 0.0;
    for (double a : angles) s += chord(phi, a);
    return s / static_cast<double>(angles.size());
  };
  const int grid = 20000;
  int best = 0;
  for (int k = 1; k < grid; ++k)
    if (f(2 * kPi * k / grid) < f(2 * kPi * best / grid)) best = k;
  double lo = 2 * kPi * (best - 1) / grid, hi = 2 * kPi * (best + 1) / grid;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (f(a) < f(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  double v = f(0.5 * (lo + hi));
  // The mean chord is concave between spectral points; also test them directly.
  for (double a : angles) v = std::min(v, f(a));
  return v;
}

inline bool lex_greater(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k] + tol) return true;
    if (a[k] < b[k] - tol) return false;
  }
  return false;
}

inline std::vector<double> gaps_of(const std::vector<double>& angles) {
  std::vector<double> gaps;
  for (std::size_t k = 0; k + 1 < angles.size(); ++k) gaps.push_back(chord(angles[k], angles[k + 1]));
  return gaps;
}

/// Exhaustive search for an ordering with the lexicographically largest adjacent-gap sequence.
inline std::vector<double> optimal_order(std::vector<double> angles) {
  std::sort(angles.begin(), angles.end());
  std::vector<double> best_order = angles;
  std::vector<double> best = gaps_of(angles);
  while (std::next_permutation(angles.begin(), angles.end())) {
    const std::vector<double> gaps = gaps_of(angles);
    if (lex_greater(gaps, best, 1e-13)) {
      best = gaps;
      best_order = angles;
    }
  }
  return best_order;
}

inline std::vector<double> optimal_gaps(std::vector<double> angles) { return gaps_of(optimal_order(std::move(angles))); }

/// Smallest achievable max |prefix sum| over all orderings.
inline double best_prefix_max(std::vector<double> a) {
  std::sort(a.begin(), a.end());
  double best = INFINITY;
  do {
    double s = 0.0, m = 0.0;
    for (double x : a) {
      s += x;
      m = std::max(m, std::abs(s));
    }
    best = std::min(best, m);
  } while (std::next_permutation(a.begin(), a.end()));
  return best;
}

}  // namespace oracle
