#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "normgen/config.hpp"
#include "normgen/error.hpp"

namespace normgen {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Maps an angle to (-pi, pi]; -pi goes to +pi.
double canonical_angle(double x);

/// min_k |x + 2 pi k|.
double angle_modulus(double x);

cplx unit(double angle);

/// Angles of the eigenvalues of a unitary, each in (-pi, pi]. Multiplicity by repetition.
struct CircleSpectrum {
  std::vector<double> angles;

  static CircleSpectrum from_angles(std::vector<double> angles);

  int size() const { return static_cast<int>(angles.size()); }
  std::vector<cplx> eigenvalues() const;
};

class UnitaryRep {
 public:
  /// Throws Validation unless |U U* - I|_max <= tol.
  static UnitaryRep from_matrix(Matrix m, double tol = kTol.unitarity);
  static UnitaryRep identity(int n);
  static UnitaryRep diagonal(const CircleSpectrum& spec);

  int n() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  UnitaryRep adjoint() const;

 private:
  explicit UnitaryRep(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Largest entry modulus of U U* - I.
double unitarity_defect(const Matrix& m);

/// Trace-normalized norms: |I|_1 = |I|_2 = 1.
double norm1(const Matrix& x);
double norm2(const Matrix& x);

/// min over unit scalars l of |a - l b|_2, with the minimizing scalar.
struct ProjectiveDistance {
  double distance;
  cplx phase;
};
ProjectiveDistance projective_distance(const Matrix& a, const Matrix& b);

struct SProfile {
  enum class Kind { Mu, Ell };
  Kind kind = Kind::Ell;
  std::vector<double> values;
  std::vector<cplx> phases;  // minimizing scalars, Ell only
};

struct EllValue {
  double value;
  cplx phase;  // lambda with mu_i(1 - lambda u) = value
};

struct RankDistance {
  int rank = 0;
  int n = 1;
  double value() const { return static_cast<double>(rank) / n; }
};

/// Singular values, descending. Backed by Eigen's SVD.
std::vector<double> singular_values(const Matrix& x);

/// (i+1)-th largest singular value.
double mu(const Matrix& x, int i);

SProfile mu_profile(const Matrix& x);

// Projective s-numbers. Minimization over the circle is exact: the minimum of an
// order statistic of chord distances sits at a spectral point or on the bisector
// of two spectral points, so those candidates are enumerated.
EllValue ell(const CircleSpectrum& u, int i);
EllValue ell(const UnitaryRep& u, int i);
SProfile ell_profile(const CircleSpectrum& u);
SProfile ell_profile(const UnitaryRep& u);

/// Same quantity via a kGridN grid plus golden-section refinement. Kept as a
/// second route for cross-checks.
EllValue ell_by_grid(const CircleSpectrum& u, int i);

/// min over lambda of (1/n) sum of singular values of 1 - lambda u.
double ell_one_norm(const CircleSpectrum& u);
double ell_one_norm(const UnitaryRep& u);

/// Mean of the ell profile.
double big_L(const CircleSpectrum& u);
double big_L(const UnitaryRep& u);

/// First index from which the ell profile vanishes.
int projective_rank(const CircleSpectrum& u);
int projective_rank(const UnitaryRep& u);

RankDistance rank_distance(const Matrix& x, const Matrix& y);

struct Diagonalization {
  CircleSpectrum spectrum;
  Matrix W;  // W diag(e^{i angles}) W* = u
  double residual = 0.0;
};

/// Eigendecomposition of a unitary through a random Hermitian combination
/// cos t (u+u*)/2 + sin t (u-u*)/(2i). Retries with fresh t on a bad residual.
Diagonalization diagonalize_normal(const UnitaryRep& u, std::uint64_t seed = kDefaultSeed);

Matrix diagonal_matrix(const std::vector<double>& angles);

}  // namespace normgen
