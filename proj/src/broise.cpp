#include "normgen/broise.hpp"

#include <cmath>
#include <string>

namespace normgen {

namespace {

// Eigenvectors of a symmetry, +1 eigenspace first, each column's largest entry real positive.
Matrix symmetry_frame(const Matrix& s) {
  const Eigen::Index n = s.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.adjoint()));
  if (es.info() != Eigen::Success) throw Error(ErrorKind::NumericalDegeneracy, "symmetry eigensolve failed");
  Matrix f(n, n);
  // Eigen sorts eigenvalues ascending: the -1 block comes first.
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXcd col = es.eigenvectors().col(n - 1 - k);
    Eigen::Index big = 0;
    col.cwiseAbs().maxCoeff(&big);
    col *= std::conj(col(big)) / std::abs(col(big));
    f.col(k) = col;
  }
  return f;
}

int positive_count(const Matrix& s) {
  const double tr = s.trace().real();
  return static_cast<int>(std::lround((static_cast<double>(s.rows()) + tr) / 2.0));
}

}  // namespace

Symmetry Symmetry::from_matrix(Matrix m, bool trace_zero) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw Error(ErrorKind::Dimension, "symmetry must be square");
  const Eigen::Index n = m.rows();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw Error(ErrorKind::Validation, "symmetry is not self-adjoint");
  if ((m * m - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorKind::Validation, "symmetry does not square to the identity");
  }
  if (trace_zero && std::abs(m.trace()) > 1e-9) throw Error(ErrorKind::Validation, "symmetry trace is not zero");
  return Symmetry(std::move(m), trace_zero);
}

Symmetry Symmetry::reference(int k) {
  Matrix m = Matrix::Identity(2 * k, 2 * k);
  m.bottomRightCorner(k, k) *= -1.0;
  return Symmetry(std::move(m), true);
}

UnitaryRep sqrt_unitary(const UnitaryRep& w) {
  const Diagonalization d = diagonalize_normal(w);
  std::vector<double> half = d.spectrum.angles;
  for (double& a : half) a *= 0.5;
  const Matrix u = d.W * diagonal_matrix(half) * d.W.adjoint();
  const double err = (u * u - w.matrix()).cwiseAbs().maxCoeff();
  if (err > 1e-9) throw Error(ErrorKind::NumericalDegeneracy, "square root residual " + std::to_string(err));
  return UnitaryRep::from_matrix(u);
}

std::array<Symmetry, 4> block_symmetry_factors(const UnitaryRep& w) {
  const int k = w.n();
  const Matrix u = sqrt_unitary(w).matrix();
  Matrix s = Matrix::Zero(2 * k, 2 * k);
  s.topRightCorner(k, k) = u;
  s.bottomLeftCorner(k, k) = u.adjoint();
  Matrix t = Matrix::Zero(2 * k, 2 * k);
  t.topRightCorner(k, k) = Matrix::Identity(k, k);
  t.bottomLeftCorner(k, k) = Matrix::Identity(k, k);
  const Symmetry ss = Symmetry::from_matrix(s);
  const Symmetry tt = Symmetry::from_matrix(t);
  return {ss, tt, ss, tt};
}

Matrix symmetry_conjugator(const Symmetry& s1, const Symmetry& s2) {
  if (s1.n() != s2.n()) throw Error(ErrorKind::ConjugacyClass, "symmetries of different size");
  if (s1.n() % 2 != 0) throw Error(ErrorKind::ConjugacyClass, "odd dimension");
  const int half = s1.n() / 2;
  if (positive_count(s1.matrix()) != half || positive_count(s2.matrix()) != half) {
    throw Error(ErrorKind::ConjugacyClass, "eigenvalue multiplicities differ from (n/2, n/2)");
  }
  const Matrix g = symmetry_frame(s2.matrix()) * symmetry_frame(s1.matrix()).adjoint();
  const double err = (g * s1.matrix() * g.adjoint() - s2.matrix()).cwiseAbs().maxCoeff();
  if (err > 1e-9) throw Error(ErrorKind::NumericalDegeneracy, "conjugator residual " + std::to_string(err));
  return g;
}

Certificate broise_kernel_certificate(const UnitaryRep& w, const Symmetry& reference) {
  const int k = w.n();
  if (reference.n() != 2 * k) throw Error(ErrorKind::Dimension, "reference must have size 2k");
  Certificate c;
  c.target = Matrix::Zero(2 * k, 2 * k);
  c.target.topLeftCorner(k, k) = w.matrix();
  c.target.bottomRightCorner(k, k) = w.matrix().adjoint();
  c.base = reference.matrix();
  c.theorem = Theorem::BroiseKernel;
  c.claimed_budget = 4;
  c.params = {1, 1.0, 2 * k};
  c.metadata["tolerances"] = {{"self_adjoint", 1e-10}, {"involution", 1e-10}, {"trace", 1e-9}};
  if (projective_distance(c.target, Matrix::Identity(2 * k, 2 * k)).distance <= kTol.eq(0)) return c;
  for (const Symmetry& f : block_symmetry_factors(w)) c.steps.push_back({symmetry_conjugator(reference, f), 1});
  return c;
}

}  // namespace normgen
