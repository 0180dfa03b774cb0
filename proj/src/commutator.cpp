#include "normgen/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "normgen/corpus.hpp"

namespace normgen {

CommutatorPartner cyclic_commutator_partner(const CircleSpectrum& u) {
  const int n = u.size();
  if (n < 2) throw Error(ErrorKind::Domain, "cyclic commutator needs n >= 2");
  CommutatorPartner out;
  out.opt = optimalize(u);
  Matrix shift = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) shift((i + 1) % n, i) = 1.0;
  out.v = Matrix::Zero(3 * n, 3 * n);
  out.v.block(0, 0, n, n) = shift;
  out.v.block(n, n, n, n) = shift.transpose();
  out.v.block(2 * n, 2 * n, n, n) = Matrix::Identity(n, n);
  out.lambda = std::conj(unit(out.opt.angles.angles.back()));

  const Matrix d = diagonal_matrix(out.opt.angles.angles);
  Matrix x = Matrix::Zero(3 * n, 3 * n);
  for (int b = 0; b < 3; ++b) x.block(b * n, b * n, n, n) = d;
  out.commutator = x * out.v * x.adjoint() * out.v.adjoint();
  return out;
}

AuxReport aux_inequality_check(const CircleSpectrum& u, double tol) {
  const CommutatorPartner p = cyclic_commutator_partner(u);
  const int n = u.size();
  const SProfile pc = ell_profile(UnitaryRep::from_matrix(p.commutator));
  const Matrix d = diagonal_matrix(p.opt.angles.angles);
  const std::vector<double> lhs = singular_values(Matrix::Identity(n, n) - p.lambda * d);
  AuxReport rep;
  for (int i = 0; i + 1 < n; ++i) {
    AuxRow row;
    row.index = i;
    row.lhs = lhs[i];
    row.rhs = std::sqrt(2.0) * pc.values[i];
    row.slack = row.rhs - row.lhs;
    row.pass = row.lhs <= row.rhs + tol;
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

LlboundReport llbound_diagnostic(const CircleSpectrum& u) {
  LlboundReport r;
  r.one_norm = ell_one_norm(u);
  r.big_l = big_L(u);
  if (r.big_l <= 1e-12) {
    r.degenerate = true;
    return r;
  }
  r.ratio = r.one_norm / r.big_l;
  r.within = r.ratio <= kLlboundConstant;
  return r;
}

LargeCommutatorReport large_commutator_search(const UnitaryRep& u, int trials, std::uint64_t seed) {
  const int n = u.n();
  const Matrix& x = u.matrix();
  const Matrix id = Matrix::Identity(n, n);
  std::mt19937_64 rng(seed);
  LargeCommutatorReport r;
  r.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const Matrix v = random_unitary(n, rng);
    r.best_commutator = std::max(r.best_commutator, norm2(id - x * v * x.adjoint() * v.adjoint()));
  }
  const cplx mean = x.trace() / static_cast<double>(n);
  r.distance_to_center = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(mean)));
  r.ratio = r.distance_to_center > 1e-12 ? 2.0 * r.best_commutator / r.distance_to_center : 0.0;
  return r;
}

}  // namespace normgen
