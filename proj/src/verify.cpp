#include <algorithm>
#include <cmath>
#include <string>

#include "normgen/generation.hpp"

namespace normgen {

namespace {

// Smallest max chord distance between two spectra over cyclic alignments of their sorted angles.
double spectrum_mismatch(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return INFINITY;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t n = a.size();
  double best = INFINITY;
  for (std::size_t shift = 0; shift < n; ++shift) {
    double worst = 0.0;
    for (std::size_t k = 0; k < n && worst < best; ++k) {
      worst = std::max(worst, 2.0 * std::abs(std::sin(0.5 * (a[k] - b[(k + shift) % n]))));
    }
    best = std::min(best, worst);
  }
  return best;
}

Matrix power_pm(const Matrix& b, int e) { return e >= 0 ? b : Matrix(b.adjoint()); }

}  // namespace

VerifyReport verify_certificate(const Certificate& cert, const VerifyOptions& opts) {
  VerifyReport r;
  const auto k = static_cast<long>(cert.steps.size());
  r.length = k;
  r.claimed_budget = cert.claimed_budget;
  r.within_budget = k <= cert.claimed_budget;
  if (!r.within_budget) r.failures.push_back("length exceeds claimed budget");

  const Eigen::Index n = cert.target.rows();
  r.shapes_ok = n > 0 && cert.target.cols() == n && cert.base.rows() == n && cert.base.cols() == n;
  for (const Step& st : cert.steps) {
    r.shapes_ok = r.shapes_ok && st.g.rows() == n && st.g.cols() == n && (st.e == 1 || st.e == -1);
  }
  if (!r.shapes_ok) {
    r.failures.push_back("malformed shapes or exponents");
    return r;
  }
  r.target_unitary = unitarity_defect(cert.target) <= kTol.unitarity;
  r.base_unitary = unitarity_defect(cert.base) <= kTol.unitarity;
  if (!r.target_unitary) r.failures.push_back("target is not unitary");
  if (!r.base_unitary) r.failures.push_back("base is not unitary");

  Matrix prod = Matrix::Identity(n, n);
  for (const Step& st : cert.steps) {
    const double d = unitarity_defect(st.g);
    r.max_unitarity_defect = std::max(r.max_unitarity_defect, d);
    prod = prod * (st.g * power_pm(cert.base, st.e) * st.g.adjoint());
  }
  r.conjugators_unitary = r.max_unitarity_defect <= kTol.unitarity;
  if (!r.conjugators_unitary) r.failures.push_back("a conjugator is not unitary");

  r.residual = projective_distance(prod, cert.target).distance;
  r.residual_tol = opts.eq_per_step * static_cast<double>(k + 1);
  r.product_ok = r.residual <= r.residual_tol;
  if (!r.product_ok) r.failures.push_back("product differs from target: residual " + std::to_string(r.residual));

  if (!r.base_unitary || !r.target_unitary) return r;

  const UnitaryRep base = UnitaryRep::from_matrix(cert.base);
  const UnitaryRep target = UnitaryRep::from_matrix(cert.target);
  const CircleSpectrum base_spec = diagonalize_normal(base).spectrum;
  std::vector<double> base_inv = base_spec.angles;
  for (double& a : base_inv) a = canonical_angle(-a);

  for (const Step& st : cert.steps) {
    const Matrix s = st.g * power_pm(cert.base, st.e) * st.g.adjoint();
    double mismatch = INFINITY;
    if (unitarity_defect(s) <= kTol.unitarity) {
      const CircleSpectrum sp = diagonalize_normal(UnitaryRep::from_matrix(s)).spectrum;
      mismatch = spectrum_mismatch(sp.angles, st.e > 0 ? base_spec.angles : base_inv);
    }
    r.max_spectrum_mismatch = std::max(r.max_spectrum_mismatch, mismatch);
  }
  r.conjugacy_ok = r.max_spectrum_mismatch <= kTol.spectrum_match;
  if (!r.conjugacy_ok) r.failures.push_back("a step is not conjugate to base^{+-1}");

  // A product of k conjugates obeys ell_{k i}(target) <= k ell_i(base).
  const CircleSpectrum target_spec = diagonalize_normal(target).spectrum;
  const SProfile pt = ell_profile(target_spec);
  const SProfile pb = ell_profile(base_spec);
  r.easy_direction_worst = -INFINITY;
  for (long i = 0; i < n && k * i <= n - 1; ++i) {
    const double lhs = pt.values[static_cast<std::size_t>(std::min<long>(k * i, n - 1))];
    r.easy_direction_worst = std::max(r.easy_direction_worst, lhs - static_cast<double>(k) * pb.values[i]);
  }
  r.easy_direction_ok = r.easy_direction_worst <= kTol.easy_direction;
  if (!r.easy_direction_ok) r.failures.push_back("easy-direction inequality fails");

  r.lower_bound_gap = static_cast<double>(k) * ell_one_norm(base_spec) - ell_one_norm(target_spec);
  r.lower_bound_ok = r.lower_bound_gap >= -kTol.lower_bound;
  if (!r.lower_bound_ok) r.failures.push_back("length below the one-norm lower bound");

  r.pass = r.within_budget && r.shapes_ok && r.target_unitary && r.base_unitary && r.product_ok &&
           r.conjugators_unitary && r.conjugacy_ok && r.easy_direction_ok && r.lower_bound_ok;
  return r;
}

}  // namespace normgen
