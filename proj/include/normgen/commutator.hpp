#pragma once

#include <cstdint>
#include <vector>

#include "normgen/orderings.hpp"
#include "normgen/spectral.hpp"

namespace normgen {

struct CommutatorPartner {
  OptimalOrdering opt;  // u in optimal order, as diag(e^{i angles})
  Matrix v;             // diag(sigma, sigma^{-1}, 1_n) in U(3n), sigma the cyclic shift
  cplx lambda;          // conjugate of the last optimal eigenvalue
  Matrix commutator;    // X v X* v*, X = diag(u, u, u)
};

CommutatorPartner cyclic_commutator_partner(const CircleSpectrum& u);

struct AuxRow {
  int index = 0;
  double lhs = 0.0;  // mu_i(1 - lambda u)
  double rhs = 0.0;  // sqrt(2) ell_i(commutator)
  double slack = 0.0;
  bool pass = false;
};

struct AuxReport {
  std::vector<AuxRow> rows;
  bool pass = true;
};

AuxReport aux_inequality_check(const CircleSpectrum& u, double tol = kTol.ell);

struct LlboundReport {
  double one_norm = 0.0;
  double big_l = 0.0;
  double ratio = 0.0;
  bool degenerate = false;
  bool within = false;  // ratio <= 192
};

inline constexpr double kLlboundConstant = 192.0;

LlboundReport llbound_diagnostic(const CircleSpectrum& u);

struct LargeCommutatorReport {
  double best_commutator = 0.0;  // max |1 - u v u* v*|_2 over sampled v
  double distance_to_center = 0.0;  // inf_lambda |1 - lambda u|_2
  double ratio = 0.0;  // 2 best / distance, reported only
  int trials = 0;
};

/// Random search over Haar unitaries v. No guarantee; diagnostic output only.
LargeCommutatorReport large_commutator_search(const UnitaryRep& u, int trials, std::uint64_t seed);

}  // namespace normgen
