#pragma once

#include <array>

#include "normgen/generation.hpp"
#include "normgen/spectral.hpp"

namespace normgen {

/// Self-adjoint unitary. Trace zero when trace_zero is set.
class Symmetry {
 public:
  static Symmetry from_matrix(Matrix m, bool trace_zero = true);
  /// diag(I_k, -I_k).
  static Symmetry reference(int k);

  const Matrix& matrix() const { return m_; }
  int n() const { return static_cast<int>(m_.rows()); }
  bool trace_zero() const { return trace_zero_; }

 private:
  Symmetry(Matrix m, bool tz) : m_(std::move(m)), trace_zero_(tz) {}
  Matrix m_;
  bool trace_zero_;
};

/// Principal square root: half angles on the (-pi, pi] branch.
UnitaryRep sqrt_unitary(const UnitaryRep& w);

/// (s, t, s, t) with s = [[0, u], [u*, 0]], u^2 = w, t = [[0, I], [I, 0]]; s t s t = diag(w, w*).
std::array<Symmetry, 4> block_symmetry_factors(const UnitaryRep& w);

/// g with g s1 g* = s2.
Matrix symmetry_conjugator(const Symmetry& s1, const Symmetry& s2);

/// diag(w, w*) as four conjugates of the reference symmetry.
Certificate broise_kernel_certificate(const UnitaryRep& w, const Symmetry& reference);

}  // namespace normgen
