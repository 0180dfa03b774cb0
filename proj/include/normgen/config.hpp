#pragma once

#include <cstddef>
#include <cstdint>

namespace normgen {

/// Numerical tolerances shared by every module.
struct Tolerances {
  double unitarity = 1e-9;
  double rank = 1e-9;
  double ell = 1e-8;
  double eq_per_step = 1e-7;
  double tie = 1e-9;
  double diag_residual = 1e-8;
  double spectrum_match = 1e-8;
  double zero_sum = 1e-10;
  double hypothesis = 1e-9;
  double easy_direction = 1e-7;
  double lower_bound = 1e-6;

  /// Projective equality tolerance for a certificate with k steps.
  double eq(std::size_t k) const { return eq_per_step * static_cast<double>(k + 1); }
};

inline constexpr Tolerances kTol{};

inline constexpr int kGridN = 4096;
inline constexpr int kExhaustiveCutoff = 8;
inline constexpr long kS0Max = 5040;
inline constexpr int kDiagRetries = 8;
inline constexpr std::uint64_t kDefaultSeed = 0x6e6f726d67656eULL;

}  // namespace normgen
