#pragma once

#include <string>

#include <json.hpp>

#include "normgen/broise.hpp"
#include "normgen/commutator.hpp"
#include "normgen/generation.hpp"
#include "normgen/orderings.hpp"
#include "normgen/rational.hpp"
#include "normgen/spectral.hpp"

namespace normgen {

using nlohmann::json;

inline constexpr const char* kCertSchema = "normgen-cert/1";
inline constexpr const char* kReportSchema = "normgen-report/1";

// Matrices: {"n": n, "re": [[...]], "im": [[...]]}, row-major. Doubles are written with
// round-trip precision, so encode/decode is bit-exact.
json encode(const Matrix& m);
json encode(const UnitaryRep& u);
json encode(const CircleSpectrum& s);
json encode(const SProfile& p);
json encode(const OptimalOrdering& o);
json encode(const AngleSumOrdering& o);
json encode(const Certificate& c);
json encode(const VerifyReport& r);
json encode(const HypothesisReport& r);
json encode(const BudgetTable& t);
json encode(const CounterexampleReport& r);
json encode(const RationalSpectrum& r);
json encode(const Approximation& a);
json encode(const StabilityReport& r);
json encode(const AuxReport& r);
json encode(const CageReport& r);

/// Shape checks only; no unitarity requirement.
Matrix decode_matrix(const json& j);
/// Throws Validation if the matrix is not unitary.
UnitaryRep decode_unitary(const json& j);
CircleSpectrum decode_spectrum(const json& j);
/// Accepts either a matrix or a spectrum document.
UnitaryRep decode_unitary_or_spectrum(const json& j);
Certificate decode_certificate(const json& j);
RationalSpectrum decode_rational(const json& j);

/// Parse errors (missing file, malformed JSON) throw Error(Parse).
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace normgen
