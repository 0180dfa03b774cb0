#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "normgen/generation.hpp"
#include "normgen/rational.hpp"
#include "normgen/spectral.hpp"

namespace normgen {

/// Haar unitary: QR of a complex Gaussian matrix with the diagonal phases of R removed.
Matrix random_unitary(int n, std::mt19937_64& rng);

/// Sorted uniform angles, each perturbed; occasionally one value is repeated.
CircleSpectrum random_spectrum(int n, std::mt19937_64& rng);

/// w diag w* for a Haar w.
UnitaryRep random_conjugate(const CircleSpectrum& spec, std::mt19937_64& rng);

/// Scales the centered angles of spec until ell_0 <= bound. Projective class only.
CircleSpectrum shrink_to(const CircleSpectrum& spec, double bound);

/// Independent stream for (seed, suite, case id); results do not depend on scheduling.
std::mt19937_64 case_rng(std::uint64_t seed, const std::string& suite, int id);

struct PairCase {
  int n = 0;
  UnitaryRep u = UnitaryRep::identity(1);
  UnitaryRep v = UnitaryRep::identity(1);
  int m = 1;
  int s = 1;
};

/// ell_0(u) <= m ell_0(v), m in 1..m_max.
PairCase sample_rank_dependent(std::mt19937_64& rng, int n_min, int n_max, int m_max = 4);
/// ell_0(u) <= m ell_{s-1}(v) with s >= 2 and 2(s-1) <= n-1.
PairCase sample_rank_independent(std::mt19937_64& rng, int n_min, int n_max, int m_max = 3);
/// Arbitrary u, noncentral v.
PairCase sample_full(std::mt19937_64& rng, int n_min, int n_max);

struct RationalCase {
  RationalSpectrum u;
  RationalSpectrum v;
  int m = 1;
  Rational s{1};
};

/// Rational pair with lcm of denominators <= s0_max satisfying the pipeline hypothesis.
RationalCase sample_pipeline(std::mt19937_64& rng, int s0_max = 48, int m_max = 3);

struct CorpusOptions {
  std::uint64_t seed = kDefaultSeed;
  int n_min = 2;
  int n_max = 10;
  int cases = 20;  // per suite
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct CaseResult {
  std::string suite;
  int id = 0;
  int n = 0;
  long length = 0;
  long budget = 0;
  double residual = 0.0;
  double residual_tol = 0.0;
  bool pass = false;
  std::string note;
  double metric = 0.0;  // diagnostics suites: llbound ratio
};

/// Runs every suite with options.cases instances; the report uses schema "normgen-report/1".
nlohmann::json run_corpus(const CorpusOptions& options);

/// One instance of a named suite.
CaseResult run_case(const std::string& suite, int id, const CorpusOptions& options);

const std::vector<std::string>& corpus_suites();

}  // namespace normgen
