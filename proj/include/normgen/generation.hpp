#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "normgen/orderings.hpp"
#include "normgen/spectral.hpp"

namespace normgen {

enum class Theorem { RankDep, RankIndep, FullGen, Pipeline, BroiseKernel };

const char* to_string(Theorem t);
Theorem theorem_from_string(const std::string& s);

/// One factor g base^e g*.
struct Step {
  Matrix g;
  int e = 1;
};

using Fragment = std::vector<Step>;

struct CertParams {
  int m = 0;
  double s = 0.0;
  int n = 0;
};

/// prod_k g_k base^{e_k} g_k* = target up to a unit scalar.
struct Certificate {
  Matrix target;
  Matrix base;
  std::vector<Step> steps;
  long claimed_budget = 0;
  Theorem theorem = Theorem::RankDep;
  CertParams params;
  nlohmann::json metadata = nlohmann::json::object();
  std::optional<long> s0;
};

struct HypothesisReport {
  int m = 0;
  int s = 0;
  double ell0_u = 0.0;
  std::vector<double> ell_v;  // ell_i(v) for i < s
  std::vector<double> slack;  // ell0(u) - m ell_i(v); satisfied when <= tolerance
  bool satisfied = false;
  int max_feasible_s = 0;                // for the given m
  std::optional<long> min_feasible_m;    // for the given s; empty if none exists
};

class HypothesisError : public Error {
 public:
  explicit HypothesisError(HypothesisReport report)
      : Error(ErrorKind::BudgetInfeasible, "spectral hypothesis fails"), report_(std::move(report)) {}
  const HypothesisReport& report() const { return report_; }

 private:
  HypothesisReport report_;
};

HypothesisReport hypothesis_check(const CircleSpectrum& u, const CircleSpectrum& v, int m, int s);
HypothesisReport hypothesis_check(const UnitaryRep& u, const UnitaryRep& v, int m, int s);

/// A target factor (e^{i angle}, e^{-i angle}) at positions (index, index+1).
struct BlockTarget {
  int index = 0;
  double angle = 0.0;
};

struct SwapCommutator {
  Matrix commutator;  // v g v* g*
  Fragment fragment;  // [(I, +1), (g, -1)]
};

/// v = diag(e^{i gamma}); g swaps positions j, j+1.
SwapCommutator swap_commutator(std::span<const double> gamma, int j);

/// Conjugates of diag(e^{i gamma})^{+-1} whose product is the block target. At most 2m steps.
Fragment generate_block(const BlockTarget& target, std::span<const double> gamma, int m, int j);

/// Several separated target blocks at once from separated source blocks, sharing one walk.
Fragment generate_simultaneous(std::span<const double> gamma, std::span<const BlockTarget> targets,
                               std::span<const int> sources, int m);

struct GenOptions {
  std::uint64_t seed = kDefaultSeed;
};

Certificate generate_rank_dependent(const UnitaryRep& u, const UnitaryRep& v, int m, const GenOptions& opts = {});
Certificate generate_rank_independent(const UnitaryRep& u, const UnitaryRep& v, int m, int s,
                                      const GenOptions& opts = {});
Certificate generate_full(const UnitaryRep& u, const UnitaryRep& v, const GenOptions& opts = {});

/// Rank-independent generation on diagonal inputs given by angles; used by the rational pipeline.
Certificate generate_rank_independent_diagonal(const CircleSpectrum& u, const CircleSpectrum& v, int m, int s);

struct VerifyOptions {
  double eq_per_step = kTol.eq_per_step;
};

struct VerifyReport {
  bool pass = false;
  long length = 0;
  long claimed_budget = 0;
  bool within_budget = false;
  bool shapes_ok = false;
  bool target_unitary = false;
  bool base_unitary = false;
  double residual = 0.0;
  double residual_tol = 0.0;
  bool product_ok = false;
  double max_unitarity_defect = 0.0;
  bool conjugators_unitary = false;
  double max_spectrum_mismatch = 0.0;
  bool conjugacy_ok = false;
  double easy_direction_worst = 0.0;  // max of lhs - rhs over checked indices
  bool easy_direction_ok = false;
  double lower_bound_gap = 0.0;  // k ell(base) - ell(target)
  bool lower_bound_ok = false;
  std::vector<std::string> failures;
};

VerifyReport verify_certificate(const Certificate& cert, const VerifyOptions& opts = {});

struct BudgetQuery {
  long m = 1;
  double s = 1.0;  // fraction in (0, 1] for the continuous budgets
  long s_index = 1;  // integer window for the matrix budgets
  long n = 1;
  std::optional<double> ell;  // for the log budget and the full-generation budgets
  double c = 1.0;
};

struct BudgetTable {
  long rank_dependent = 0;      // 8 m n
  long rank_independent = 0;    // 24 m ceil(n / s_index)
  long pipeline = 0;            // 48 m ceil(1/s)
  long main_theorem = 0;        // 18432 m ceil(1/s)
  long bng_ii1 = 0;             // 589824 m ceil(1/s)
  std::optional<long> full_generation;        // 8 n ceil(2/ell)
  std::optional<double> full_generation_raw;  // 16 n / ell
  std::optional<double> log_budget;           // c |log ell| / ell
};

BudgetTable theorem_budgets(const BudgetQuery& q);

struct CounterexampleReport {
  int n = 0;
  Matrix u;
  Matrix v;
  int lower_bound = 0;     // min rank of 1 - c u over the admissible scalars c
  double rank_distance = 0.0;  // d_r(scalar u, I) at the minimizing scalar
  int max_feasible_s = 0;
  long minimal_m = 0;
  long fallback_budget = 0;  // 8 m n with the minimal m
};

/// u = diag(l^{-(n-1)}, l, ..., l), v = diag(m^{-(n-1)}, m, ..., m).
CounterexampleReport counterexample_pair(int n, cplx lambda, cplx mu);

}  // namespace normgen
