#include <doctest.h>

#include "normgen/generation.hpp"
#include "support/helpers.hpp"

using namespace normgen;
using testing::kPi;
using testing::spec;

namespace {

Matrix fragment_product(const Fragment& f, const Matrix& base) {
  Matrix p = Matrix::Identity(base.rows(), base.cols());
  for (const Step& s : f) p = p * s.g * (s.e > 0 ? base : Matrix(base.adjoint())) * s.g.adjoint();
  return p;
}

Matrix block_target(int n, const BlockTarget& t) {
  std::vector<double> a(static_cast<std::size_t>(n), 0.0);
  a[t.index] = t.angle;
  a[t.index + 1] = -t.angle;
  return diagonal_matrix(a);
}

}  // namespace

TEST_CASE("hypothesis check") {
  auto rng = testing::rng(30);
  const CircleSpectrum v = random_spectrum(5, rng);
  CHECK(hypothesis_check(spec(std::vector<double>(5, 0.0)), v, 1, 3).satisfied);
  CHECK(hypothesis_check(v, v, 1, 1).satisfied);
  const CounterexampleReport cx = counterexample_pair(6, unit(1.0), unit(std::sqrt(2.0)));
  const HypothesisReport r = hypothesis_check(spec({0.0, 0.0, 0.0, 0.0, 0.0, 1.0}), spec({0.0, 0.0, 0.0, 0.0, 0.0, 1.0}), 1, 1);
  CHECK(r.max_feasible_s == 1);
  CHECK(cx.max_feasible_s == 1);
  const HypothesisReport bad = hypothesis_check(spec({0.0, kPi}), spec({0.0, 0.1}), 1, 1);
  CHECK_FALSE(bad.satisfied);
  REQUIRE(bad.min_feasible_m.has_value());
  CHECK(hypothesis_check(spec({0.0, kPi}), spec({0.0, 0.1}), static_cast<int>(*bad.min_feasible_m), 1).satisfied);
}

TEST_CASE("swap commutator") {
  const std::vector<double> zero{0.0, 0.0, 0.0};
  CHECK((swap_commutator(zero, 1).commutator - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-15);
  const std::vector<double> g{0.0, kPi / 2};
  const SwapCommutator c = swap_commutator(g, 0);
  CHECK_NEAR(std::arg(c.commutator(0, 0)), -kPi / 2, 1e-15);
  auto rng = testing::rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const CircleSpectrum v = random_spectrum(4, rng);
    const SwapCommutator s = swap_commutator(v.angles, trial % 3);
    CHECK((fragment_product(s.fragment, diagonal_matrix(v.angles)) - s.commutator).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("single block generation") {
  const std::vector<double> gamma{0.0, 2.0, -2.0};
  CHECK(generate_block({1, 0.0}, gamma, 2, 0).empty());
  const BlockTarget t{1, 0.5};
  const Fragment f = generate_block(t, gamma, 2, 0);
  CHECK(f.size() <= 4);
  CHECK((fragment_product(f, diagonal_matrix(gamma)) - block_target(3, t)).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK_THROWS_AS(generate_block(t, gamma, 3, 0), Error);
}

TEST_CASE("simultaneous blocks") {
  const std::vector<double> gamma{0.3, 1.9, -0.2, 2.4, 0.9, -1.1, 0.0};
  const std::vector<BlockTarget> targets{{2, 0.6}, {5, -0.4}};
  const std::vector<int> sources{0, 3};
  const Fragment f = generate_simultaneous(gamma, targets, sources, 2);
  CHECK(f.size() <= 4);
  Matrix expect = block_target(7, targets[0]) * block_target(7, targets[1]);
  CHECK((fragment_product(f, diagonal_matrix(gamma)) - expect).cwiseAbs().maxCoeff() <= 1e-9);

  const std::vector<BlockTarget> one{{2, 0.6}};
  const std::vector<int> src{0};
  const Fragment a = generate_simultaneous(gamma, one, src, 4);
  const Fragment b = generate_block(one[0], gamma, 4, 0);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK((a[k].g - b[k].g).cwiseAbs().maxCoeff() == 0.0);

  const std::vector<int> overlapping{0, 1};
  CHECK_THROWS_AS(generate_simultaneous(gamma, targets, overlapping, 2), Error);
}

TEST_CASE("rank-dependent generation") {
  auto rng = testing::rng(32);
  const UnitaryRep v = random_conjugate(random_spectrum(6, rng), rng);
  const Certificate c = generate_rank_dependent(v, v, 1);
  const VerifyReport r = verify_certificate(c);
  CHECK(r.pass);
  CHECK(r.length <= 8 * 6);
  CHECK(generate_rank_dependent(UnitaryRep::identity(6), v, 1).steps.empty());
  CHECK_THROWS_AS(generate_rank_dependent(v, UnitaryRep::identity(6), 1), Error);
  for (int trial = 0; trial < 30; ++trial) {
    const PairCase p = sample_rank_dependent(rng, 2, 8);
    const Certificate cc = generate_rank_dependent(p.u, p.v, p.m);
    CHECK(verify_certificate(cc).pass);
    CHECK(static_cast<long>(cc.steps.size()) <= 8L * p.m * p.n);
  }
}

TEST_CASE("hypothesis failure is an error carrying the report") {
  const UnitaryRep u = UnitaryRep::diagonal(spec({0.0, kPi, 0.0}));
  const UnitaryRep v = UnitaryRep::diagonal(spec({0.0, 0.05, 0.0}));
  try {
    generate_rank_dependent(u, v, 1);
    FAIL("expected a hypothesis error");
  } catch (const HypothesisError& e) {
    CHECK(e.kind() == ErrorKind::BudgetInfeasible);
    CHECK_FALSE(e.report().satisfied);
    CHECK(e.report().slack[0] > 0.0);
  }
}

TEST_CASE("rank-independent generation") {
  auto rng = testing::rng(33);
  std::vector<double> a;
  for (int k = 0; k < 9; ++k) a.push_back(2 * kPi * k / 9 + 0.05 * std::sin(k));
  const CircleSpectrum vs = spec(a);
  const UnitaryRep v = random_conjugate(vs, rng);
  const UnitaryRep u = random_conjugate(shrink_to(random_spectrum(9, rng), 2 * ell_profile(vs).values[3]), rng);
  const Certificate c = generate_rank_independent(u, v, 2, 4);
  const VerifyReport r = verify_certificate(c);
  CHECK(r.pass);
  CHECK(r.length <= 24 * 2 * 3);
  CHECK(c.claimed_budget == 144);

  const Certificate s1 = generate_rank_independent(u, v, 2, 1);
  CHECK(verify_certificate(s1).pass);
  CHECK(s1.claimed_budget == 24 * 2 * 9);
  CHECK(s1.claimed_budget >= 8 * 2 * 9);
  CHECK_THROWS_AS(generate_rank_independent(u, v, 2, 6), Error);
}

TEST_CASE("full generation") {
  auto rng = testing::rng(34);
  const UnitaryRep v2 = UnitaryRep::diagonal(spec({0.0, kPi}));
  const Certificate c = generate_full(random_conjugate(random_spectrum(2, rng), rng), v2);
  CHECK(c.params.m == 2);
  CHECK(c.claimed_budget == 16 * 2);
  CHECK(verify_certificate(c).pass);
  const UnitaryRep v8 = random_conjugate(random_spectrum(8, rng), rng);
  for (int trial = 0; trial < 5; ++trial) {
    CHECK(verify_certificate(generate_full(UnitaryRep::from_matrix(random_unitary(8, rng)), v8)).pass);
  }
  CHECK(generate_full(UnitaryRep::identity(8), v8).steps.empty());
}

TEST_CASE("verifier") {
  Certificate empty;
  empty.target = Matrix::Identity(3, 3);
  empty.base = diagonal_matrix({0.1, 0.2, 0.3});
  CHECK(verify_certificate(empty).pass);

  auto rng = testing::rng(35);
  const PairCase p = sample_rank_dependent(rng, 5, 5);
  Certificate c = generate_rank_dependent(p.u, p.v, p.m);
  REQUIRE(verify_certificate(c).pass);
  REQUIRE_FALSE(c.steps.empty());
  c.steps[c.steps.size() / 2].g(0, 0) += 1e-2;
  const VerifyReport bad = verify_certificate(c);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.product_ok);
  CHECK(bad.residual > bad.residual_tol);

  Certificate over = generate_rank_dependent(p.u, p.v, p.m);
  over.claimed_budget = static_cast<long>(over.steps.size()) - 1;
  CHECK_FALSE(verify_certificate(over).within_budget);
}

TEST_CASE("published budgets") {
  BudgetQuery q;
  q.m = 1;
  q.s = 1.0;
  q.s_index = 1;
  q.n = 4;
  const BudgetTable t = theorem_budgets(q);
  CHECK(t.rank_independent == 96);
  CHECK(t.rank_dependent == 32);
  CHECK(t.bng_ii1 == 589824);
  CHECK(t.main_theorem == 18432);
  q.m = 2;
  q.s = 0.5;
  CHECK(theorem_budgets(q).pipeline == 192);
  q.ell = std::sqrt(2.0);
  const BudgetTable f = theorem_budgets(q);
  CHECK(*f.full_generation == 8 * 4 * 2);
  CHECK_NEAR(*f.full_generation_raw, 16.0 * 4 / std::sqrt(2.0), 1e-12);
  q.s = 0.0;
  CHECK_THROWS_AS(theorem_budgets(q), Error);
}

TEST_CASE("counterexample pair") {
  for (int n : {2, 4, 6, 8}) {
    const CounterexampleReport r = counterexample_pair(n, unit(1.0), unit(std::sqrt(2.0)));
    CHECK(r.lower_bound == n - 1);
    CHECK_NEAR(r.rank_distance, static_cast<double>(n - 1) / n, 1e-15);
    CHECK(r.max_feasible_s == 1);
    const UnitaryRep u = UnitaryRep::from_matrix(r.u);
    const UnitaryRep v = UnitaryRep::from_matrix(r.v);
    const Certificate c = generate_rank_dependent(u, v, static_cast<int>(r.minimal_m));
    CHECK(verify_certificate(c).pass);
    CHECK(static_cast<long>(c.steps.size()) >= n - 1);
    if (n >= 4) CHECK_THROWS_AS(generate_rank_independent(u, v, 1, 2), HypothesisError);
  }
  CHECK_THROWS_AS(counterexample_pair(1, unit(1.0), unit(2.0)), Error);
}
