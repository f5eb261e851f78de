#include <gtest/gtest.h>

#include <bit>

#include "oracles.hpp"
#include "persuasion/persuasion.hpp"

using namespace persuasion;
using oracle::q;

namespace {

BoxLP random_lp(std::uint64_t seed, std::size_t n) {
  CounterRng r(seed, 9, 0);
  BoxLP lp;
  auto draw = [&] { return q(static_cast<long>(r.below(11)) - 5, 1 + static_cast<long>(r.below(3))); };
  for (std::size_t i = 0; i < n; ++i) {
    lp.c.push_back(draw());
    lp.w.push_back(draw());
    lp.tie.push_back(draw());
  }
  // keep the LP feasible: x = 0 always is
  return lp;
}

}  // namespace

TEST(BoxLP, MatchesVertexEnumeration) {
  for (std::uint64_t s = 0; s < 400; ++s) {
    auto lp = random_lp(s, 1 + s % 7);
    auto sol = solve_box_lp(lp);
    auto best = oracle::box_lp_by_vertices(lp);
    ASSERT_TRUE(best.feasible);
    Rational cons = 0, sec = 0;
    std::size_t fractional = 0;
    for (std::size_t i = 0; i < lp.c.size(); ++i) {
      EXPECT_GE(sol.x[i], 0);
      EXPECT_LE(sol.x[i], 1);
      cons += lp.w[i] * sol.x[i];
      sec += lp.tie[i] * sol.x[i];
      fractional += sol.x[i] != 0 && sol.x[i] != 1;
    }
    EXPECT_GE(cons, 0);
    EXPECT_EQ(sol.objective, best.objective) << "seed " << s;
    EXPECT_EQ(sec, best.secondary) << "seed " << s;
    EXPECT_LE(fractional, 1u);
  }
}

TEST(BoxLP, SizeMismatchAndInfeasible) {
  EXPECT_THROW(solve_box_lp({{q(1)}, {}, {}}), InvalidArgument);
  BoxLP lp{{q(1)}, {q(-1)}, {}};
  // x = 0 is feasible, so the optimum gives up the positive objective
  auto sol = solve_box_lp(lp);
  EXPECT_EQ(sol.x[0], 0);
  EXPECT_EQ(sol.objective, 0);
}

TEST(NestedLP, SingletonSets) {
  auto inst = figure1_instance();
  auto p = nested_lp_policy(inst, UtilityMode::Cardinal);
  for (std::size_t i = 0; i < 8; ++i) {
    std::uint64_t m = 1ull << i;
    EXPECT_EQ(p.hire_probability(m, i), 1);
    EXPECT_EQ(p.u_sender[m], inst[i].xi);
    EXPECT_EQ(p.u_receiver[m], inst[i].rho);
  }
}

TEST(NestedLP, Figure1Redundancy) {
  auto inst = figure1_instance();
  auto p = nested_lp_policy(inst, UtilityMode::Cardinal);
  EXPECT_TRUE(check_redundancy(inst, p));
}

TEST(NestedLP, ValueBoundsOnEverySet) {
  for (std::uint64_t i = 0; i < 40; ++i) {
    auto inst = random_instance(5 + i % 3, derive_seed(31, i));
    auto p = nested_lp_policy(inst, UtilityMode::Cardinal);
    EXPECT_TRUE(check_redundancy(inst, p));
    for (std::uint64_t mask = 1; mask <= p.full_mask(); ++mask) {
      Rational rho = 0, xi = 0;
      long size = std::popcount(mask);
      for (std::size_t k = 0; k < inst.size(); ++k)
        if (mask >> k & 1u) rho += inst[k].rho, xi += inst[k].xi;
      // the uniform recommendation is persuasive, so the optimum is at least the mean;
      // the receiver always gets at least the mean too
      EXPECT_GE(p.u_sender[mask], xi / Rational(size));
      EXPECT_GE(p.u_receiver[mask], rho / Rational(size));
      // no mechanism beats the full-information benchmark of the set
      EXPECT_LE(p.u_sender[mask], pareto_on_subset(inst, mask, UtilityMode::Cardinal).opt_value);
    }
  }
}

TEST(NestedLP, ValueEqualsExactEvaluationOfItsMechanism) {
  const ScenarioSpec sc{Knowledge::Basic, true, UtilityMode::Cardinal, UtilityMode::Cardinal};
  for (std::uint64_t i = 0; i < 10; ++i) {
    auto inst = random_instance(4 + i % 3, derive_seed(32, i));
    auto p = nested_lp_policy(inst, UtilityMode::Cardinal);
    auto m = nested_lp_mechanism(inst, UtilityMode::Cardinal);
    auto r = exact_evaluate(inst, m, sc);
    EXPECT_EQ(r.sender_eu, p.u_sender.back());
    EXPECT_EQ(r.receiver_eu, p.u_receiver.back());
    EXPECT_TRUE(check_persuasive(inst, m, sc).persuasive);
  }
  auto ub = ub_disclosure_instance(6);
  EXPECT_EQ(exact_evaluate(ub, nested_lp_mechanism(ub, UtilityMode::Cardinal), sc).sender_eu, q(2, 3));
}

TEST(NestedLP, OrdinalUsesIndicator) {
  auto inst = random_instance(6, 4);
  auto p = nested_lp_policy(inst, UtilityMode::Ordinal);
  auto cs = best_candidates(inst).sender;
  EXPECT_EQ(p.u_sender[1ull << cs], 1);
  for (std::size_t i = 0; i < 6; ++i)
    if (i != cs) { EXPECT_EQ(p.u_sender[1ull << i], 0); }
  EXPECT_LE(p.u_sender.back(), 1);
}

TEST(NestedLP, TieBreakFavoursTheReceiver) {
  // sender indifferent everywhere: among optimal policies the receiver's value is maximal,
  // which here means hiring the best receiver candidate whenever possible
  auto inst = make_instance({{1, 0}, {3, 0}, {2, 0}});
  auto p = nested_lp_policy(inst, UtilityMode::Cardinal);
  EXPECT_EQ(p.u_sender.back(), 0);
  // revealing everything lets the receiver wait for ρ = 3 on every order
  EXPECT_EQ(p.u_receiver.back(), 3);
  EXPECT_EQ(p.u_receiver[0b101], 2);
  EXPECT_EQ(p.u_receiver[0b011], 3);
}

TEST(NestedLP, SizeCap) {
  EXPECT_THROW(nested_lp_policy(random_instance(17, 1), UtilityMode::Cardinal), TooLarge);
  EXPECT_THROW(nested_lp_policy(random_instance(6, 1), UtilityMode::Cardinal, 5), TooLarge);
}
