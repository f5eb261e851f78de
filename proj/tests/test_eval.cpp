#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "persuasion/persuasion.hpp"

using namespace persuasion;
using oracle::q;

namespace {

const auto C = UtilityMode::Cardinal;
const auto O = UtilityMode::Ordinal;

ScenarioSpec scen(Knowledge k, bool d, UtilityMode s, UtilityMode r) { return {k, d, s, r}; }

// A history-dependent policy with arbitrary probabilities in {0, 1/4, ..., 1}, a function of
// the arrived set, the current candidate and the signal history.
MechanismPolicy scrambled(std::size_t n, std::uint64_t seed, Knowledge k) {
  auto policy = [seed, n](const SenderView& v) -> Rational {
    if (v.round() == n) return 1;
    std::uint64_t mask = 0, hires = 0;
    for (const auto& c : v.arrived()) mask |= 1ull << c.id;
    for (std::size_t i = 0; i < v.past_signals().size(); ++i)
      if (v.past_signals()[i] == Signal::Hire) hires |= 1ull << i;
    CounterRng r(seed, 11, (mask << 20) ^ (hires << 8) ^ v.current().id);
    return q(static_cast<long>(r.below(5)), 4);
  };
  return MechanismPolicy("scrambled", n, k == Knowledge::Basic, {PolicyBranch{1, policy, {}}});
}

void expect_matches_plain(const Instance& inst, const MechanismPolicy& m, const ScenarioSpec& s) {
  auto e = exact_evaluate(inst, m, s, 2);
  auto p = oracle::plain_evaluate(inst, m, s.knowledge);
  EXPECT_EQ(e.sender_success, p.sender_success) << m.name();
  EXPECT_EQ(e.sender_eu, p.sender_eu) << m.name();
  EXPECT_EQ(e.receiver_success, p.receiver_success) << m.name();
  EXPECT_EQ(e.receiver_eu, p.receiver_eu) << m.name();
  EXPECT_EQ(e.hire_round_pmf, p.pmf) << m.name();
}

}  // namespace

TEST(ExactEvaluate, MatchesPlainListingOfOrders) {
  for (std::uint64_t i = 0; i < 6; ++i) {
    const std::size_t n = 3 + i % 3;
    auto inst = random_instance(n, derive_seed(300, i));
    expect_matches_plain(inst, pareto_mechanism(inst, C), scen(Knowledge::Basic, false, C, C));
    expect_matches_plain(inst, growing_pareto(n, 1 + i % (n - 1), C), scen(Knowledge::Secretary, false, C, C));
    expect_matches_plain(inst, shrinking_pareto(inst, O), scen(Knowledge::Basic, true, O, C));
    expect_matches_plain(inst, nested_lp_mechanism(inst, C), scen(Knowledge::Basic, true, C, C));
    expect_matches_plain(inst, simple_secretary(n), scen(Knowledge::Secretary, false, O, O));
    expect_matches_plain(inst, first_opt(n, n / 2), scen(Knowledge::Secretary, true, O, O));
    expect_matches_plain(inst, trivial(n), scen(Knowledge::Secretary, false, C, C));
    expect_matches_plain(inst, scrambled(n, i, Knowledge::Secretary), scen(Knowledge::Secretary, false, C, C));
  }
}

TEST(ExactEvaluate, JobsDoNotChangeResults) {
  auto inst = random_instance(7, 5);
  auto m = growing_pareto(7, 4, C);
  auto sc = scen(Knowledge::Secretary, false, C, C);
  EXPECT_EQ(exact_evaluate(inst, m, sc, 1), exact_evaluate(inst, m, sc, 4));
}

TEST(ExactEvaluate, CapsAndFirewall) {
  auto big = random_instance(9, 1);
  EXPECT_THROW(exact_evaluate(big, trivial(9), scen(Knowledge::Secretary, false, C, C)), TooLarge);
  EXPECT_THROW(check_persuasive(random_instance(8, 1), trivial(8), scen(Knowledge::Secretary, false, C, C)), TooLarge);
  auto inst = figure1_instance();
  EXPECT_THROW(exact_evaluate(inst, pareto_mechanism(inst, C), scen(Knowledge::Secretary, false, C, C)), KnowledgeMismatch);
}

TEST(Persuasive, TargetingTheSendersFavouriteFails) {
  auto inst = make_instance({{0, 1}, {2, 0}});
  auto r = check_persuasive(inst, target_candidate(inst, 0), scen(Knowledge::Basic, false, C, C));
  EXPECT_FALSE(r.persuasive);
  EXPECT_EQ(r.v_obedient, 0);
  // refusing the round-1 HIRE leaves candidate 2 with ρ = 2
  EXPECT_EQ(r.v_best_response, 2);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations[0].at.round, 1u);
  EXPECT_EQ(r.violations[0].at.signals, std::vector<Signal>{Signal::Hire});
  auto o = oracle::best_receiver_strategy(inst, target_candidate(inst, 0), scen(Knowledge::Basic, false, C, C));
  EXPECT_EQ(o.best, 2);
}

TEST(Persuasive, CoinFlipDynkinWithDisclosureFails) {
  auto inst = negatively_correlated(5, 1);
  auto m = dynkin_mixture(5, 1, q(1, 2), "coin-flip");
  auto with = check_persuasive(inst, m, scen(Knowledge::Secretary, true, O, O));
  EXPECT_FALSE(with.persuasive);
  EXPECT_GT(with.v_best_response, with.v_obedient);
  EXPECT_FALSE(with.violations.empty());
}

TEST(Persuasive, Figure1ParetoIsPersuasiveAndIndifferent) {
  auto full = figure1_instance();
  EXPECT_THROW(check_persuasive(full, pareto_mechanism(full, C), scen(Knowledge::Basic, false, C, C)), TooLarge);
  // dropping the last candidate keeps a strict mix (alpha = 2/3)
  std::vector<std::pair<Rational, Rational>> v;
  for (std::size_t i = 0; i < 7; ++i) v.emplace_back(full[i].rho, full[i].xi);
  auto inst = validate_instance(v, "fig1-7");
  auto pr = pareto_procedure(inst, C);
  ASSERT_GT(pr.alpha, 0);
  ASSERT_LT(pr.alpha, 1);
  auto r = check_persuasive(inst, pareto_mechanism(inst, C), scen(Knowledge::Basic, false, C, C));
  EXPECT_TRUE(r.persuasive);
  EXPECT_EQ(r.v_obedient, pr.mu_r);  // receiver value, the constraint binds
  // a HIRE in round 1 carries exactly the mean, so the receiver is indifferent there
  EXPECT_GT(r.indifferent_nodes, 0u);
}

TEST(Persuasive, MechanismsInTheirScenarios) {
  for (std::uint64_t i = 0; i < 8; ++i) {
    const std::size_t n = 3 + i % 4;
    auto inst = random_instance(n, derive_seed(400, i));
    std::vector<std::pair<MechanismPolicy, ScenarioSpec>> cases{
        {pareto_mechanism(inst, C), scen(Knowledge::Basic, false, C, C)},
        {growing_pareto(n, default_growing_sample(n, C), C), scen(Knowledge::Secretary, false, C, C)},
        {shrinking_pareto(inst, C), scen(Knowledge::Basic, true, C, C)},
        {nested_lp_mechanism(inst, O), scen(Knowledge::Basic, true, O, C)},
        {elementary(inst), scen(Knowledge::Basic, false, O, O)},
        {adaptive_elementary(inst), scen(Knowledge::Basic, true, O, O)},
        {simple_secretary(n), scen(Knowledge::Secretary, false, O, O)},
        {first_opt(n, n / 2), scen(Knowledge::Secretary, true, O, O)},
        {trivial(n), scen(Knowledge::Secretary, true, C, C)}};
    for (const auto& [m, sc] : cases) {
      auto r = check_persuasive(inst, m, sc);
      EXPECT_TRUE(r.persuasive) << m.name() << " on " << to_json(inst).dump() << " " << to_json(r).dump();
      EXPECT_EQ(r.v_obedient, r.v_best_response);
      EXPECT_TRUE(r.violations.empty());
    }
  }
}

// Best response against every deterministic receiver strategy, n = 3 without disclosure and
// n = 2 with it.
TEST(Persuasive, BestResponseMatchesStrategyEnumeration) {
  int flagged = 0;
  for (std::uint64_t i = 0; i < 30; ++i) {
    const bool disclosure = i % 3 == 2;
    const std::size_t n = disclosure ? 2 : 3;
    auto inst = random_instance(n, derive_seed(500, i), Distribution::independent(4));
    auto b = best_candidates(inst);
    if (sgn(inst[b.receiver].rho) == 0 || sgn(inst[b.sender].xi) == 0) continue;
    const auto recv = i % 2 ? C : O;
    std::vector<MechanismPolicy> ms{scrambled(n, i, Knowledge::Basic), target_candidate(inst, b.sender),
                                    dynkin_mixture(n, 1, q(1, 3)), pareto_mechanism(inst, C), trivial(n)};
    for (const auto& m : ms) {
      auto k = m.needs_full_knowledge() ? Knowledge::Basic : Knowledge::Secretary;
      auto sc = scen(k, disclosure, C, recv);
      auto r = check_persuasive(inst, m, sc);
      auto o = oracle::best_receiver_strategy(inst, m, sc);
      EXPECT_EQ(r.v_obedient, o.obedient) << m.name() << " " << to_json(inst).dump();
      EXPECT_EQ(r.v_best_response, o.best) << m.name() << " " << to_json(inst).dump();
      EXPECT_EQ(r.persuasive, o.best == o.obedient);
      flagged += !r.persuasive;
    }
  }
  EXPECT_GT(flagged, 5);  // the sample includes non-persuasive policies
}

TEST(Persuasive, ViolationsDescribeRealDeviations) {
  auto inst = negatively_correlated(5, 1);
  auto r = check_persuasive(inst, dynkin_mixture(5, 1, q(1, 2)), scen(Knowledge::Secretary, true, O, O));
  for (const auto& v : r.violations) {
    EXPECT_GT(v.deviation_value, v.obedient_value);
    EXPECT_GT(v.probability, 0);
    EXPECT_EQ(v.at.signals.size(), v.at.round);
    EXPECT_EQ(v.at.disclosed.size(), v.at.round - 1);
  }
}

TEST(MonteCarlo, AgreesWithExact) {
  for (std::uint64_t i = 0; i < 4; ++i) {
    auto inst = random_instance(7, derive_seed(600, i));
    std::vector<std::pair<MechanismPolicy, ScenarioSpec>> cases{
        {growing_pareto(7, 4, C), scen(Knowledge::Secretary, false, C, C)},
        {simple_secretary(7), scen(Knowledge::Secretary, false, O, O)},
        {shrinking_pareto(inst, C), scen(Knowledge::Basic, true, C, C)},  // no fast path
        {nested_lp_mechanism(inst, C), scen(Knowledge::Basic, true, C, C)}};
    for (const auto& [m, sc] : cases) {
      auto e = exact_evaluate(inst, m, sc);
      auto mc = monte_carlo_evaluate(inst, m, sc, 40000, 9 + i, 2);
      // 4 half-widths is about 8 standard errors
      EXPECT_NEAR(mc.sender_eu.mean, e.sender_eu.get_d(), 4 * mc.sender_eu.halfwidth + 1e-12) << m.name();
      EXPECT_NEAR(mc.sender_success.mean, e.sender_success.get_d(), 4 * mc.sender_success.halfwidth + 1e-12) << m.name();
      EXPECT_NEAR(mc.receiver_eu.mean, e.receiver_eu.get_d(), 4 * mc.receiver_eu.halfwidth + 1e-12) << m.name();
      double total = 0;
      for (double p : mc.hire_round_pmf) total += p;
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(MonteCarlo, DeterministicAcrossJobs) {
  auto inst = random_instance(50, 3);
  auto m = growing_pareto(50, 28, C);
  auto sc = scen(Knowledge::Secretary, false, C, C);
  auto a = monte_carlo_evaluate(inst, m, sc, 20000, 77, 1);
  auto b = monte_carlo_evaluate(inst, m, sc, 20000, 77, 3);
  auto c = monte_carlo_evaluate(inst, m, sc, 20000, 78, 3);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.sender_eu.mean, c.sender_eu.mean);
  EXPECT_EQ(a.samples, 20000u);
  EXPECT_THROW(monte_carlo_evaluate(inst, m, sc, 1, 77, 1), InvalidArgument);
}

TEST(MonteCarlo, HalfwidthShrinksWithSamples) {
  auto inst = random_instance(20, 3);
  auto sc = scen(Knowledge::Secretary, false, O, O);
  auto small = monte_carlo_evaluate(inst, simple_secretary(20), sc, 4000, 1, 1);
  auto large = monte_carlo_evaluate(inst, simple_secretary(20), sc, 64000, 1, 1);
  EXPECT_NEAR(large.sender_success.halfwidth * 4, small.sender_success.halfwidth, small.sender_success.halfwidth * 0.2);
  const double p = large.sender_success.mean;
  EXPECT_NEAR(large.sender_success.halfwidth, 1.96 * std::sqrt(p * (1 - p) / 64000), 1e-4);
}
