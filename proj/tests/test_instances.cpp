#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "persuasion/persuasion.hpp"

using namespace persuasion;
using oracle::q;

TEST(Instances, Figure1Name) { EXPECT_EQ(figure1_instance().name(), "fig1"); }

TEST(Instances, UpperBoundFamily) {
  auto inst = ub_disclosure_instance(6);
  EXPECT_EQ(inst[0].rho, q(4, 5));
  EXPECT_EQ(inst[0].xi, 1);
  EXPECT_EQ(inst[1].rho, 0);
  for (std::size_t i = 2; i < 6; ++i) {
    EXPECT_EQ(inst[i].rho, 1);
    EXPECT_EQ(inst[i].xi, 0);
  }
  EXPECT_THROW(ub_disclosure_instance(2), TooSmall);
  for (std::size_t n = 3; n <= 12; ++n) {
    // μ^R = (1 − 1/(n−1))·... lands exactly on candidate 1, so OPT = 1
    EXPECT_EQ(pareto_procedure(ub_disclosure_instance(n), UtilityMode::Cardinal).opt_value, 1) << n;
  }
}

TEST(Instances, UpperBoundEventProbability) {
  for (std::size_t n = 4; n <= 10; ++n) {
    const std::size_t k = isqrt(n);
    const Rational nn(static_cast<long>(n)), kk(static_cast<long>(k));
    EXPECT_EQ(oracle::ub_event_probability_by_counting(n, k), q(1, 2) - kk * (kk - 1) / (2 * nn * (nn - 1))) << n;
  }
  EXPECT_EQ(isqrt(15), 3u);
  EXPECT_EQ(isqrt(16), 4u);
  EXPECT_EQ(isqrt(1000000), 1000u);
}

TEST(Instances, InstanceFamiliesIAndII) {
  auto one = instance_I(5);
  EXPECT_EQ(one[0].rho, 0);
  EXPECT_EQ(one[0].xi, 1);
  EXPECT_EQ(one[1].rho, 1);
  EXPECT_EQ(one[4].rho, q(1, 2));
  EXPECT_EQ(pareto_procedure(one, UtilityMode::Cardinal).opt_value, q(1, 2));
  auto two = instance_II(5);
  EXPECT_EQ(two.size(), 5u);
  EXPECT_EQ(two[1].rho, q(1, 2));
  EXPECT_FALSE(two.strictly_distinct());
  EXPECT_THROW(instance_I(1), TooSmall);
}

TEST(Instances, NegativelyCorrelatedReversesRanks) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = negatively_correlated(2 + seed % 9, seed);
    EXPECT_TRUE(inst.strictly_distinct());
    for (std::size_t i = 0; i < inst.size(); ++i)
      for (std::size_t j = 0; j < inst.size(); ++j)
        if (i != j) { EXPECT_EQ(inst[i].xi > inst[j].xi, inst[i].rho < inst[j].rho); }
  }
}

TEST(Instances, RandomFamiliesAreSeeded) {
  auto a = random_instance(8, 3), b = random_instance(8, 3), c = random_instance(8, 4);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(a[i].rho, b[i].rho);
    EXPECT_EQ(a[i].xi, b[i].xi);
  }
  bool differs = false;
  for (std::size_t i = 0; i < 8; ++i) differs = differs || a[i].rho != c[i].rho;
  EXPECT_TRUE(differs);
  EXPECT_TRUE(a.strictly_distinct());
  auto al = random_instance(8, 3, Distribution::aligned());
  for (const auto& x : al.candidates()) EXPECT_EQ(x.rho, x.xi);
  auto ind = random_instance(40, 3, Distribution::independent(3));
  std::set<std::string> values;
  for (const auto& x : ind.candidates()) {
    EXPECT_GE(x.rho, 0);
    EXPECT_LE(x.rho, 1);
    values.insert(to_string(x.rho));
  }
  EXPECT_LE(values.size(), 4u);
  EXPECT_THROW(random_instance(0, 1), TooSmall);
  EXPECT_THROW(random_instance(20, 1, Distribution::uniform_grid(10)), InvalidArgument);
}

TEST(Instances, GridValuesLieInTheUnitInterval) {
  auto inst = random_instance(200, 9);
  std::set<std::string> seen;
  for (const auto& x : inst.candidates()) {
    EXPECT_GT(x.rho, 0);
    EXPECT_LE(x.rho, 1);
    EXPECT_TRUE(seen.insert(to_string(x.rho)).second);
  }
}

TEST(Instances, DerivedSeedsDiffer) {
  std::set<std::uint64_t> s;
  for (std::uint64_t i = 0; i < 1000; ++i) s.insert(derive_seed(42, i));
  EXPECT_EQ(s.size(), 1000u);
  EXPECT_EQ(derive_seed(42, 5), derive_seed(42, 5));
}
