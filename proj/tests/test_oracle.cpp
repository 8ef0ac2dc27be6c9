#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "parabolic/oracle.hpp"
#include "parabolic/shift.hpp"
#include "test_support.hpp"

using namespace parabolic;
using namespace parabolic::testing;

namespace {

std::string fired_rule(const Verdict& v) {
  for (const auto& r : v.trail) {
    if (r.fired) return r.ruleId;
  }
  return "";
}

}  // namespace

TEST(Decide, FullFlag) {
  auto v = decide(make_data(3, 2, 0, {pt("p", {1, 1})}));
  EXPECT_EQ(v.conclusion, Conclusion::Rational);
  EXPECT_EQ(fired_rule(v), "R2");
  EXPECT_EQ(v.trail.size(), 3u);
}

TEST(Decide, CoprimeGenus) {
  auto v = decide(make_data(2, 110, 43, {}));
  EXPECT_EQ(v.conclusion, Conclusion::Rational);
  EXPECT_EQ(fired_rule(v), "R5");
  EXPECT_EQ(v.trail.back().bindings.at("dPrime"), "43");
}

TEST(Decide, StablyRationalOnly) {
  auto v = decide(make_data(2881, 110, 43, {}));
  EXPECT_EQ(v.conclusion, Conclusion::StablyRational);
  EXPECT_EQ(v.levelBound, 109);
  EXPECT_EQ(fired_rule(v), "R6");
  EXPECT_EQ(v.trail.size(), 7u);
}

TEST(Decide, ReachableUnit) {
  auto data = make_data(2, 6, 3, {pt("p", {2, 2, 2})});
  EXPECT_EQ(reachable_degrees(data), (std::set<Int>{1, 3, 5}));
  auto v = decide(data);
  EXPECT_EQ(v.conclusion, Conclusion::Rational);
  EXPECT_EQ(fired_rule(v), "R4");
}

TEST(Decide, Unknown) {
  auto v = decide(make_data(6, 4, 2, {}));
  EXPECT_EQ(v.conclusion, Conclusion::Unknown);
  EXPECT_FALSE(v.levelBound);
  EXPECT_EQ(fired_rule(v), "");
  EXPECT_EQ(v.trail.size(), 7u);
}

TEST(Decide, RankOneAndNewstead) {
  EXPECT_EQ(fired_rule(decide(make_data(5, 1, 7, {pt("p", {1})}))), "R0");
  EXPECT_EQ(fired_rule(decide(make_data(5, 4, 7, {pt("p", {4})}))), "R1");
  EXPECT_EQ(fired_rule(decide(make_data(5, 4, -3, {}))), "R1");
  EXPECT_EQ(fired_rule(decide(make_data(5, 4, 2, {pt("p", {2, 1, 1})}))), "R3");
}

TEST(Decide, NormalizedInputDropsTrivialPoints) {
  auto v = decide(make_data(4, 4, -3, {pt("a", {4}), pt("b", {2, 2})}));
  EXPECT_EQ(v.normalized.dModR, 1);
  EXPECT_EQ(v.normalized.mults.size(), 1u);
  EXPECT_EQ(v.normalized.mults.at("b"), (std::vector<Int>{2, 2}));
}

TEST(Decide, EveryRecordHasCitationAndCondition) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 200; ++trial) {
    auto v = decide(random_instance(rng, 30, 1, 12, 3, 30));
    for (const auto& r : v.trail) {
      EXPECT_EQ(r.citation, rule_citations().at(r.ruleId));
      EXPECT_FALSE(r.condition.empty());
    }
    for (std::size_t i = 0; i + 1 < v.trail.size(); ++i) EXPECT_FALSE(v.trail[i].fired);
  }
}

TEST(ReachableDegrees, Examples) {
  EXPECT_EQ(reachable_degrees(make_data(2, 4, 2, {})), (std::set<Int>{2}));
  EXPECT_EQ(reachable_degrees(make_data(2, 4, 2, {pt("p", {4})})), (std::set<Int>{2}));
  EXPECT_EQ(reachable_degrees(make_data(2, 4, 2, {pt("p", {2, 2})})), (std::set<Int>{0, 2}));
  EXPECT_EQ(reachable_degrees(make_data(2, 4, -1, {pt("p", {2, 2}), pt("q", {3, 1})})), (std::set<Int>{0, 1, 2, 3}));
}

TEST(OpenGenera, Examples) {
  EXPECT_EQ(open_genera(110, 43, 10000), (std::vector<Int>{2881, 5762, 8643}));
  EXPECT_TRUE(open_genera(2, 1, 500).empty());
  std::vector<Int> sixes;
  for (Int g = 6; g <= 50; g += 6) sixes.push_back(g);
  EXPECT_EQ(open_genera(5, 2, 50), sixes);
  EXPECT_THROW(open_genera(4, 2, 10), InputError);
}

TEST(OpenGenera, AgreesWithPointwiseVerdicts) {
  for (Int r = 2; r <= 12; ++r) {
    for (Int d = -r; d <= r; ++d) {
      if (std::gcd(r, d) != 1) continue;
      auto open = open_genera(r, d, 60);
      std::vector<Int> direct;
      for (Int g = 2; g <= 60; ++g) {
        if (decide(make_data(g, r, d, {})).conclusion != Conclusion::Rational) direct.push_back(g);
      }
      EXPECT_EQ(open, direct);
      for (Int g : open) EXPECT_EQ(decide(make_data(g, r, d, {})).conclusion, Conclusion::StablyRational);
    }
  }
}

// Each rule's hypothesis alone must force a rational verdict.
TEST(Subsumption, RuleHypothesesForceRational) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    auto data = random_instance(rng, 40, 1, 10, 3, 40);
    auto v = decide(data);
    bool unitMult = false;
    for (const auto& p : data.points) {
      for (Int m : p.mults) unitMult = unitMult || m == 1;
    }
    const Int dm = mod_floor(data.d, data.r);
    const bool newstead = trivial_flags(data) && (dm == 1 || dm == data.r - 1);
    bool coprimeGenus = false;
    if (std::gcd(data.r, data.d) == 1) {
      coprimeGenus = std::gcd(data.g, dm) == 1 || std::gcd(data.g, data.r - dm) == 1;
    }
    if (data.r == 1 || unitMult || newstead || coprimeGenus) {
      EXPECT_EQ(v.conclusion, Conclusion::Rational);
    }
    if (std::gcd(data.r, data.d) == 1) {
      EXPECT_NE(v.conclusion, Conclusion::Unknown);
    }
    if (v.conclusion == Conclusion::StablyRational) {
      EXPECT_EQ(v.levelBound, data.r - 1);
    }
  }
}

TEST(Invariance, DegreeModRank) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    auto data = random_instance(rng, 40, 1, 10, 3, 40);
    auto moved = data;
    moved.d += data.r * std::uniform_int_distribution<Int>(-3, 3)(rng);
    EXPECT_EQ(decide(moved), decide(data));
  }
}

TEST(Invariance, Shift) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    auto data = random_instance(rng, 40, 1, 10, 3, 40, 31);
    ShiftAmount a;
    for (std::size_t p = 0; p < data.n(); ++p) a.eta.emplace_back(std::uniform_int_distribution<long>(0, 31)(rng), 31);
    auto s = shift(data, a);
    auto v = decide(data);
    auto w = decide(s);
    EXPECT_EQ(w.conclusion, v.conclusion);
    EXPECT_EQ(w.levelBound, v.levelBound);
    EXPECT_EQ(reachable_degrees(s), reachable_degrees(data));
  }
}

TEST(Decide, Deterministic) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    auto data = random_instance(rng, 40, 1, 10, 3, 40);
    EXPECT_EQ(decide(data), decide(data));
  }
}

TEST(Decide, RejectsInvalidData) { EXPECT_THROW(decide(make_data(1, 2, 0, {})), InputError); }
