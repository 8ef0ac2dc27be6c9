#include <random>

#include <gtest/gtest.h>

#include "parabolic/core.hpp"
#include "test_support.hpp"

using namespace parabolic;
using namespace parabolic::testing;

namespace {

bool has_error(const std::vector<std::string>& errs, const std::string& needle) {
  return std::any_of(errs.begin(), errs.end(), [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Rational, ParsesAndNormalizes) {
  EXPECT_EQ(Q("2/4").str(), "1/2");
  EXPECT_EQ(Q("-6/3").str(), "-2");
  EXPECT_EQ(Q("3/-6").str(), "-1/2");
  EXPECT_EQ(Q("7").str(), "7");
  EXPECT_EQ(Q("+5/10"), Q("1/2"));
}

TEST(Rational, RejectsMalformed) {
  EXPECT_THROW(Q("1/0"), InputError);
  EXPECT_THROW(Q(""), InputError);
  EXPECT_THROW(Q("1/"), InputError);
  EXPECT_THROW(Q("a/2"), InputError);
  EXPECT_THROW(Q("1.5"), InputError);
  try {
    Q("1/0");
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "zero denominator");
  }
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(Q("-7/2").floor(), -4);
  EXPECT_EQ(Q("-7/2").ceil(), -3);
  EXPECT_EQ(Q("3").floor(), 3);
  EXPECT_EQ(Q("3").ceil(), 3);
}

TEST(Validate, AcceptsGoodData) {
  auto data = make_data(2, 2, 1, {pt("p", {1, 1}, {"1/10", "1/5"})});
  EXPECT_TRUE(validate(data).empty());
}

TEST(Validate, GenusBelowTwo) {
  auto data = make_data(1, 2, 1, {pt("p", {1, 1}, {"1/10", "1/5"})});
  auto errs = validate(data);
  ASSERT_EQ(errs.size(), 1u);
  EXPECT_EQ(errs[0], "genus < 2");
}

TEST(Validate, WeightsNotStrictlyIncreasing) {
  auto data = make_data(2, 2, 1, {pt("p", {1, 1}, {"1/5", "1/5"})});
  EXPECT_TRUE(has_error(validate(data), "weights not strictly increasing"));
}

TEST(Validate, ReportsEveryViolationWithPath) {
  auto data = make_data(0, 3, 0, {pt("a", {1, 1}, {"1", "-1/2"}), pt("b", {0, 3})});
  auto errs = validate(data);
  EXPECT_TRUE(has_error(errs, "genus < 2"));
  EXPECT_TRUE(has_error(errs, "point a: multiplicities sum to 2"));
  EXPECT_TRUE(has_error(errs, "point a weight[0]: weight >= 1"));
  EXPECT_TRUE(has_error(errs, "point a weight[1]: weight < 0"));
  EXPECT_TRUE(has_error(errs, "point b mult[0]: multiplicity < 1"));
}

TEST(Validate, ZeroFirstWeightAllowed) {
  auto data = make_data(2, 2, 0, {pt("p", {1, 1}, {"0", "1/2"})});
  EXPECT_TRUE(validate(data).empty());
}

TEST(ParDeg, Examples) {
  EXPECT_EQ(pardeg(make_data(2, 2, 1, {pt("p", {1, 1}, {"1/4", "1/2"})})), Q("7/4"));
  EXPECT_EQ(pardeg(make_data(2, 3, 0, {pt("p", {3}, {"1/3"})})), Q("1"));
  EXPECT_EQ(pardeg(make_data(3, 4, -5, {pt("p", {2, 2}, {"0", "0"})})), Q("-5"));
}

TEST(ParDeg, MissingWeights) { EXPECT_THROW(pardeg(make_data(2, 2, 1, {pt("p", {1, 1})})), InputError); }

TEST(Slope, Examples) {
  EXPECT_EQ(slope(make_data(2, 2, 1, {pt("p", {1, 1}, {"1/4", "1/2"})})), Q("7/8"));
  EXPECT_EQ(slope(make_data(2, 2, 0, {pt("p", {2}, {"0"})})), Q("0"));
  EXPECT_EQ(slope(make_data(2, 1, 5, {pt("p", {1}, {"1/2"})})), Q("11/2"));
}

TEST(ExpandWeights, Examples) {
  auto e = expand_weights(make_data(2, 3, 0, {pt("p", {2, 1}, {"1/10", "1/2"})}));
  EXPECT_EQ(e[0], Qs({"1/10", "1/10", "1/2"}));
  auto f = expand_weights(make_data(2, 3, 0, {pt("p", {1, 1, 1}, {"1/7", "2/7", "3/7"})}));
  EXPECT_EQ(f[0], Qs({"1/7", "2/7", "3/7"}));
}

TEST(CompressWeights, PatternMismatch) {
  EXPECT_THROW(compress_weights(Qs({"1/10", "1/10", "1/2"}), {1, 2}), InputError);
  EXPECT_THROW(compress_weights(Qs({"1/10", "1/10", "1/10"}), {2, 1}), InputError);
  EXPECT_EQ(compress_weights(Qs({"1/10", "1/10", "1/2"}), {2, 1}), Qs({"1/10", "1/2"}));
}

TEST(CompressWeights, RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto data = random_instance(rng, 5, 1, 7, 3, 5);
    auto e = expand_weights(data);
    for (std::size_t p = 0; p < data.n(); ++p) {
      ASSERT_EQ(static_cast<Int>(e[p].size()), data.r);
      ASSERT_TRUE(std::is_sorted(e[p].begin(), e[p].end()));
      EXPECT_EQ(compress_weights(e[p], data.points[p].mults), *data.points[p].weights);
    }
  }
}

TEST(InducedQuotient, Examples) {
  auto data = make_data(2, 2, 1, {pt("p", {1, 1})});
  auto q = induced_quotient_type(data, SubType{0, 1, {{1, 0}}});
  EXPECT_EQ(q, (SubType{1, 1, {{0, 1}}}));

  auto data4 = make_data(2, 4, 7, {pt("p", {2, 2})});
  EXPECT_EQ(induced_quotient_type(data4, SubType{1, 2, {{1, 1}}}), (SubType{6, 2, {{1, 1}}}));

  EXPECT_THROW(induced_quotient_type(data, SubType{1, 2, {{1, 1}}}), InputError);
  EXPECT_THROW(induced_quotient_type(data, SubType{0, 1, {{2, 0}}}), InputError);
}

TEST(InducedQuotient, ComplementIsInvolution) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto data = random_instance(rng, 4, 2, 7, 2, 6);
    std::uniform_int_distribution<Int> rp(1, data.r - 1);
    SubType xi{std::uniform_int_distribution<Int>(-5, 5)(rng), rp(rng), {}};
    for (const auto& p : data.points) {
      auto choices = bounded_compositions(xi.rPrime, p.mults);
      xi.mPrime.push_back(choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)]);
    }
    EXPECT_EQ(induced_quotient_type(data, induced_quotient_type(data, xi)), xi);
  }
}

TEST(Combinatorics, Compositions) {
  EXPECT_EQ(compositions(4).size(), 8u);
  EXPECT_EQ(bounded_compositions(2, {1, 1, 1}).size(), 3u);
  EXPECT_EQ(bounded_compositions(3, {2, 2}).size(), 2u);
  EXPECT_TRUE(bounded_compositions(5, {2, 2}).empty());
}
