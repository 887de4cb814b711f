#include <gtest/gtest.h>

#include <random>

#include "ltar/differencing.hpp"
#include "ltar/errors.hpp"
#include "ltar/model.hpp"
#include "oracles.hpp"

using namespace ltar;

namespace {

TensorSeries series_from(std::initializer_list<double> values) {
  std::vector<Tensor3> obs;
  for (const double v : values) obs.emplace_back(1, 1, 1, std::vector<double>{v});
  return TensorSeries(std::move(obs));
}

std::vector<double> values_of(const TensorSeries& s) {
  std::vector<double> out;
  for (const auto& obs : s) out.push_back(obs(0, 0, 0));
  return out;
}

double max_series_diff(const TensorSeries& a, const TensorSeries& b) {
  EXPECT_EQ(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t j = 0; j < std::min(a.size(), b.size()); ++j)
    worst = std::max(worst, max_abs_diff(a[j], b[j]));
  return worst;
}

}  // namespace

TEST(LagDifference, ConstantAndLinearSeriesVanish) {
  std::mt19937_64 rng(1);
  const Tensor3 u = oracle::random_tensor(3, 1, 2, rng);
  std::vector<Tensor3> constant(6, u);
  const auto [d1, s1] = lag_difference(TensorSeries(constant), 1);
  EXPECT_EQ(d1.size(), 5u);
  for (const auto& obs : d1) EXPECT_EQ(frob_norm(obs), 0.0);

  std::vector<Tensor3> linear;
  for (int j = 0; j < 7; ++j) linear.push_back(static_cast<double>(j) * u);
  const auto [d2, s2] = lag_difference(TensorSeries(linear), 2);
  EXPECT_EQ(d2.size(), 5u);
  for (const auto& obs : d2) EXPECT_LT(frob_norm(obs), 1e-14);
  EXPECT_EQ(s2.order, 2u);
  EXPECT_EQ(s2.anchor, std::vector<Tensor3>(linear.end() - 2, linear.end()));
}

TEST(LagDifference, Preconditions) {
  const TensorSeries s = series_from({1, 2, 3});
  EXPECT_THROW((void)lag_difference(s, 3), InsufficientDataError);
  EXPECT_THROW((void)lag_difference(s, 0), std::invalid_argument);
}

TEST(LagDifference, RoundTripOnRandomSeries) {
  std::mt19937_64 rng(2);
  const TensorSeries s = oracle::random_series(12, 3, 4, rng);
  for (const std::size_t d : {1u, 2u, 3u}) {
    const auto [diffed, state] = lag_difference(s, d);
    const DifferencingState from_head{DifferenceKind::Lag, d, s.head(d).observations()};
    EXPECT_LT(max_series_diff(invert_lag_difference(diffed, from_head), s.tail(s.size() - d)),
              1e-12);
  }
}

TEST(InvertLagDifference, ZeroSeriesContinuesAnchor) {
  const DifferencingState state{DifferenceKind::Lag, 1, series_from({4.5}).observations()};
  const TensorSeries out = invert_lag_difference(series_from({0, 0, 0}), state);
  EXPECT_EQ(values_of(out), (std::vector<double>{4.5, 4.5, 4.5}));
}

TEST(InvertLagDifference, HandBuiltThreeSteps) {
  // d = 1: Y_k = Y'_k + Y_{k-1}, anchored at Y_n = 10.
  const DifferencingState d1{DifferenceKind::Lag, 1, series_from({10}).observations()};
  EXPECT_EQ(values_of(invert_lag_difference(series_from({1, -2, 0.5}), d1)),
            (std::vector<double>{11, 9, 9.5}));

  // d = 2 with anchors Y_{n-1} = 3, Y_n = 5 (last first difference 2):
  // Y'_k are second differences, so first differences run 2 + 1 = 3, 3 + 1 = 4,
  // 4 - 3 = 1 and levels 8, 12, 13.
  const DifferencingState d2{DifferenceKind::Lag, 2, series_from({3, 5}).observations()};
  EXPECT_EQ(values_of(invert_lag_difference(series_from({1, 1, -3}), d2)),
            (std::vector<double>{8, 12, 13}));
}

TEST(InvertLagDifference, RejectsWrongState) {
  const DifferencingState seasonal{DifferenceKind::Seasonal, 2,
                                   series_from({1, 2}).observations()};
  EXPECT_THROW((void)invert_lag_difference(series_from({1}), seasonal),
               std::invalid_argument);
  const DifferencingState short_anchor{DifferenceKind::Lag, 2, series_from({1}).observations()};
  EXPECT_THROW((void)invert_lag_difference(series_from({1}), short_anchor),
               std::invalid_argument);
}

TEST(SeasonalDifference, PeriodicSeriesVanishes) {
  const TensorSeries s = series_from({1, 5, -2, 1, 5, -2, 1, 5});
  const auto [diffed, state] = seasonal_difference(s, 3);
  EXPECT_EQ(diffed.size(), 5u);
  for (const double v : values_of(diffed)) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(values_of(TensorSeries(state.anchor)), (std::vector<double>{-2, 1, 5}));
}

TEST(SeasonalDifference, Preconditions) {
  const TensorSeries s = series_from({1, 2, 3, 4});
  EXPECT_THROW((void)seasonal_difference(s, 1), InsufficientDataError);
  EXPECT_THROW((void)seasonal_difference(s, 4), InsufficientDataError);
  EXPECT_NO_THROW((void)seasonal_difference(s, 3));
}

TEST(SeasonalDifference, RoundTripOnRandomSeries) {
  std::mt19937_64 rng(3);
  const TensorSeries s = oracle::random_series(11, 2, 3, rng);
  const auto [diffed, state] = seasonal_difference(s, 3);
  const DifferencingState from_head{DifferenceKind::Seasonal, 3, s.head(3).observations()};
  EXPECT_LT(max_series_diff(invert_seasonal_difference(diffed, from_head), s.tail(8)), 1e-12);
}

TEST(InvertSeasonalDifference, HandBuiltThreeSteps) {
  // s = 2 with Y_{n-1} = 7, Y_n = 9: Y_{n+1} = Y'_1 + Y_{n-1},
  // Y_{n+2} = Y'_2 + Y_n, Y_{n+3} = Y'_3 + Y_{n+1}.
  const DifferencingState state{DifferenceKind::Seasonal, 2,
                                series_from({7, 9}).observations()};
  EXPECT_EQ(values_of(invert_seasonal_difference(series_from({1, -1, 2}), state)),
            (std::vector<double>{8, 8, 10}));
  EXPECT_EQ(values_of(invert_difference(series_from({1, -1, 2}), state)),
            (std::vector<double>{8, 8, 10}));
}

TEST(ApplyDifferencing, OperatorsCommuteExactly) {
  std::mt19937_64 rng(4);
  // Integer-valued data keeps every subtraction exact.
  std::vector<Tensor3> obs;
  std::uniform_int_distribution<int> u(-50, 50);
  for (int j = 0; j < 40; ++j) {
    std::vector<double> data(6);
    for (auto& v : data) v = u(rng);
    obs.emplace_back(3, 1, 2, data);
  }
  const TensorSeries s(obs);
  for (const std::size_t d : {1u, 2u}) {
    const auto [a, sa] = apply_differencing(s, d, 5, DifferenceOrder::SeasonalThenLag);
    const auto [b, sb] = apply_differencing(s, d, 5, DifferenceOrder::LagThenSeasonal);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.size(), s.size() - d - 5);
    ASSERT_EQ(sa.size(), 2u);
    EXPECT_EQ(sa[0].kind, DifferenceKind::Seasonal);
    EXPECT_EQ(sb[0].kind, DifferenceKind::Lag);
  }
  const auto [same, none] = apply_differencing(s, 0, 0, DifferenceOrder::SeasonalThenLag);
  EXPECT_EQ(same, s);
  EXPECT_TRUE(none.empty());
}

TEST(InvertDifferencing, CompositionRoundTripsInBothOrders) {
  std::mt19937_64 rng(5);
  const TensorSeries full = oracle::random_series(40, 2, 3, rng);
  // Difference a prefix, then check that the continuation's differences
  // integrate back to the continuation using the prefix's states.
  const TensorSeries prefix = full.head(25);
  for (const auto order : {DifferenceOrder::SeasonalThenLag, DifferenceOrder::LagThenSeasonal}) {
    const auto [diffed_full, unused] = apply_differencing(full, 2, 4, order);
    const auto [diffed_prefix, states] = apply_differencing(prefix, 2, 4, order);
    const std::size_t offset = diffed_prefix.size();
    const TensorSeries future = diffed_full.slice(offset, diffed_full.size() - offset);
    EXPECT_LT(max_series_diff(invert_differencing(future, states), full.tail(15)), 1e-12);
  }
}

TEST(DifferencingNames, ParseAndPrint) {
  EXPECT_EQ(parse_difference_kind("lag"), DifferenceKind::Lag);
  EXPECT_EQ(parse_difference_kind(to_string(DifferenceKind::Seasonal)), DifferenceKind::Seasonal);
  EXPECT_THROW((void)parse_difference_kind("weekly"), std::invalid_argument);
  EXPECT_EQ(parse_difference_order("lag-then-seasonal"), DifferenceOrder::LagThenSeasonal);
  EXPECT_EQ(parse_difference_order(to_string(DifferenceOrder::SeasonalThenLag)),
            DifferenceOrder::SeasonalThenLag);
  EXPECT_THROW((void)parse_difference_order("both"), std::invalid_argument);
}
