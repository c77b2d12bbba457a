#include <gtest/gtest.h>

#include <cmath>

#include "bots/bots.hpp"

using namespace bots;

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(8, 4), 70);
  EXPECT_EQ(binomial(7, 3), 35);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(100, 50).str(), "100891344545564193334812497256");
}

TEST(ClosedForm, TableValues) {
  EXPECT_EQ(closed_form_breadth(5, 5), 70);
  EXPECT_EQ(closed_form_loop_times(5, 5), 251);
  EXPECT_EQ(closed_form_breadth(25, 4), 2925);
  EXPECT_EQ(closed_form_loop_times(25, 4), 23750);
  EXPECT_EQ(closed_form_loop_times(60, 3), 39710);
  EXPECT_EQ(closed_form_breadth(11, 11), 184756);
  EXPECT_EQ(closed_form_loop_times(11, 11), 705431);
  EXPECT_THROW(closed_form_breadth(3, 4), InvalidArgument);
  EXPECT_THROW(closed_form_loop_times(3, 0), InvalidArgument);
}

TEST(ClosedForm, SquareLoopTimesIdentity) {
  for (std::size_t k = 1; k <= 20; ++k) EXPECT_EQ(closed_form_loop_times(k, k), binomial(2 * k, k) - 1);
}

TEST(ClosedForm, MatchesEnumeration) {
  for (std::size_t k = 1; k <= 8; ++k) {
    for (std::size_t m = 1; m <= k; ++m) {
      const Graph g = generate_grid({k, m});
      const auto r = enumerate_shortest_paths(g, partition(g, NodeId{1}), NodeId{static_cast<std::uint32_t>(k * m)});
      EXPECT_EQ(closed_form_breadth(k, m), Count(r.stats.breadth)) << k << "x" << m;
      EXPECT_EQ(closed_form_loop_times(k, m), Count(r.stats.loop_times)) << k << "x" << m;
    }
  }
}

TEST(Stirling, EightByEightBound) {
  const double approx = stirling_breadth_approx(8);
  EXPECT_NEAR(approx, 3493.78, 0.005);
  EXPECT_GE(approx, 3432.0);
  EXPECT_THROW(stirling_breadth_approx(1), InvalidArgument);
}

TEST(Stirling, RelativeErrorShrinks) {
  double prev = 1.0;
  for (std::size_t k = 6; k <= 16; ++k) {
    const double exact = static_cast<double>(binomial(2 * k - 2, k - 1));
    const double err = std::abs(stirling_breadth_approx(k) - exact) / exact;
    EXPECT_LT(err, 0.05) << k;
    EXPECT_LT(err, prev) << k;
    prev = err;
  }
}

TEST(Predict, Examples) {
  const auto p = predict_search_cost(5, 5, 1);
  EXPECT_EQ(p.per_path_work, 256u);
  EXPECT_EQ(p.breadth, 70);
  EXPECT_EQ(p.total_work, 256 * 70);
  EXPECT_EQ(predict_search_cost(7, 3, 1).breadth, closed_form_breadth(7, 3));
  EXPECT_EQ(predict_search_cost(5, 5, 3).total_work, 3 * 256 * 70);
  EXPECT_NEAR(predict_search_cost(8, 8, 1).breadth_bound, 3493.78, 0.005);
  EXPECT_THROW(predict_search_cost(5, 5, 0), InvalidArgument);
}
