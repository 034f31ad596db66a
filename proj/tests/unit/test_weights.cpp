#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "parabver/error.hpp"
#include "parabver/weights.hpp"

using namespace parabver;

TEST(SlowlyVarying, ConstantAndLog) {
  EXPECT_EQ(SlowlyVaryingFn()(5.0), 1.0);
  EXPECT_TRUE(SlowlyVaryingFn().is_identically_one());
  EXPECT_EQ(SlowlyVaryingFn::constant(2.5)(1e6), 2.5);
  const auto ln = SlowlyVaryingFn::log_multiscale({1.0});
  const double e4 = std::exp(4.0);
  EXPECT_NEAR(ln(e4), 4.0, 1e-14);
  // Below the default splice e^2 the value is frozen at ln(e^2) = 2.
  EXPECT_NEAR(ln(1.0), 2.0, 1e-14);
  EXPECT_NEAR(ln(3.0), 2.0, 1e-14);
}

TEST(SlowlyVarying, IteratedLogs) {
  const auto phi = SlowlyVaryingFn::log_multiscale({1.0, -1.0});
  const double r = 1e6;
  EXPECT_NEAR(phi(r), std::log(r) / std::log(std::log(r)), 1e-12);
  const auto deep = SlowlyVaryingFn::log_multiscale({0.0, 0.0, 1.0});
  EXPECT_GT(deep.splice_radius(), std::exp(std::numbers::e) - 1e-9);
  for (double x : log_grid(1.0, 1e12, 50)) EXPECT_GT(deep(x), 0.0);
}

TEST(SlowlyVarying, Errors) {
  EXPECT_THROW(SlowlyVaryingFn()(0.5), DomainError);
  EXPECT_THROW(SlowlyVaryingFn::log_multiscale({}), ArgumentError);
  const auto tab = SlowlyVaryingFn::tabulated({{1.0, 1.0}, {100.0, 100.0}});
  EXPECT_NEAR(tab(10.0), 10.0, 1e-12);  // log-log interpolation of r -> r
  EXPECT_THROW(tab(1000.0), RangeError);
}

TEST(Karamata, PassAndFail) {
  const std::vector<double> lambdas{0.5, 2.0, 10.0};
  EXPECT_TRUE(karamata_check(SlowlyVaryingFn(), lambdas, 1e8, 0.05).pass);
  const auto lnln = karamata_check(SlowlyVaryingFn::log_multiscale({0.0, 1.0}), lambdas, 1e8, 0.05);
  EXPECT_TRUE(lnln.pass);
  const auto ln = karamata_check(SlowlyVaryingFn::log_multiscale({1.0}), lambdas, 1e8, 0.05);
  EXPECT_NEAR(ln.worst_deviation, std::log(10.0) / std::log(1e8), 1e-12);
  EXPECT_EQ(ln.worst_lambda, 10.0);
  std::vector<std::pair<double, double>> table;
  for (double r : log_grid(1.0, 1e10, 100)) table.emplace_back(r, std::pow(r, 0.1));
  const auto power = karamata_check(SlowlyVaryingFn::tabulated(table), lambdas, 1e8, 0.05);
  EXPECT_FALSE(power.pass);
  EXPECT_NEAR(power.worst_deviation, std::pow(10.0, 0.1) - 1.0, 1e-9);
}

TEST(Boundedness, SupOnCompact) {
  const auto rep = boundedness_check(SlowlyVaryingFn::log_multiscale({-1.0}), 1e4, 100);
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.max_inv_phi, std::log(1e4), 1e-9);
  EXPECT_NEAR(rep.max_phi, 0.5, 1e-12);
}

TEST(LogGrid, Endpoints) {
  const auto g = log_grid(1.0, 1e8, 200);
  ASSERT_EQ(g.size(), 200u);
  EXPECT_EQ(g.front(), 1.0);
  EXPECT_NEAR(g.back(), 1e8, 1e-6);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
}
