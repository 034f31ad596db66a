#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "parabver/error.hpp"
#include "parabver/spectral.hpp"

using namespace parabver;

namespace {

std::vector<cplx> plane_wave(const std::vector<int>& grid, const std::vector<double>& periods,
                             const std::vector<int>& freq) {
  std::vector<cplx> v;
  const int dims = static_cast<int>(grid.size());
  std::size_t total = 1;
  for (int m : grid) total *= static_cast<std::size_t>(m);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    double phase = 0.0;
    for (int d = dims - 1; d >= 0; --d) {
      const int m = grid[static_cast<std::size_t>(d)];
      const double x = static_cast<double>(rest % static_cast<std::size_t>(m)) * periods[static_cast<std::size_t>(d)] / m;
      rest /= static_cast<std::size_t>(m);
      phase += 2.0 * std::numbers::pi * freq[static_cast<std::size_t>(d)] * x / periods[static_cast<std::size_t>(d)];
    }
    v.push_back(std::polar(1.0, phase));
  }
  return v;
}

}  // namespace

TEST(SpectralField, PlaneWaveHasSingleCoefficient) {
  const std::vector<int> grid{8, 6, 4};
  const std::vector<double> per{2.0, 1.0, 3.0};
  const std::vector<int> freq{-3, 2, 1};
  const auto f = SpectralField::from_samples(grid, per, true, plane_wave(grid, per, freq));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const cplx expected = f.frequency(i) == freq ? cplx(1.0) : cplx(0.0);
    EXPECT_LT(std::abs(f.coeffs()[i] - expected), 1e-13);
  }
  EXPECT_EQ(f.flat_index(freq), f.flat_index(std::vector<int>(f.frequency(f.flat_index(freq)))));
}

TEST(SpectralField, SamplesRoundTrip) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  const std::vector<int> grid{6, 10};
  std::vector<cplx> v(60);
  for (auto& x : v) x = {g(rng), g(rng)};
  const auto f = SpectralField::from_samples(grid, {1.0, 2.0}, false, v);
  const auto back = f.to_samples();
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_LT(std::abs(back[i] - v[i]), 1e-12);
  EXPECT_NEAR(f.l2_norm(), sample_l2_norm(grid, std::vector<double>{1.0, 2.0}, v), 1e-12);
}

TEST(SpectralField, RejectsOddGrid) { EXPECT_THROW(SpectralField({5}, {1.0}, false), ArgumentError); }

TEST(Norms, SingleModeWeight) {
  SpectralField f({8, 8}, {2.0, 4.0}, true);
  const std::vector<int> freq{2, -3};
  f.at(freq) = cplx(0.0, 2.0);
  const double xi = 2.0 * std::numbers::pi * 2 / 2.0;
  const double eta = 2.0 * std::numbers::pi * 3 / 4.0;
  const double r = std::sqrt(1.0 + xi * xi + eta);
  const double s = 2.5;
  EXPECT_NEAR(aniso_norm(f, RegularityIndex(s)), std::sqrt(8.0) * 2.0 * std::pow(r, s), 1e-10);
  const auto ln = SlowlyVaryingFn::log_multiscale({1.0});
  EXPECT_NEAR(aniso_norm(f, RegularityIndex(s, ln)), std::sqrt(8.0) * 2.0 * std::pow(r, s) * ln(r), 1e-9);
  EXPECT_THROW(iso_norm(f, RegularityIndex(s)), ArgumentError);
}

TEST(Norms, OverflowNamesMode) {
  SpectralField f({16}, {1.0}, false);
  f.at(std::vector<int>{7}) = 1.0;
  try {
    iso_norm(f, RegularityIndex(300.0));
    FAIL() << "expected RangeError";
  } catch (const RangeError& e) {
    EXPECT_NE(std::string(e.what()).find("7"), std::string::npos);
  }
}

TEST(Norms, Homogeneous) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  SpectralField f({8, 8, 8}, {2.0, 1.0, 2.0}, true);
  for (auto& c : f.coeffs()) c = {g(rng), g(rng)};
  const RegularityIndex idx(3.0, SlowlyVaryingFn::log_multiscale({1.0, 1.0}));
  const double base = aniso_norm(f, idx);
  f *= cplx(0.0, -3.0);
  EXPECT_NEAR(aniso_norm(f, idx), 3.0 * base, 1e-12 * base);
}

TEST(Embedding, ConstantsBoundRandomFields) {
  const RegularityIndex idx(3.0, SlowlyVaryingFn::log_multiscale({1.0}));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  SpectralField f({16, 16}, {1.0, 1.0}, true);
  double r_max = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto k = f.frequency(i);
    const double xi = 2 * std::numbers::pi * k[0], eta = 2 * std::numbers::pi * k[1];
    r_max = std::max(r_max, aniso_radius(std::vector<double>{xi}, eta));
  }
  const auto c = embedding_constants(2.5, idx, 3.5, r_max);
  for (int trial = 0; trial < 10; ++trial) {
    for (auto& x : f.coeffs()) x = {g(rng), g(rng)};
    const double mid = aniso_norm(f, idx);
    EXPECT_LE(aniso_norm(f, RegularityIndex(2.5)), c.c_low * mid * (1 + 1e-9));
    EXPECT_LE(mid, c.c_high * aniso_norm(f, RegularityIndex(3.5)) * (1 + 1e-9));
  }
}

TEST(FieldIo, RoundTrip) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  SpectralField f({4, 6}, {1.5, 2.0}, true);
  for (auto& c : f.coeffs()) c = {g(rng), g(rng)};
  std::stringstream ss;
  write_field(ss, f);
  const SpectralField back = read_field(ss);
  EXPECT_EQ(back.grid(), f.grid());
  EXPECT_EQ(back.periods(), f.periods());
  EXPECT_TRUE(back.has_time());
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(back.coeffs()[i], f.coeffs()[i]);
}
