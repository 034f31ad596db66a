#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "parabver/config.hpp"
#include "parabver/error.hpp"
#include "parabver/extension.hpp"
#include "parabver/verifier.hpp"

using namespace parabver;

namespace {

ProblemSpec heat2() {
  std::istringstream in(
      "[problem]\nN 2\nn 2\nl 0 0\n[domain]\nkind slab\nlengths 1 1\n[system]\n"
      "a 1 1 (2,0) (0,0) 0 1\na 1 1 (0,2) (0,0) 0 1\na 2 2 (2,0) (0,0) 0 1\na 2 2 (0,2) (0,0) 0 1\n"
      "[boundary]\nb 1 1 (0,0) (0,0) 0 1\nb 2 2 (0,0) (0,0) 0 1\n");
  return *parse_config(in).problem;
}

}  // namespace

TEST(ApplyLambda, ZeroMapsToZero) {
  const auto img = apply_lambda(heat2(), std::vector<MultiPoly>{MultiPoly(3), MultiPoly(3)});
  for (const auto* part : {&img.f, &img.g, &img.h})
    for (const MultiPoly& p : *part) EXPECT_TRUE(p.is_zero());
}

TEST(ApplyLambda, HeatHandDifferentiated) {
  // u = x1^2 + 2t: f = 2 - 2 = 0, h = x1^2, g = x1^2 + 2t.
  MultiPoly u(3);
  u.add_term({2, 0, 0}, 1.0);
  u.add_term({0, 0, 1}, 2.0);
  const auto img = apply_lambda(heat2(), std::vector<MultiPoly>{u, u});
  EXPECT_TRUE(img.f[0].is_zero());
  EXPECT_EQ(img.h[0], MultiPoly::monomial({2, 0, 0}, 1.0));
  EXPECT_EQ(img.g[1], u);
}

TEST(ApplyLambda, MatchesTermwiseEvaluation) {
  // Oracle: Au evaluated through derivatives of u computed independently.
  std::istringstream in(
      "[problem]\nN 1\nn 2\nl 1\n[domain]\nkind halfspace\nlengths 1 1\n[system]\n"
      "a 1 1 (2,0) (0,0) 0 1\na 1 1 (1,1) (1,0) 0 0.5\na 1 1 (0,2) (0,0) 1 2\na 1 1 (0,1) (0,0) 0 3\n"
      "[boundary]\nb 1 1 (1,0) (0,0) 0 1\n");
  const ProblemSpec spec = *parse_config(in).problem;
  MultiPoly u(3);
  u.add_term({3, 1, 0}, 1.0);
  u.add_term({1, 2, 1}, -2.0);
  u.add_term({0, 0, 2}, 0.5);
  const auto img = apply_lambda(spec, std::vector<MultiPoly>{u});
  const std::vector<double> pt{0.3, 0.7, 0.2};
  const double x1 = pt[0], t = pt[2];
  // D^alpha = i^{|alpha|} d^alpha
  const cplx ut = u.derivative(2).evaluate(pt);
  const cplx uxx = u.derivative(0, 2).evaluate(pt);
  const cplx uxy = u.derivative(0).derivative(1).evaluate(pt);
  const cplx uyy = u.derivative(1, 2).evaluate(pt);
  const cplx uy = u.derivative(1).evaluate(pt);
  const cplx expected = ut - uxx - 0.5 * x1 * uxy - 2.0 * t * uyy + cplx(0, 3) * uy;
  EXPECT_LT(std::abs(img.f[0].evaluate(pt) - expected), 1e-12);
  EXPECT_LT(std::abs(img.g[0].evaluate(pt) - cplx(0, 1) * u.derivative(0).evaluate(pt)), 1e-12);
}

TEST(ApplyLambda, SpectralSingleMode) {
  const ProblemSpec spec = heat2();
  SpectralField u1({8, 8, 8}, {2.0, 1.0, 2.0}, true), u2 = u1;
  const std::vector<int> k{1, -2, 3};
  u1.at(k) = cplx(0.5, 1.0);
  const auto img = apply_lambda(spec, std::vector<SpectralField>{u1, u2});
  const double xi1 = std::numbers::pi, xi2 = -4 * std::numbers::pi, eta = 3 * std::numbers::pi;
  const cplx sym(xi1 * xi1 + xi2 * xi2, eta);
  EXPECT_LT(std::abs(img.f[0].at(k) - sym * cplx(0.5, 1.0)), 1e-12);
  EXPECT_TRUE(img.f[1].is_zero());
  ASSERT_EQ(img.g.size(), 4u);  // 2 components x 2 faces
  const std::vector<int> kb{-2, 3};
  EXPECT_LT(std::abs(img.g[0].at(kb) - cplx(0.5, 1.0)), 1e-14);                                // x1 = 0
  EXPECT_LT(std::abs(img.g[1].at(kb) - cplx(0.5, 1.0) * std::polar(1.0, xi1 * 1.0)), 1e-14);  // x1 = 1
  EXPECT_LT(std::abs(img.h[0].at(std::vector<int>{1, -2}) - cplx(0.5, 1.0)), 1e-14);
}

TEST(QNorm, OnlyInitialComponent) {
  SpectralImage img;
  SpectralField h({8, 8}, {2.0, 1.0}, false);
  h.at(std::vector<int>{2, 1}) = 1.5;
  img.h.push_back(h);
  const RegularityIndex idx(3.0);
  EXPECT_NEAR(q_norm(img, idx), iso_norm(h, RegularityIndex(2.0)), 1e-12);
  EXPECT_EQ(q_norm(SpectralImage{}, idx), 0.0);
}

TEST(QNorm, AbsolutelyHomogeneous) {
  const ProblemSpec spec = heat2();
  const std::vector<double> per{2.0, 1.0, 2.0};
  auto u = random_draw(spec, 3.0, 4, per, 1, 0);
  const RegularityIndex idx(3.0);
  const double base = q_norm(apply_lambda(spec, u), idx);
  for (auto& f : u) f *= cplx(-2.0, 0.0);
  EXPECT_NEAR(q_norm(apply_lambda(spec, u), idx), 2.0 * base, 1e-12 * base);
}

TEST(Extension, ReflectionRuleMatchesDerivatives) {
  const auto rule = reflection_rule(4);
  for (int m = 0; m < 4; ++m) {
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.c.size(); ++k) sum += rule.c[k] * std::pow(-rule.lambda[k], m);
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
  EXPECT_EQ(extension_cutoff(0.5, 1.0), 1.0);
  EXPECT_EQ(extension_cutoff(-0.5, 1.0), 0.0);
  EXPECT_EQ(extension_cutoff(1.5, 1.0), 0.0);
}

TEST(Extension, AgreesInsideDomain) {
  MultiPoly p(2);
  p.add_term({2, 0}, 1.0);
  p.add_term({1, 1}, -0.5);
  p.add_term({0, 3}, 2.0);
  const std::vector<double> lengths{1.0, 2.0};
  ExtensionOptions opt;
  opt.grid = 16;
  const SpectralField f = extend_polynomial(p, lengths, true, opt);
  // Undo the shift: the field lives on [-L/2, 3L/2) and x_j = -L/2 + j h.
  SpectralField shifted = f;
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    double phase = 0.0;
    for (int k : shifted.frequency(i)) phase -= 0.5 * std::numbers::pi * k;
    shifted.coeffs()[i] *= std::polar(1.0, phase);
  }
  const auto v = shifted.to_samples();
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const double x = -0.5 + 2.0 * i / 16, y = -1.0 + 4.0 * j / 16;
      if (x < 0 || x > 1 || y < 0 || y > 2) continue;
      EXPECT_LT(std::abs(v[static_cast<std::size_t>(i * 16 + j)] - p.evaluate(std::vector<double>{x, y})), 1e-12);
    }
}

TEST(Sweep, DeterministicAcrossThreads) {
  const ProblemSpec spec = heat2();
  SweepOptions opt;
  opt.cutoffs = {4, 6};
  opt.samples = 5;
  opt.seed = 99;
  opt.threads = 1;
  const auto a = isomorphism_sweep(spec, RegularityIndex(3.0), opt);
  opt.threads = 3;
  const auto b = isomorphism_sweep(spec, RegularityIndex(3.0), opt);
  for (std::size_t r = 0; r < a.rows.size(); ++r) EXPECT_EQ(a.rows[r].ratios, b.rows[r].ratios);
  EXPECT_LE(a.fixed_invariance, 1e-10);
  EXPECT_GT(a.rows[0].min, 0.0);
}

TEST(Sweep, RandomDrawsDependOnIndex) {
  const ProblemSpec spec = heat2();
  const std::vector<double> per{2.0, 1.0, 2.0};
  const auto a = random_draw(spec, 3.0, 4, per, 1, 0);
  const auto b = random_draw(spec, 3.0, 4, per, 1, 0);
  const auto c = random_draw(spec, 3.0, 4, per, 1, 1);
  EXPECT_EQ(a[0].coeffs()[1], b[0].coeffs()[1]);
  EXPECT_NE(a[0].coeffs()[1], c[0].coeffs()[1]);
}

TEST(Sweep, ExceptionalRegularityRejected) {
  EXPECT_THROW(isomorphism_sweep(heat2(), RegularityIndex(3.5), SweepOptions{}), ExceptionalRegularityError);
}

TEST(Sweep, FixedInputInvariantUnderRefinement) {
  const ProblemSpec spec = heat2();
  const auto per = default_periods(spec);
  EXPECT_EQ(per, (std::vector<double>{2.0, 1.0, 2.0}));
  const RegularityIndex idx(3.0, SlowlyVaryingFn::log_multiscale({1.0}));
  const double a = isomorphism_ratio(spec, fixed_low_mode_input(spec, 4, per), idx);
  const double b = isomorphism_ratio(spec, fixed_low_mode_input(spec, 12, per), idx);
  EXPECT_NEAR(a, b, 1e-12 * a);
}

TEST(PolynomialNorms, Positive) {
  const ProblemSpec spec = heat2();
  MultiPoly u(3);
  u.add_term({2, 1, 0}, 1.0);
  u.add_term({0, 0, 1}, 1.0);
  const std::vector<MultiPoly> us{u, MultiPoly(3)};
  SurrogateOptions opt;
  opt.extension.grid = 16;
  const double un = solution_norm(spec, us, RegularityIndex(3.0), opt);
  const double qn = q_norm(spec, apply_lambda(spec, us), RegularityIndex(3.0), opt);
  EXPECT_GT(un, 0.0);
  EXPECT_GT(qn, 0.0);
  EXPECT_TRUE(std::isfinite(qn / un));
}
