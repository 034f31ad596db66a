#include <gtest/gtest.h>

#include <sstream>

#include "parabver/config.hpp"
#include "parabver/error.hpp"
#include "parabver/symbols.hpp"

using namespace parabver;

namespace {

ProblemSpec heat(int N, int n) {
  ProblemSpec spec;
  spec.N = N;
  spec.n = n;
  spec.l.assign(static_cast<std::size_t>(N), 0);
  spec.domain.kind = Domain::Kind::slab;
  spec.domain.lengths.assign(static_cast<std::size_t>(n), 1.0);
  for (int j = 0; j < N; ++j) {
    for (int d = 0; d < n; ++d) {
      MultiIndex alpha(static_cast<std::size_t>(n), 0);
      alpha[static_cast<std::size_t>(d)] = 2;
      spec.add_a(j, j, alpha, std::vector<int>(static_cast<std::size_t>(n), 0), 0, 1.0);
    }
    spec.add_b(j, j, MultiIndex(static_cast<std::size_t>(n), 0), std::vector<int>(static_cast<std::size_t>(n), 0), 0, 1.0);
  }
  return spec;
}

}  // namespace

TEST(MultiIndices, Counts) {
  EXPECT_EQ(multi_indices(2, 2).size(), 3u);
  EXPECT_EQ(multi_indices(3, 2).size(), 6u);
  EXPECT_EQ(multi_indices(2, 0).size(), 1u);
}

TEST(Domain, Faces) {
  Domain slab{Domain::Kind::slab, {1.0, 2.0}};
  EXPECT_EQ(slab.boundary_faces().size(), 2u);
  EXPECT_EQ(slab.boundary_faces()[1].normal[0], -1.0);
  Domain half{Domain::Kind::halfspace, {1.0, 2.0}};
  EXPECT_EQ(half.boundary_faces().size(), 1u);
  EXPECT_TRUE(half.contains(std::vector<double>{5.0, 1.0}));
  Domain per{Domain::Kind::periodic, {1.0}};
  EXPECT_TRUE(per.boundary_faces().empty());
  EXPECT_EQ(slab.face_of(std::vector<double>{1.0, 0.5}), 1);
}

TEST(Symbols, HeatDeterminantInP) {
  const ProblemSpec spec = heat(2, 2);
  const std::vector<double> x{0.5, 0.5}, xi{0.6, 0.8};
  const Polynomial det = det_poly_in_p(spec, x, 0.0, xi);
  // (p + |xi|^2)^2 = p^2 + 2p + 1
  EXPECT_NEAR(std::abs(det[0] - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(det[1] - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(det[2] - 1.0), 0.0, 1e-14);
}

TEST(Symbols, HeatDeterminantInZeta) {
  const ProblemSpec spec = heat(1, 2);
  const std::vector<double> x{0.0, 0.5}, xi{0.0, 0.6}, nu{1.0, 0.0};
  const cplx p(0.3, 0.2);
  const auto z = det_poly_in_zeta(spec, x, 0.0, xi, nu, p);
  EXPECT_EQ(z.effective_degree, 2);
  // p + 0.36 + zeta^2
  EXPECT_LT(std::abs(z.poly[0] - (p + 0.36)), 1e-14);
  EXPECT_LT(std::abs(z.poly[2] - 1.0), 1e-14);
  EXPECT_THROW(det_poly_in_zeta(spec, x, 0.0, std::vector<double>{0.1, 0.6}, nu, p), ArgumentError);
}

TEST(Symbols, PrincipalB) {
  const ProblemSpec spec = heat(2, 2);
  const auto b = principal_symbol_B(spec, std::vector<double>{0.0, 0.3}, 0.0, std::vector<double>{0.0, 1.0});
  EXPECT_EQ(b(0, 0), cplx(1.0));
  EXPECT_EQ(b(0, 1), cplx(0.0));
}

TEST(ProblemSpec, ValidateRejectsHighOrder) {
  ProblemSpec spec = heat(1, 1);
  spec.add_a(0, 0, {3}, {0}, 0, 1.0);
  EXPECT_THROW(spec.validate(), ArgumentError);
  ProblemSpec spec2 = heat(1, 1);
  spec2.add_b(0, 0, {1}, {0}, 0, 1.0);  // l = 0 row with a derivative
  EXPECT_THROW(spec2.validate(), ArgumentError);
  ProblemSpec spec3 = heat(1, 2);
  spec3.add_a(0, 0, {1, 1}, {1, 0}, 1, 0.5);
  EXPECT_FALSE(spec3.constant_coefficients());
  EXPECT_TRUE(heat(2, 2).constant_coefficients());
}
