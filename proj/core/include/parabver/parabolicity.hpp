#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "parabver/polynomial.hpp"
#include "parabver/symbols.hpp"

namespace parabver {

struct InteriorSample {
  std::vector<double> x;
  double t = 0.0;
  std::vector<double> xi;
};

struct BoundarySample {
  std::vector<double> x;
  double t = 0.0;
  std::vector<double> xi;  ///< tangent to the boundary at x
  std::vector<double> nu;  ///< inward unit normal
  cplx p;
};

/// Points (x, t, xi) with x in the closure of the domain, t in [0, tau] and |xi| = 1.
std::vector<InteriorSample> interior_grid(const ProblemSpec& spec, int count, std::uint64_t seed);

/// Points on the compact slice |xi|^2 + |p| = 1 with Re p >= -delta1 |xi|^2 and
/// xi tangent to a boundary face. Includes the corners of the slice.
std::vector<BoundarySample> boundary_grid(const ProblemSpec& spec, double delta1, int count,
                                          std::uint64_t seed);

struct RootSplit {
  std::vector<cplx> zeta_plus;   ///< Im > 0
  std::vector<cplx> zeta_minus;  ///< Im < 0
  int m = 0;
};

/// Companion-matrix roots split by the sign of the imaginary part. NumericalError
/// if a root lies within tol of the real axis; InvariantViolation if the counts differ.
RootSplit split_roots_zeta(const Polynomial& poly, double tol);

/// Coefficients of the remainders of every entry of `rows` modulo `modulus`,
/// laid out as an N x (cols * m) matrix, m = deg(modulus). Row j is linearly
/// independent of the others modulo `modulus` iff this matrix has full row rank.
Eigen::MatrixXcd remainder_matrix(const PolyMatrix& rows, const Polynomial& modulus);

struct ConditionIResult {
  bool pass = false;
  double delta_estimate = 0.0;  ///< -max Re p / |xi|^2 over samples and roots
  InteriorSample worst;
  std::size_t samples = 0;
};

/// Roots of det(p I + M) are the eigenvalues of -M, which is how they are computed here.
ConditionIResult check_condition_i(const ProblemSpec& spec, std::span<const InteriorSample> samples);

struct ConditionIIResult {
  bool pass = false;
  double min_singular_value = 0.0;
  BoundarySample worst;
  int m = 0;
  std::size_t samples = 0;
  double delta1 = 0.0;
  double tol = 0.0;
};

ConditionIIResult check_condition_ii(const ProblemSpec& spec, double delta1,
                                     std::span<const BoundarySample> samples, double tol = 1e-8);

/// The Lopatinskii-type matrix at a single boundary sample.
Eigen::MatrixXcd covering_matrix(const ProblemSpec& spec, const BoundarySample& sample, double tol,
                                 int* m_out = nullptr);

struct ParabolicityOptions {
  int interior_samples = 256;
  int boundary_samples = 256;
  std::uint64_t seed = 20210329;
  double tol = 1e-8;
  std::optional<double> delta1;  ///< defaults to delta_estimate / 2
};

struct ParabolicityReport {
  ConditionIResult condition_i;
  std::optional<ConditionIIResult> condition_ii;
  bool condition_ii_applicable = true;
  std::string condition_ii_note;  ///< why (ii) was skipped or failed with an error
  ParabolicityOptions options;
  bool pass() const;
};

ParabolicityReport check_parabolicity(const ProblemSpec& spec, const ParabolicityOptions& options = {});

}  // namespace parabver
