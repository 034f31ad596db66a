#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "parabver/extension.hpp"
#include "parabver/polynomial.hpp"
#include "parabver/spectral.hpp"
#include "parabver/symbols.hpp"
#include "parabver/weights.hpp"

namespace parabver {

/// (Au, Bu, u at t=0) for polynomial u. All components are polynomials in
/// (x_1..x_n, t): g is kept on the whole cylinder and read on the boundary
/// faces, h does not depend on t.
struct LambdaImage {
  std::vector<MultiPoly> f;
  std::vector<MultiPoly> g;
  std::vector<MultiPoly> h;

  LambdaImage& operator+=(const LambdaImage& other);
  LambdaImage& operator*=(cplx c);
  bool operator==(const LambdaImage& other) const = default;
};

/// Exact for polynomial u (N components over (x, t)).
LambdaImage apply_lambda(const ProblemSpec& spec, std::span<const MultiPoly> u);

/// The same image for band-limited u on a periodic (x, t) box; constant
/// coefficients only. g holds one field per (component, face) on the face x
/// time box, component-major; h is a field on the x box.
struct SpectralImage {
  std::vector<SpectralField> f;
  std::vector<SpectralField> g;
  std::vector<SpectralField> h;
  std::vector<int> boundary_orders;  ///< l_j of each g entry
};

SpectralImage apply_lambda(const ProblemSpec& spec, std::span<const SpectralField> u);

/// Symbol of row j, column k of A at (xi, eta) acting on exp(i(xi x + eta t)):
/// i eta delta_jk + sum_alpha a^alpha_jk (-xi)^alpha. Constant coefficients only.
cplx interior_symbol(const ProblemSpec& spec, int j, int k, std::span<const double> xi, double eta);
cplx boundary_symbol(const ProblemSpec& spec, int j, int k, std::span<const double> xi);

/// sqrt( sum ||f_j||^2_{s-2} + sum ||g_j||^2_{s-l_j-1/2} + sum ||h_j||^2_{iso, s-1} ).
double q_norm(const SpectralImage& image, const RegularityIndex& idx);

struct SurrogateOptions {
  ExtensionOptions extension;
};

/// Polynomial image measured on its reflection extension.
double q_norm(const ProblemSpec& spec, const LambdaImage& image, const RegularityIndex& idx,
              const SurrogateOptions& options = {});

/// sqrt(sum_k ||u_k||^2_{s,s/2;phi}).
double solution_norm(std::span<const SpectralField> u, const RegularityIndex& idx);
double solution_norm(const ProblemSpec& spec, std::span<const MultiPoly> u, const RegularityIndex& idx,
                     const SurrogateOptions& options = {});

struct SweepOptions {
  std::vector<int> cutoffs{8, 16, 32};
  int samples = 30;
  std::uint64_t seed = 20210329;
  std::vector<double> periods;  ///< (x_1..x_n, t); empty means 2L_1, L_2.., 2 tau
  double spread_bound = 20.0;
  int threads = 1;
  double invariance_tol = 1e-10;
};

struct SweepRow {
  int cutoff = 0;
  std::vector<double> ratios;  ///< in draw order
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  double fixed_ratio = 0.0;  ///< ratio of the fixed low-mode input at this cutoff
};

struct SweepTable {
  double s = 0.0;
  std::vector<SweepRow> rows;
  double spread = 0.0;  ///< max over all draws / min over all draws
  double spread_bound = 0.0;
  double fixed_invariance = 0.0;  ///< max relative deviation of fixed_ratio across cutoffs
  double invariance_tol = 0.0;
  int redraws = 0;
  std::vector<double> periods;
  bool spread_ok() const { return spread < spread_bound; }
  bool invariance_ok() const { return fixed_invariance <= invariance_tol; }
  bool pass() const { return spread_ok() && invariance_ok(); }
};

/// Random band-limited draw with modes |k_d| <= cutoff on a (2 cutoff + 2)-point
/// grid per axis; coefficients are complex Gaussians scaled by r^{-(s+1)}.
/// The stream depends only on (seed, cutoff, draw, component).
std::vector<SpectralField> random_draw(const ProblemSpec& spec, double s, int cutoff, std::span<const double> periods,
                                       std::uint64_t seed, int draw);

/// Deterministic input supported on |k_d| <= 2, placed on the grid of `cutoff`.
std::vector<SpectralField> fixed_low_mode_input(const ProblemSpec& spec, int cutoff, std::span<const double> periods);

/// ||Lambda u||_Q / ||u||.
double isomorphism_ratio(const ProblemSpec& spec, std::span<const SpectralField> u, const RegularityIndex& idx);

std::vector<double> default_periods(const ProblemSpec& spec);

/// Ratio table across cutoffs. Requires constant coefficients, s > 2 and s not in E.
SweepTable isomorphism_sweep(const ProblemSpec& spec, const RegularityIndex& idx, const SweepOptions& options);

}  // namespace parabver
