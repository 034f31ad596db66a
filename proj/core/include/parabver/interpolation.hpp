#pragma once

#include <span>
#include <vector>

#include "parabver/weights.hpp"

namespace parabver {

/// Parameter of interpolation between the diagonal pair (r^{s0}, r^{s1}) that
/// lands on the weight r^s phi(r).
struct InterpolationParam {
  double s0 = 0.0;
  double s = 0.0;
  double s1 = 0.0;
  SlowlyVaryingFn phi;

  InterpolationParam() = default;
  /// ArgumentError unless s0 < s < s1.
  InterpolationParam(double s0_, double s_, double s1_, SlowlyVaryingFn phi_ = {});
};

/// psi(r) = r^{(s-s0)/(s1-s0)} phi(r^{1/(s1-s0)}) for r >= 1, phi(1) for 0 < r < 1.
double psi_eval(const InterpolationParam& param, double r);

/// w[i] = w0[i] psi(w1[i]/w0[i]); requires w1[i] >= w0[i] > 0.
std::vector<double> interpolate_diag(std::span<const double> w0, std::span<const double> w1,
                                     const InterpolationParam& param);

/// max_r |r^{s0} psi(r^{s1-s0}) - r^s phi(r)| / (r^s phi(r)) over the grid.
double verify_weight_identity(const InterpolationParam& param, std::span<const double> r_grid);

struct MidpointReport {
  double s = 0.0;
  std::vector<double> eps;
  double max_deviation = 0.0;  ///< against r^s phi(r), relative
  double eps_spread = 0.0;     ///< between the weights of different eps, relative
  bool pass(double tol) const { return max_deviation <= tol && eps_spread <= tol; }
};

/// Weight-level check that the midpoint parameter applied to (H^{s-eps;phi}, H^{s+eps;phi})
/// reproduces r^s phi(r) for every eps. Requires eps in (0, 1/2) and s - eps > 2.
MidpointReport midpoint_space_weights(double s, std::span<const double> eps, const SlowlyVaryingFn& phi,
                                      std::span<const double> r_grid);

}  // namespace parabver
