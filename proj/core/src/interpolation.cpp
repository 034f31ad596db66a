#include "parabver/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parabver/error.hpp"

namespace parabver {

InterpolationParam::InterpolationParam(double s0_, double s_, double s1_, SlowlyVaryingFn phi_)
    : s0(s0_), s(s_), s1(s1_), phi(std::move(phi_)) {
  if (!(s0 < s && s < s1)) {
    std::ostringstream os;
    os << "interpolation parameter needs s0 < s < s1, got (" << s0 << ", " << s << ", " << s1 << ")";
    throw ArgumentError(os.str());
  }
}

double psi_eval(const InterpolationParam& param, double r) {
  if (!(r > 0.0)) throw DomainError("psi is defined for r > 0");
  if (r < 1.0) return param.phi(1.0);
  const double width = param.s1 - param.s0;
  return std::pow(r, (param.s - param.s0) / width) * param.phi(std::pow(r, 1.0 / width));
}

std::vector<double> interpolate_diag(std::span<const double> w0, std::span<const double> w1,
                                     const InterpolationParam& param) {
  if (w0.size() != w1.size()) throw ArgumentError("weight sequences differ in length");
  std::vector<double> out(w0.size());
  for (std::size_t i = 0; i < w0.size(); ++i) {
    if (!(w0[i] > 0.0) || !(w1[i] >= w0[i])) {
      std::ostringstream os;
      os << "weights are not a regular pair at index " << i << ": w0=" << w0[i] << " w1=" << w1[i];
      throw ArgumentError(os.str());
    }
    out[i] = w0[i] * psi_eval(param, w1[i] / w0[i]);
  }
  return out;
}

double verify_weight_identity(const InterpolationParam& param, std::span<const double> r_grid) {
  double worst = 0.0;
  for (double r : r_grid) {
    // Both sides are compared in log form so large exponents do not overflow.
    const double lhs = param.s0 * std::log(r) + std::log(psi_eval(param, std::pow(r, param.s1 - param.s0)));
    const double rhs = param.s * std::log(r) + std::log(param.phi(r));
    worst = std::max(worst, std::abs(std::expm1(lhs - rhs)));
  }
  return worst;
}

MidpointReport midpoint_space_weights(double s, std::span<const double> eps, const SlowlyVaryingFn& phi,
                                      std::span<const double> r_grid) {
  if (eps.empty()) throw ArgumentError("need at least one eps");
  MidpointReport report;
  report.s = s;
  report.eps.assign(eps.begin(), eps.end());
  std::vector<std::vector<double>> weights;
  for (double e : eps) {
    if (!(e > 0.0 && e < 0.5)) throw ArgumentError("eps must lie in (0, 1/2)");
    if (!(s - e > 2.0)) throw ArgumentError("need s - eps > 2");
    // sqrt parameter on the pair (s-e, s+e) with unit phi, applied to phi-weighted spaces.
    const InterpolationParam mid(0.0, 0.5, 1.0);
    std::vector<double> w;
    for (double r : r_grid) {
      const double w_lo = std::pow(r, s - e) * phi(r);
      const double w_hi = std::pow(r, s + e) * phi(r);
      const double w_mid = w_lo * psi_eval(mid, w_hi / w_lo);
      const double target = std::pow(r, s) * phi(r);
      report.max_deviation = std::max(report.max_deviation, std::abs(w_mid - target) / target);
      w.push_back(w_mid);
    }
    weights.push_back(std::move(w));
  }
  for (std::size_t k = 1; k < weights.size(); ++k)
    for (std::size_t i = 0; i < weights[k].size(); ++i)
      report.eps_spread = std::max(report.eps_spread, std::abs(weights[k][i] - weights[0][i]) / weights[0][i]);
  return report;
}

}  // namespace parabver
