#pragma once

#include <span>
#include <vector>

#include "parabver/polynomial.hpp"
#include "parabver/spectral.hpp"

namespace parabver {

/// Hestenes-type reflection u(x) -> sum_k c_k u(-lambda_k x) across an endpoint,
/// with lambda_k = 1/k and sum_k c_k (-lambda_k)^m = 1 for m < order, so the
/// extension is C^{order-1} across the endpoint.
struct ReflectionRule {
  std::vector<double> lambda;
  std::vector<double> c;
};

ReflectionRule reflection_rule(int order);

/// C-infinity cutoff equal to 1 on [-L/8, 9L/8] and vanishing with all
/// derivatives at -L/2 and 3L/2.
double extension_cutoff(double x, double length);

struct ExtensionOptions {
  int order = 4;
  int grid = 32;  ///< samples per axis on the extended period 2L
};

/// Extends a polynomial given on prod_d [0, L_d] to the periodic box of periods
/// 2 L_d (sampled on [-L_d/2, 3L_d/2)) by reflecting every axis, multiplying by
/// the cutoff, and transforming. The last variable is the time axis when
/// `time_axis` is set.
SpectralField extend_polynomial(const MultiPoly& poly, std::span<const double> lengths, bool time_axis,
                                const ExtensionOptions& options = {});

}  // namespace parabver
