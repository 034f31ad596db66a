#include "parabver/extension.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "parabver/error.hpp"

namespace parabver {

ReflectionRule reflection_rule(int order) {
  if (order < 1 || order > 8) throw ArgumentError("reflection order must be in [1, 8]");
  ReflectionRule rule;
  Eigen::MatrixXd v(order, order);
  for (int k = 0; k < order; ++k) rule.lambda.push_back(1.0 / (k + 1));
  for (int m = 0; m < order; ++m)
    for (int k = 0; k < order; ++k) v(m, k) = std::pow(-rule.lambda[static_cast<std::size_t>(k)], m);
  const Eigen::VectorXd c = v.fullPivLu().solve(Eigen::VectorXd::Ones(order));
  rule.c.assign(c.data(), c.data() + order);
  return rule;
}

namespace {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace

double extension_cutoff(double x, double length) {
  const double dist = x < 0.0 ? -x : (x > length ? x - length : 0.0);
  const double inner = length / 8.0;
  const double outer = length / 2.0;
  return 1.0 - smooth_step((dist - inner) / (outer - inner));
}

SpectralField extend_polynomial(const MultiPoly& poly, std::span<const double> lengths, bool time_axis,
                                const ExtensionOptions& options) {
  const int dims = poly.num_vars();
  if (static_cast<int>(lengths.size()) != dims) throw ArgumentError("one length per polynomial variable is required");
  if (options.grid < 2 || options.grid % 2 != 0) throw ArgumentError("extension grid must be even");
  for (double l : lengths)
    if (!(l > 0.0)) throw ArgumentError("extension lengths must be positive");
  const ReflectionRule rule = reflection_rule(options.order);

  // Per axis and sample: the (argument, weight) pairs whose weighted sum gives the extension.
  struct Tap {
    double x;
    double w;
  };
  const int m = options.grid;
  std::vector<std::vector<std::vector<Tap>>> taps(static_cast<std::size_t>(dims));
  for (int d = 0; d < dims; ++d) {
    const double len = lengths[static_cast<std::size_t>(d)];
    auto& axis = taps[static_cast<std::size_t>(d)];
    axis.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const double x = -0.5 * len + 2.0 * len * i / m;
      const double chi = extension_cutoff(x, len);
      auto& list = axis[static_cast<std::size_t>(i)];
      if (chi == 0.0) continue;
      if (x >= 0.0 && x <= len) {
        list.push_back({x, chi});
      } else {
        for (std::size_t k = 0; k < rule.c.size(); ++k) {
          const double y = x < 0.0 ? -rule.lambda[k] * x : len - rule.lambda[k] * (x - len);
          list.push_back({y, chi * rule.c[k]});
        }
      }
    }
  }

  // Samples on [-L/2, 3L/2) are a shift of the canonical grid on [0, 2L); the
  // shift is undone on the coefficients below.
  std::vector<int> grid(static_cast<std::size_t>(dims), m);
  std::vector<double> periods;
  for (double l : lengths) periods.push_back(2.0 * l);
  std::vector<cplx> values(static_cast<std::size_t>(std::pow(m, dims)));
  std::vector<int> counter(static_cast<std::size_t>(dims), 0);
  std::vector<int> tap(static_cast<std::size_t>(dims), 0);
  std::vector<double> point(static_cast<std::size_t>(dims));
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    bool empty = false;
    for (int d = 0; d < dims; ++d)
      if (taps[static_cast<std::size_t>(d)][static_cast<std::size_t>(counter[static_cast<std::size_t>(d)])].empty())
        empty = true;
    cplx sum{};
    if (!empty) {
      std::fill(tap.begin(), tap.end(), 0);
      while (true) {
        double w = 1.0;
        for (int d = 0; d < dims; ++d) {
          const Tap& t = taps[static_cast<std::size_t>(d)][static_cast<std::size_t>(counter[static_cast<std::size_t>(d)])]
                             [static_cast<std::size_t>(tap[static_cast<std::size_t>(d)])];
          point[static_cast<std::size_t>(d)] = t.x;
          w *= t.w;
        }
        sum += w * poly.evaluate(point);
        int d = dims - 1;
        for (; d >= 0; --d) {
          const auto size =
              taps[static_cast<std::size_t>(d)][static_cast<std::size_t>(counter[static_cast<std::size_t>(d)])].size();
          if (++tap[static_cast<std::size_t>(d)] < static_cast<int>(size)) break;
          tap[static_cast<std::size_t>(d)] = 0;
        }
        if (d < 0) break;
      }
    }
    values[flat] = sum;
    for (int d = dims - 1; d >= 0; --d) {
      if (++counter[static_cast<std::size_t>(d)] < m) break;
      counter[static_cast<std::size_t>(d)] = 0;
    }
  }

  SpectralField field = SpectralField::from_samples(grid, periods, time_axis, values);
  // Sample j sits at x = -L/2 + j*h, so the canonical coefficients carry a
  // factor exp(i k pi/2) per axis that is removed here.
  auto coeffs = field.coeffs();
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    const auto freq = field.frequency(flat);
    double phase = 0.0;
    for (int k : freq) phase += 0.5 * M_PI * k;
    coeffs[flat] *= std::polar(1.0, phase);
  }
  return field;
}

}  // namespace parabver
