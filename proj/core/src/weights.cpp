#include "parabver/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "parabver/error.hpp"

namespace parabver {

namespace {

// k-fold iterated logarithm; returns NaN once an intermediate value is not positive.
double iterated_log(double r, int levels) {
  double v = r;
  for (int i = 0; i < levels; ++i) {
    if (!(v > 0.0)) return std::nan("");
    v = std::log(v);
  }
  return v;
}

double default_splice(std::size_t levels) {
  if (levels <= 2) return std::exp(2.0);
  double v = std::numbers::e;
  for (std::size_t i = 1; i < levels; ++i) v = std::exp(v);
  return v;
}

}  // namespace

SlowlyVaryingFn::SlowlyVaryingFn() = default;

SlowlyVaryingFn SlowlyVaryingFn::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ArgumentError("constant phi must be positive and finite");
  SlowlyVaryingFn f;
  f.kind_ = Kind::constant;
  f.constant_ = value;
  return f;
}

SlowlyVaryingFn SlowlyVaryingFn::log_multiscale(std::vector<double> theta, double splice) {
  if (theta.empty()) throw ArgumentError("log-multiscale phi needs at least one exponent");
  for (double t : theta)
    if (!std::isfinite(t)) throw ArgumentError("log-multiscale exponents must be finite");
  SlowlyVaryingFn f;
  f.kind_ = Kind::log_multiscale;
  f.splice_ = splice > 0.0 ? splice : default_splice(theta.size());
  f.theta_ = std::move(theta);
  if (f.splice_ < std::numbers::e) throw ArgumentError("splice radius must be at least e");
  // Every iterated logarithm must be strictly positive from the splice radius on.
  const double inner = iterated_log(f.splice_, static_cast<int>(f.theta_.size()));
  if (!(inner > 0.0))
    throw ArgumentError("splice radius too small for " + std::to_string(f.theta_.size()) +
                        " logarithm levels");
  const double at_splice = f.eval_multiscale(f.splice_);
  if (!(at_splice > 0.0) || !std::isfinite(at_splice))
    throw ArgumentError("log-multiscale phi is not positive and finite at the splice radius");
  return f;
}

SlowlyVaryingFn SlowlyVaryingFn::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.size() < 2) throw ArgumentError("tabulated phi needs at least two points");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [r, v] = table[i];
    if (!(r >= 1.0) || !std::isfinite(r)) throw ArgumentError("tabulated radii must be finite and >= 1");
    if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError("tabulated values must be positive and finite");
    if (i > 0 && !(r > table[i - 1].first)) throw ArgumentError("tabulated radii must be strictly increasing");
  }
  SlowlyVaryingFn f;
  f.kind_ = Kind::tabulated;
  f.table_ = std::move(table);
  return f;
}

double SlowlyVaryingFn::eval_multiscale(double r) const {
  double value = 1.0;
  double level = r;
  for (double theta : theta_) {
    level = std::log(level);
    if (theta != 0.0) value *= std::pow(level, theta);
  }
  return value;
}

double SlowlyVaryingFn::eval_table(double r) const {
  const double lo = table_.front().first;
  const double hi = table_.back().first;
  if (r < lo || r > hi) {
    std::ostringstream os;
    os << "phi queried at r=" << r << " outside tabulated range [" << lo << ", " << hi << "]";
    throw RangeError(os.str());
  }
  auto it = std::lower_bound(table_.begin(), table_.end(), r,
                             [](const auto& entry, double x) { return entry.first < x; });
  if (it->first == r) return it->second;
  const auto& [r1, v1] = *it;
  const auto& [r0, v0] = *(it - 1);
  const double w = (std::log(r) - std::log(r0)) / (std::log(r1) - std::log(r0));
  return std::exp((1.0 - w) * std::log(v0) + w * std::log(v1));
}

double SlowlyVaryingFn::operator()(double r) const {
  if (!(r >= 1.0)) {
    std::ostringstream os;
    os << "phi is defined on [1, inf); got r=" << r;
    throw DomainError(os.str());
  }
  switch (kind_) {
    case Kind::constant:
      return constant_;
    case Kind::log_multiscale:
      return eval_multiscale(std::max(r, splice_));
    case Kind::tabulated:
      return eval_table(r);
  }
  return constant_;
}

std::string SlowlyVaryingFn::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::constant:
      os << "constant(" << constant_ << ")";
      break;
    case Kind::log_multiscale:
      os << "log-multiscale(theta=";
      for (std::size_t i = 0; i < theta_.size(); ++i) os << (i ? "," : "") << theta_[i];
      os << "; splice=" << splice_ << ")";
      break;
    case Kind::tabulated:
      os << "tabulated(" << table_.size() << " points on [" << table_.front().first << ", "
         << table_.back().first << "])";
      break;
  }
  return os.str();
}

RegularityIndex::RegularityIndex(double s_, SlowlyVaryingFn phi_) : s(s_), phi(std::move(phi_)) {
  if (!std::isfinite(s)) throw ArgumentError("regularity order must be finite");
}

double eval_phi(const SlowlyVaryingFn& phi, double r) { return phi(r); }

KaramataReport karamata_check(const SlowlyVaryingFn& phi, std::span<const double> lambdas, double r_probe,
                              double tol) {
  if (!(r_probe >= 1.0)) throw DomainError("probe radius must be >= 1");
  KaramataReport report;
  report.probe_radius = r_probe;
  report.tolerance = tol;
  const double base = phi(r_probe);
  for (double lambda : lambdas) {
    if (!(lambda > 0.0)) throw ArgumentError("lambda must be positive");
    if (!(lambda * r_probe >= 1.0)) throw DomainError("lambda * r_probe must be >= 1");
    const double dev = std::abs(phi(lambda * r_probe) / base - 1.0);
    report.lambdas.push_back(lambda);
    report.deviations.push_back(dev);
    if (dev >= report.worst_deviation) {
      report.worst_deviation = dev;
      report.worst_lambda = lambda;
    }
  }
  report.pass = report.worst_deviation <= tol;
  return report;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo)) throw ArgumentError("log grid needs 0 < lo <= hi");
  if (count < 1) throw ArgumentError("log grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

BoundednessReport boundedness_check(const SlowlyVaryingFn& phi, double d, int grid_size) {
  if (!(d > 1.0)) throw ArgumentError("boundedness check needs d > 1");
  if (grid_size < 2) throw ArgumentError("boundedness check needs at least two grid points");
  BoundednessReport report;
  report.upper = d;
  report.grid_size = grid_size;
  for (double r : log_grid(1.0, d, grid_size)) {
    const double v = phi(r);
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << "phi(" << r << ") = " << v << " is not strictly positive";
      throw InvariantViolation(os.str());
    }
    report.max_phi = std::max(report.max_phi, v);
    report.max_inv_phi = std::max(report.max_inv_phi, 1.0 / v);
  }
  report.pass = std::isfinite(report.max_phi) && std::isfinite(report.max_inv_phi);
  return report;
}

}  // namespace parabver
