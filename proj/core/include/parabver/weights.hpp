#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace parabver {

/// A slowly varying function parameter phi: [1, inf) -> (0, inf).
///
/// Three families are supported:
///  - constant: phi(r) = c (c = 1 by default);
///  - log-multiscale: phi(r) = prod_k (log^{(k)} r)^{theta_k} for r >= r0 and
///    phi(r) = phi(r0) below the splice radius r0, where log^{(k)} is the k-fold
///    iterated natural logarithm;
///  - tabulated: (r, value) pairs interpolated linearly in (log r, log value).
///
/// Arbitrary measurable parameters are not representable.
class SlowlyVaryingFn {
 public:
  enum class Kind { constant, log_multiscale, tabulated };

  /// phi == 1.
  SlowlyVaryingFn();

  static SlowlyVaryingFn constant(double value = 1.0);
  /// `splice` defaults to e^2 for one or two logarithm levels; deeper towers need
  /// a larger radius, and the default becomes exp^{(k-1)}(e).
  static SlowlyVaryingFn log_multiscale(std::vector<double> theta, double splice = 0.0);
  static SlowlyVaryingFn tabulated(std::vector<std::pair<double, double>> table);

  Kind kind() const noexcept { return kind_; }
  double constant_value() const noexcept { return constant_; }
  const std::vector<double>& theta() const noexcept { return theta_; }
  double splice_radius() const noexcept { return splice_; }
  const std::vector<std::pair<double, double>>& table() const noexcept { return table_; }

  /// phi(r); DomainError for r < 1, RangeError for a tabulated query outside the table.
  double operator()(double r) const;

  bool is_identically_one() const noexcept { return kind_ == Kind::constant && constant_ == 1.0; }
  std::string describe() const;

 private:
  double eval_multiscale(double r) const;
  double eval_table(double r) const;

  Kind kind_ = Kind::constant;
  double constant_ = 1.0;
  std::vector<double> theta_;
  double splice_ = 0.0;
  std::vector<std::pair<double, double>> table_;
};

/// The pair (s, phi) indexing H^{s,s/2;phi} and H^{s;phi}.
struct RegularityIndex {
  double s = 0.0;
  SlowlyVaryingFn phi;

  RegularityIndex() = default;
  RegularityIndex(double s_, SlowlyVaryingFn phi_ = {});
  RegularityIndex with_order(double new_s) const { return RegularityIndex(new_s, phi); }
};

double eval_phi(const SlowlyVaryingFn& phi, double r);

struct KaramataReport {
  bool pass = false;
  double worst_deviation = 0.0;
  double worst_lambda = 0.0;
  double probe_radius = 0.0;
  double tolerance = 0.0;
  std::vector<double> lambdas;
  std::vector<double> deviations;  ///< |phi(lambda r)/phi(r) - 1| per lambda
};

/// Finite-probe check of phi(lambda r)/phi(r) -> 1 at a single radius.
KaramataReport karamata_check(const SlowlyVaryingFn& phi, std::span<const double> lambdas, double r_probe,
                              double tol);

struct BoundednessReport {
  bool pass = false;
  double max_phi = 0.0;
  double max_inv_phi = 0.0;
  double upper = 0.0;
  int grid_size = 0;
};

/// Samples [1, d] on a log-spaced grid and reports sup phi and sup 1/phi.
/// Throws InvariantViolation if a sampled value is not strictly positive.
BoundednessReport boundedness_check(const SlowlyVaryingFn& phi, double d, int grid_size);

/// Log-spaced grid of `count` points on [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace parabver
