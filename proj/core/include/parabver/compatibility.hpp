#pragma once

#include <span>
#include <vector>

#include "parabver/polynomial.hpp"
#include "parabver/symbols.hpp"

namespace parabver {

/// {r in Z : 0 <= r < (s - l - 3/2)/2}, for s > 2.
std::vector<int> trace_orders(double s, int l);

/// {2k + l_j + 3/2 : k >= 0, j} intersected with (2, s_max], sorted and deduplicated.
std::vector<double> exceptional_set(std::span<const int> boundary_orders, double s_max);
std::vector<double> exceptional_set(const ProblemSpec& spec, double s_max);
bool in_exceptional_set(std::span<const int> boundary_orders, double s, double tol = 1e-12);

/// Initial time-derivative traces v_{j,r}(x) = (d_t^r u_j)(x, 0) expressed through
/// f and h. Polynomials are over (x_1..x_n, t) and do not depend on t.
class TraceFamily {
 public:
  TraceFamily() = default;
  explicit TraceFamily(std::vector<std::vector<MultiPoly>> traces) : v_(std::move(traces)) {}

  int components() const noexcept { return static_cast<int>(v_.size()); }
  int max_order() const noexcept { return v_.empty() ? -1 : static_cast<int>(v_.front().size()) - 1; }
  /// ArgumentError if the order was not generated.
  const MultiPoly& at(int j, int r) const;

 private:
  std::vector<std::vector<MultiPoly>> v_;
};

/// v_{j,0} = h_j and, for r >= 1,
///   v_{j,r} = -sum_k sum_{|alpha|<=2} sum_{q<r} C(r-1,q) (d_t^{r-1-q} a^alpha_{jk})(x,0) D^alpha v_{k,q}
///             + (d_t^{r-1} f_j)(x,0).
/// f are polynomials in (x,t); h may be given over (x) or over (x,t) without t-dependence.
TraceFamily build_traces(const ProblemSpec& spec, std::span<const MultiPoly> f, std::span<const MultiPoly> h,
                         int r_max);

/// B_{j,r} = sum_k sum_{|alpha|<=l_j} sum_{q<=r} C(r,q) (d_t^{r-q} b^alpha_{jk})(x,0) D^alpha v_{k,q}.
MultiPoly build_boundary_expr(const ProblemSpec& spec, const TraceFamily& traces, int j, int r);

/// L2 norm over the boundary faces of the domain (Gauss-Legendre in the tangential
/// directions, exact for polynomials); t is fixed to 0.
double boundary_l2_norm(const Domain& domain, const MultiPoly& poly);

struct CompatibilityCondition {
  int j = 0;
  int r = 0;
  double residual = 0.0;
  bool satisfied = false;
  MultiPoly defect;  ///< B_{j,r}(v...) - d_t^r g_j(., 0), to be read on the boundary
};

struct CompatibilitySystem {
  double s = 0.0;
  std::vector<int> boundary_orders;
  std::vector<int> counts;  ///< number of conditions per component
  std::vector<CompatibilityCondition> conditions;
  double tol = 0.0;
  bool compatible() const;
  double max_residual() const;
};

struct CompatibilityOptions {
  double tol = 1e-10;
};

/// Evaluates every condition d_t^r g_j = B_{j,r}(v) on the boundary for the
/// orders allowed at regularity s. Throws ExceptionalRegularityError for s in E.
CompatibilitySystem compatibility_residuals(const ProblemSpec& spec, std::span<const MultiPoly> f,
                                            std::span<const MultiPoly> g, std::span<const MultiPoly> h, double s,
                                            const CompatibilityOptions& options = {});

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int count, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace parabver
