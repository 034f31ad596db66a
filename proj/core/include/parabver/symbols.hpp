#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "parabver/polynomial.hpp"

namespace parabver {

using MultiIndex = std::vector<int>;

/// All multi-indices of length n with |alpha| == order, in lexicographic order.
std::vector<MultiIndex> multi_indices(int n, int order);

/// Model domains G for the space variable.
///
///  - periodic:  the box prod [0, L_i] with every direction periodic; no boundary.
///  - slab:      x_1 in [0, L_1], remaining directions periodic; boundary faces
///               x_1 = 0 (inward normal +e_1) and x_1 = L_1 (inward normal -e_1).
///  - halfspace: x_1 >= 0 with boundary face x_1 = 0; L_i give the sampling
///               window for the remaining directions and for x_1.
struct Domain {
  enum class Kind { periodic, slab, halfspace };

  struct Face {
    int axis = 0;
    double position = 0.0;
    std::vector<double> normal;  ///< inward unit normal
  };

  Kind kind = Kind::periodic;
  std::vector<double> lengths;

  int dimension() const noexcept { return static_cast<int>(lengths.size()); }
  std::vector<Face> boundary_faces() const;
  bool contains(std::span<const double> x, double slack = 1e-12) const;
  /// The face containing x, or nullptr-equivalent (-1) if x is not on the boundary.
  int face_of(std::span<const double> x, double slack = 1e-12) const;
  static std::string kind_name(Kind kind);
};

struct CoefficientKey {
  int j = 0;  ///< equation / boundary row (0-based)
  int k = 0;  ///< unknown component (0-based)
  MultiIndex alpha;
  auto operator<=>(const CoefficientKey&) const = default;
};

/// Coefficients are polynomials in (x_1..x_n, t); D_k = i d/dx_k throughout, so
/// u_t - Laplace(u) has a^{2e_i}_{j,j} = 1 and principal symbol p + |xi|^2.
struct ProblemSpec {
  int N = 0;  ///< number of unknowns (N = 1 is accepted as a scalar reduction)
  int n = 0;  ///< space dimension (n = 1 is accepted for model checks)
  double tau = 1.0;
  std::vector<int> l;  ///< boundary orders, each 0 or 1
  std::map<CoefficientKey, MultiPoly> a;
  std::map<CoefficientKey, MultiPoly> b;
  Domain domain;

  /// Throws ArgumentError describing the first violated invariant.
  void validate() const;
  /// Adds `c * x^xexp * t^texp` to a^alpha_{j,k} (0-based j, k).
  void add_a(int j, int k, const MultiIndex& alpha, const std::vector<int>& xexp, int texp, cplx c);
  void add_b(int j, int k, const MultiIndex& alpha, const std::vector<int>& xexp, int texp, cplx c);
  /// True if no coefficient depends on x or t.
  bool constant_coefficients() const;
  int num_vars() const noexcept { return n + 1; }
};

/// A^{(0)}_{jk}(x,t,xi,p) = delta_jk p + sum_{|alpha|=2} a^alpha_jk(x,t) xi^alpha.
Eigen::MatrixXcd principal_symbol_A(const ProblemSpec& spec, std::span<const double> x, double t,
                                    std::span<const double> xi, cplx p);
/// B^{(0)}_{jk}(x,t,xi) = sum_{|alpha|=l_j} b^alpha_jk(x,t) xi^alpha, for x on the boundary.
Eigen::MatrixXcd principal_symbol_B(const ProblemSpec& spec, std::span<const double> x, double t,
                                    std::span<const double> xi);

/// The matrix sum_{|alpha|=2} a^alpha(x,t) xi^alpha, so that A^{(0)} = p I + M.
Eigen::MatrixXcd second_order_part(const ProblemSpec& spec, std::span<const double> x, double t,
                                   std::span<const double> xi);

/// det A^{(0)}(x,t,xi,.) as a monic degree-N polynomial in p.
Polynomial det_poly_in_p(const ProblemSpec& spec, std::span<const double> x, double t,
                         std::span<const double> xi);

/// Entries of A^{(0)}(x,t,xi + zeta nu, p) as polynomials in zeta.
PolyMatrix symbol_in_zeta(const ProblemSpec& spec, std::span<const double> x, double t,
                          std::span<const double> xi_tangent, std::span<const double> nu, cplx p);
/// Entries of B^{(0)}(x,t,xi + zeta nu) as polynomials in zeta.
PolyMatrix boundary_symbol_in_zeta(const ProblemSpec& spec, std::span<const double> x, double t,
                                   std::span<const double> xi_tangent, std::span<const double> nu);

struct ZetaDeterminant {
  Polynomial poly;
  int effective_degree = -1;
};

/// det A^{(0)}(x,t,xi + zeta nu, p) in zeta. nu must be a unit vector and xi
/// orthogonal to it (both to 1e-12).
ZetaDeterminant det_poly_in_zeta(const ProblemSpec& spec, std::span<const double> x, double t,
                                 std::span<const double> xi_tangent, std::span<const double> nu, cplx p);

/// Adjugate (transposed cofactor matrix) of A^{(0)}(x,t,xi + zeta nu, p).
PolyMatrix adjugate_symbol(const ProblemSpec& spec, std::span<const double> x, double t,
                           std::span<const double> xi_tangent, std::span<const double> nu, cplx p);

}  // namespace parabver
