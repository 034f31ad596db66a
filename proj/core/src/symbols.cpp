#include "parabver/symbols.hpp"

#include <cmath>
#include <sstream>

#include "parabver/error.hpp"

namespace parabver {

namespace {

void enumerate(int n, int order, int pos, MultiIndex& current, std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    current[static_cast<std::size_t>(pos)] = order;
    out.push_back(current);
    return;
  }
  for (int e = order; e >= 0; --e) {
    current[static_cast<std::size_t>(pos)] = e;
    enumerate(n, order - e, pos + 1, current, out);
  }
}

int order_of(const MultiIndex& alpha) {
  int s = 0;
  for (int e : alpha) s += e;
  return s;
}

std::vector<double> point_with_time(std::span<const double> x, double t) {
  std::vector<double> pt(x.begin(), x.end());
  pt.push_back(t);
  return pt;
}

void check_point(const ProblemSpec& spec, std::span<const double> x, double t) {
  if (static_cast<int>(x.size()) != spec.n) throw ArgumentError("point has wrong space dimension");
  if (!spec.domain.contains(x)) throw ArgumentError("point lies outside the domain closure");
  if (!(t >= -1e-12 && t <= spec.tau + 1e-12)) throw ArgumentError("time lies outside [0, tau]");
}

void check_direction(const ProblemSpec& spec, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != spec.n) throw ArgumentError("covector has wrong dimension");
}

// prod_i (xi_i + zeta nu_i)^{alpha_i}
Polynomial shifted_power(std::span<const double> xi, std::span<const double> nu, const MultiIndex& alpha) {
  Polynomial result = Polynomial::constant(1.0);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const Polynomial factor{xi[i], nu[i]};
    for (int e = 0; e < alpha[i]; ++e) result *= factor;
  }
  return result;
}

double monomial_value(std::span<const double> xi, const MultiIndex& alpha) {
  double v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) v *= std::pow(xi[i], alpha[i]);
  return v;
}

void check_normal_and_tangent(std::span<const double> xi, std::span<const double> nu) {
  if (xi.size() != nu.size()) throw ArgumentError("normal and covector have different dimensions");
  double norm2 = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    norm2 += nu[i] * nu[i];
    dot += nu[i] * xi[i];
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) throw ArgumentError("normal vector is not of unit length");
  if (std::abs(dot) > 1e-12) throw ArgumentError("covector is not tangent to the boundary");
}

}  // namespace

std::vector<MultiIndex> multi_indices(int n, int order) {
  if (n < 1 || order < 0) throw ArgumentError("multi_indices needs n >= 1 and order >= 0");
  std::vector<MultiIndex> out;
  MultiIndex current(static_cast<std::size_t>(n), 0);
  enumerate(n, order, 0, current, out);
  return out;
}

// -------------------------------------------------------------------- Domain

std::vector<Domain::Face> Domain::boundary_faces() const {
  std::vector<Face> faces;
  if (kind == Kind::periodic || lengths.empty()) return faces;
  std::vector<double> inward(lengths.size(), 0.0);
  inward[0] = 1.0;
  faces.push_back({0, 0.0, inward});
  if (kind == Kind::slab) {
    inward[0] = -1.0;
    faces.push_back({0, lengths[0], inward});
  }
  return faces;
}

bool Domain::contains(std::span<const double> x, double slack) const {
  if (x.size() != lengths.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < -slack) return false;
    const bool unbounded = kind == Kind::halfspace && i == 0;
    if (!unbounded && x[i] > lengths[i] + slack) return false;
  }
  return true;
}

int Domain::face_of(std::span<const double> x, double slack) const {
  if (!contains(x, slack)) return -1;
  const auto faces = boundary_faces();
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (std::abs(x[static_cast<std::size_t>(faces[f].axis)] - faces[f].position) <= slack) return static_cast<int>(f);
  return -1;
}

std::string Domain::kind_name(Kind kind) {
  switch (kind) {
    case Kind::periodic:
      return "periodic";
    case Kind::slab:
      return "slab";
    case Kind::halfspace:
      return "halfspace";
  }
  return "unknown";
}

// --------------------------------------------------------------- ProblemSpec

void ProblemSpec::validate() const {
  std::ostringstream err;
  if (N < 1) throw ArgumentError("system size N must be >= 1");
  if (n < 1) throw ArgumentError("space dimension n must be >= 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ArgumentError("time horizon tau must be positive");
  if (static_cast<int>(l.size()) != N) throw ArgumentError("need one boundary order per component");
  for (int lj : l)
    if (lj != 0 && lj != 1) throw ArgumentError("boundary orders must be 0 or 1");
  if (domain.dimension() != n) throw ArgumentError("domain dimension does not match n");
  for (double L : domain.lengths)
    if (!(L > 0.0) || !std::isfinite(L)) throw ArgumentError("domain lengths must be positive");

  auto check_key = [&](const CoefficientKey& key, const MultiPoly& poly, int max_order, const char* what) {
    if (key.j < 0 || key.j >= N || key.k < 0 || key.k >= N) throw ArgumentError(std::string(what) + ": index out of range");
    if (static_cast<int>(key.alpha.size()) != n) throw ArgumentError(std::string(what) + ": multi-index length != n");
    for (int e : key.alpha)
      if (e < 0) throw ArgumentError(std::string(what) + ": negative multi-index entry");
    if (order_of(key.alpha) > max_order) {
      std::ostringstream os;
      os << what << "(" << key.j + 1 << "," << key.k + 1 << "): |alpha| = " << order_of(key.alpha)
         << " exceeds " << max_order;
      throw ArgumentError(os.str());
    }
    if (poly.num_vars() != n + 1) throw ArgumentError(std::string(what) + ": coefficient polynomial has wrong arity");
  };
  for (const auto& [key, poly] : a) check_key(key, poly, 2, "a");
  for (const auto& [key, poly] : b) check_key(key, poly, l[static_cast<std::size_t>(key.j)], "b");
}

namespace {

void add_coefficient(std::map<CoefficientKey, MultiPoly>& table, int n, int j, int k, const MultiIndex& alpha,
                     const std::vector<int>& xexp, int texp, cplx c) {
  if (static_cast<int>(xexp.size()) != n) throw ArgumentError("space exponent vector must have length n");
  std::vector<int> exps = xexp;
  exps.push_back(texp);
  auto [it, inserted] = table.try_emplace(CoefficientKey{j, k, alpha}, MultiPoly(n + 1));
  it->second.add_term(exps, c);
}

}  // namespace

void ProblemSpec::add_a(int j, int k, const MultiIndex& alpha, const std::vector<int>& xexp, int texp, cplx c) {
  add_coefficient(a, n, j, k, alpha, xexp, texp, c);
}

void ProblemSpec::add_b(int j, int k, const MultiIndex& alpha, const std::vector<int>& xexp, int texp, cplx c) {
  add_coefficient(b, n, j, k, alpha, xexp, texp, c);
}

bool ProblemSpec::constant_coefficients() const {
  for (const auto& [key, poly] : a)
    if (!poly.is_constant()) return false;
  for (const auto& [key, poly] : b)
    if (!poly.is_constant()) return false;
  return true;
}

// ------------------------------------------------------------------- symbols

Eigen::MatrixXcd second_order_part(const ProblemSpec& spec, std::span<const double> x, double t,
                                   std::span<const double> xi) {
  check_point(spec, x, t);
  check_direction(spec, xi);
  const auto pt = point_with_time(x, t);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(spec.N, spec.N);
  for (const auto& [key, poly] : spec.a) {
    if (order_of(key.alpha) != 2) continue;
    m(key.j, key.k) += poly.evaluate(pt) * monomial_value(xi, key.alpha);
  }
  return m;
}

Eigen::MatrixXcd principal_symbol_A(const ProblemSpec& spec, std::span<const double> x, double t,
                                    std::span<const double> xi, cplx p) {
  Eigen::MatrixXcd m = second_order_part(spec, x, t, xi);
  m.diagonal().array() += p;
  return m;
}

Eigen::MatrixXcd principal_symbol_B(const ProblemSpec& spec, std::span<const double> x, double t,
                                    std::span<const double> xi) {
  check_point(spec, x, t);
  check_direction(spec, xi);
  if (spec.domain.face_of(x) < 0) throw ArgumentError("point is not on the boundary");
  const auto pt = point_with_time(x, t);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(spec.N, spec.N);
  for (const auto& [key, poly] : spec.b) {
    if (order_of(key.alpha) != spec.l[static_cast<std::size_t>(key.j)]) continue;
    m(key.j, key.k) += poly.evaluate(pt) * monomial_value(xi, key.alpha);
  }
  return m;
}

Polynomial det_poly_in_p(const ProblemSpec& spec, std::span<const double> x, double t,
                         std::span<const double> xi) {
  const Eigen::MatrixXcd m = second_order_part(spec, x, t, xi);
  PolyMatrix symbol(spec.N, spec.N);
  for (int j = 0; j < spec.N; ++j)
    for (int k = 0; k < spec.N; ++k) symbol(j, k) = j == k ? Polynomial{m(j, k), 1.0} : Polynomial::constant(m(j, k));
  Polynomial det = symbol.determinant();
  if (det.degree() != spec.N || std::abs(det.leading() - 1.0) > 1e-12)
    throw InvariantViolation("det A0 is not a monic polynomial of degree N in p");
  return det;
}

PolyMatrix symbol_in_zeta(const ProblemSpec& spec, std::span<const double> x, double t,
                          std::span<const double> xi_tangent, std::span<const double> nu, cplx p) {
  check_point(spec, x, t);
  check_direction(spec, xi_tangent);
  check_normal_and_tangent(xi_tangent, nu);
  const auto pt = point_with_time(x, t);
  PolyMatrix m(spec.N, spec.N);
  for (int j = 0; j < spec.N; ++j) m(j, j) = Polynomial::constant(p);
  for (const auto& [key, poly] : spec.a) {
    if (order_of(key.alpha) != 2) continue;
    m(key.j, key.k) += shifted_power(xi_tangent, nu, key.alpha) * poly.evaluate(pt);
  }
  return m;
}

PolyMatrix boundary_symbol_in_zeta(const ProblemSpec& spec, std::span<const double> x, double t,
                                   std::span<const double> xi_tangent, std::span<const double> nu) {
  check_point(spec, x, t);
  check_direction(spec, xi_tangent);
  check_normal_and_tangent(xi_tangent, nu);
  const auto pt = point_with_time(x, t);
  PolyMatrix m(spec.N, spec.N);
  for (const auto& [key, poly] : spec.b) {
    if (order_of(key.alpha) != spec.l[static_cast<std::size_t>(key.j)]) continue;
    m(key.j, key.k) += shifted_power(xi_tangent, nu, key.alpha) * poly.evaluate(pt);
  }
  return m;
}

ZetaDeterminant det_poly_in_zeta(const ProblemSpec& spec, std::span<const double> x, double t,
                                 std::span<const double> xi_tangent, std::span<const double> nu, cplx p) {
  ZetaDeterminant out;
  out.poly = symbol_in_zeta(spec, x, t, xi_tangent, nu, p).determinant();
  out.effective_degree = out.poly.effective_degree(1e-12);
  return out;
}

PolyMatrix adjugate_symbol(const ProblemSpec& spec, std::span<const double> x, double t,
                           std::span<const double> xi_tangent, std::span<const double> nu, cplx p) {
  return symbol_in_zeta(spec, x, t, xi_tangent, nu, p).adjugate();
}

}  // namespace parabver
