#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace parabver {

using cplx = std::complex<double>;

/// Univariate polynomial with complex coefficients, stored in ascending order.
/// The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  Polynomial(std::initializer_list<cplx> coeffs);

  static Polynomial constant(cplx c);
  static Polynomial monomial(cplx c, int degree);
  /// prod (z - root).
  static Polynomial from_roots(std::span<const cplx> roots);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  /// Degree after discarding leading coefficients below rel_tol * max|c|.
  int effective_degree(double rel_tol) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }

  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of z^i, zero beyond the stored degree.
  cplx operator[](int i) const noexcept;
  cplx leading() const noexcept { return coeffs_.empty() ? cplx{} : coeffs_.back(); }

  cplx operator()(cplx z) const noexcept;

  Polynomial derivative() const;
  /// Copy with leading coefficients of magnitude <= abs_tol removed.
  Polynomial trimmed(double abs_tol) const;
  double max_abs_coeff() const noexcept;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(cplx c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, cplx c) { return a *= c; }
  friend Polynomial operator*(cplx c, Polynomial a) { return a *= c; }
  Polynomial operator-() const { return *this * cplx{-1.0}; }

  std::string to_string(const std::string& var = "z") const;

 private:
  void normalize();
  std::vector<cplx> coeffs_;
};

struct PolynomialDivision {
  Polynomial quotient;
  Polynomial remainder;
};

/// Long division num = q*den + r with deg r < deg den. den need not be monic.
PolynomialDivision divide(const Polynomial& num, const Polynomial& den);

/// All complex roots via eigenvalues of the companion matrix, after trimming
/// leading coefficients below rel_tol * max|c|. Throws NumericalError if the
/// eigen solver fails or the polynomial is identically zero.
std::vector<cplx> roots(const Polynomial& poly, double rel_tol = 1e-14);

/// Dense square matrix of univariate polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Polynomial& operator()(int i, int j) { return entries_[index(i, j)]; }
  const Polynomial& operator()(int i, int j) const { return entries_[index(i, j)]; }

  Eigen::MatrixXcd evaluate(cplx z) const;
  int max_degree() const;

  /// Exact cofactor expansion with memoisation over column subsets; O(2^N N) products.
  Polynomial determinant() const;
  /// Transposed cofactor matrix.
  PolyMatrix adjugate() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * cols_ + j); }
  Polynomial minor_determinant(std::span<const int> rows, std::span<const int> cols) const;

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Polynomial> entries_;
};

/// Polynomial in several real variables with complex coefficients. Terms are
/// keyed by exponent vectors and kept in lexicographic order, so iteration and
/// printing are deterministic. In problem data the variables are (x_1..x_n, t).
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  MultiPoly() = default;
  explicit MultiPoly(int num_vars);
  static MultiPoly constant(int num_vars, cplx c);
  static MultiPoly monomial(Exponents exps, cplx c);

  int num_vars() const noexcept { return num_vars_; }
  const std::map<Exponents, cplx>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  int total_degree() const noexcept;
  int degree_in(int var) const noexcept;

  void add_term(const Exponents& exps, cplx c);

  cplx evaluate(std::span<const double> point) const;
  MultiPoly derivative(int var, int order = 1) const;
  /// Fixes variable `var` to `value`; the variable remains in the signature with exponent 0.
  MultiPoly substitute(int var, double value) const;
  /// Drops variable `var` entirely after substituting `value`.
  MultiPoly restrict_var(int var, double value) const;
  /// Same polynomial over a signature without variable `var`; requires degree_in(var) == 0.
  MultiPoly drop_var(int var) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(cplx c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, cplx c) { return a *= c; }
  friend MultiPoly operator*(cplx c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  bool operator==(const MultiPoly& other) const = default;

  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;

 private:
  void check_vars(const MultiPoly& other) const;
  int num_vars_ = 0;
  std::map<Exponents, cplx> terms_;
};

/// D^alpha with D_k = i d/dx_k applied to a polynomial in (x_1..x_n, t);
/// alpha has length n.
MultiPoly apply_D(const MultiPoly& poly, std::span<const int> alpha);

double binomial(int n, int k);

}  // namespace parabver
