#include "parabver/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "parabver/error.hpp"

namespace parabver {

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial::Polynomial(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { normalize(); }

Polynomial Polynomial::constant(cplx c) { return Polynomial(std::vector<cplx>{c}); }

Polynomial Polynomial::monomial(cplx c, int degree) {
  if (degree < 0) throw ArgumentError("monomial degree must be non-negative");
  std::vector<cplx> coeffs(static_cast<std::size_t>(degree) + 1);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::from_roots(std::span<const cplx> roots) {
  Polynomial result = constant(1.0);
  for (const cplx& root : roots) result *= Polynomial{-root, 1.0};
  return result;
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
}

int Polynomial::effective_degree(double rel_tol) const {
  const double cutoff = rel_tol * max_abs_coeff();
  int d = degree();
  while (d >= 0 && std::abs(coeffs_[static_cast<std::size_t>(d)]) <= cutoff) --d;
  return d;
}

cplx Polynomial::operator[](int i) const noexcept {
  if (i < 0 || i > degree()) return {};
  return coeffs_[static_cast<std::size_t>(i)];
}

cplx Polynomial::operator()(cplx z) const noexcept {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<cplx> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(out));
}

Polynomial Polynomial::trimmed(double abs_tol) const {
  Polynomial copy = *this;
  while (!copy.coeffs_.empty() && std::abs(copy.coeffs_.back()) <= abs_tol) copy.coeffs_.pop_back();
  return copy;
}

double Polynomial::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<cplx> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
  coeffs_ = std::move(out);
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(cplx c) {
  for (cplx& x : coeffs_) x *= c;
  normalize();
  return *this;
}

namespace {

std::string format_complex(cplx c) {
  std::ostringstream os;
  os.precision(12);
  if (c.imag() == 0.0) {
    os << c.real();
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

}  // namespace

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const cplx c = coeffs_[static_cast<std::size_t>(i)];
    if (c == cplx{}) continue;
    if (!out.empty()) out += " + ";
    out += format_complex(c);
    if (i >= 1) out += "*" + var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

PolynomialDivision divide(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw ArgumentError("polynomial division by zero");
  const int dn = den.degree();
  if (num.degree() < dn) return {Polynomial{}, num};

  std::vector<cplx> rem = num.coeffs();
  std::vector<cplx> quot(static_cast<std::size_t>(num.degree() - dn) + 1);
  const cplx lead = den.leading();
  for (int k = num.degree() - dn; k >= 0; --k) {
    const cplx q = rem[static_cast<std::size_t>(k + dn)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    for (int i = 0; i <= dn; ++i) rem[static_cast<std::size_t>(k + i)] -= q * den[i];
    rem[static_cast<std::size_t>(k + dn)] = cplx{};
  }
  rem.resize(static_cast<std::size_t>(dn));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::vector<cplx> roots(const Polynomial& poly, double rel_tol) {
  if (poly.is_zero()) throw NumericalError("roots requested for the zero polynomial");
  const Polynomial p = poly.trimmed(rel_tol * poly.max_abs_coeff());
  const int degree = p.degree();
  if (degree <= 0) return {};
  if (degree == 1) return {-p[0] / p[1]};

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  companion.diagonal(-1).setOnes();
  const cplx lead = p.leading();
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -p[i] / lead;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion eigenvalue solver did not converge");
  std::vector<cplx> out(solver.eigenvalues().data(), solver.eigenvalues().data() + degree);
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  return out;
}

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows * cols)) {
  if (rows < 0 || cols < 0) throw ArgumentError("negative matrix dimension");
}

Eigen::MatrixXcd PolyMatrix::evaluate(cplx z) const {
  Eigen::MatrixXcd m(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j)(z);
  return m;
}

int PolyMatrix::max_degree() const {
  int d = -1;
  for (const Polynomial& p : entries_) d = std::max(d, p.degree());
  return d;
}

Polynomial PolyMatrix::minor_determinant(std::span<const int> rows, std::span<const int> cols) const {
  const int m = static_cast<int>(rows.size());
  if (m == 0) return Polynomial::constant(1.0);
  if (m > 20) throw StructuralError("determinant expansion limited to 20x20 matrices");

  // dets[mask]: determinant of the first popcount(mask) rows restricted to the columns in mask.
  std::vector<Polynomial> dets(std::size_t{1} << m);
  dets[0] = Polynomial::constant(1.0);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    const int k = std::popcount(mask);
    const int row = rows[static_cast<std::size_t>(k - 1)];
    Polynomial acc;
    int greater = 0;
    for (int c = m - 1; c >= 0; --c) {
      if (!(mask & (1u << c))) continue;
      const Polynomial& sub = dets[mask & ~(1u << c)];
      if (!sub.is_zero()) {
        const Polynomial& entry = (*this)(row, cols[static_cast<std::size_t>(c)]);
        if (!entry.is_zero()) {
          Polynomial term = entry * sub;
          if (greater % 2 == 0) acc += term;
          else acc -= term;
        }
      }
      ++greater;
    }
    dets[mask] = std::move(acc);
  }
  return dets.back();
}

Polynomial PolyMatrix::determinant() const {
  if (rows_ != cols_) throw ArgumentError("determinant of a non-square matrix");
  std::vector<int> idx(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) idx[static_cast<std::size_t>(i)] = i;
  return minor_determinant(idx, idx);
}

PolyMatrix PolyMatrix::adjugate() const {
  if (rows_ != cols_) throw ArgumentError("adjugate of a non-square matrix");
  const int n = rows_;
  PolyMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = Polynomial::constant(1.0);
    return adj;
  }
  std::vector<int> rows, cols;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // adj(i, j) = (-1)^{i+j} * minor with row j and column i removed.
      rows.clear();
      cols.clear();
      for (int r = 0; r < n; ++r)
        if (r != j) rows.push_back(r);
      for (int c = 0; c < n; ++c)
        if (c != i) cols.push_back(c);
      Polynomial m = minor_determinant(rows, cols);
      adj(i, j) = ((i + j) % 2 == 0) ? m : -m;
    }
  }
  return adj;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw ArgumentError("polynomial matrix dimension mismatch");
  PolyMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Polynomial acc;
      for (int k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  return out;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(int num_vars) : num_vars_(num_vars) {
  if (num_vars < 0) throw ArgumentError("negative variable count");
}

MultiPoly MultiPoly::constant(int num_vars, cplx c) {
  MultiPoly p(num_vars);
  p.add_term(Exponents(static_cast<std::size_t>(num_vars), 0), c);
  return p;
}

MultiPoly MultiPoly::monomial(Exponents exps, cplx c) {
  MultiPoly p(static_cast<int>(exps.size()));
  p.add_term(exps, c);
  return p;
}

bool MultiPoly::is_constant() const noexcept {
  for (const auto& [exps, c] : terms_)
    for (int e : exps)
      if (e != 0) return false;
  return true;
}

int MultiPoly::total_degree() const noexcept {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [exps, c] : terms_) {
    int sum = 0;
    for (int e : exps) sum += e;
    d = std::max(d, sum);
  }
  return d;
}

int MultiPoly::degree_in(int var) const noexcept {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [exps, c] : terms_) d = std::max(d, exps[static_cast<std::size_t>(var)]);
  return d;
}

void MultiPoly::add_term(const Exponents& exps, cplx c) {
  if (static_cast<int>(exps.size()) != num_vars_)
    throw ArgumentError("exponent vector has " + std::to_string(exps.size()) + " entries, expected " +
                        std::to_string(num_vars_));
  for (int e : exps)
    if (e < 0) throw ArgumentError("negative exponent");
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

cplx MultiPoly::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != num_vars_) throw ArgumentError("evaluation point has wrong dimension");
  cplx acc{};
  for (const auto& [exps, c] : terms_) {
    double mono = 1.0;
    for (std::size_t v = 0; v < exps.size(); ++v)
      if (exps[v] != 0) mono *= std::pow(point[v], exps[v]);
    acc += c * mono;
  }
  return acc;
}

MultiPoly MultiPoly::derivative(int var, int order) const {
  if (var < 0 || var >= num_vars_) throw ArgumentError("derivative variable out of range");
  MultiPoly out(num_vars_);
  for (const auto& [exps, c] : terms_) {
    const int e = exps[static_cast<std::size_t>(var)];
    if (e < order) continue;
    double factor = 1.0;
    for (int k = 0; k < order; ++k) factor *= e - k;
    Exponents ne = exps;
    ne[static_cast<std::size_t>(var)] -= order;
    out.add_term(ne, c * factor);
  }
  return out;
}

MultiPoly MultiPoly::substitute(int var, double value) const {
  if (var < 0 || var >= num_vars_) throw ArgumentError("substitution variable out of range");
  MultiPoly out(num_vars_);
  for (const auto& [exps, c] : terms_) {
    Exponents ne = exps;
    const int e = ne[static_cast<std::size_t>(var)];
    ne[static_cast<std::size_t>(var)] = 0;
    out.add_term(ne, c * std::pow(value, e));
  }
  return out;
}

MultiPoly MultiPoly::restrict_var(int var, double value) const { return substitute(var, value).drop_var(var); }

MultiPoly MultiPoly::drop_var(int var) const {
  if (var < 0 || var >= num_vars_) throw ArgumentError("variable out of range");
  MultiPoly out(num_vars_ - 1);
  for (const auto& [exps, c] : terms_) {
    if (exps[static_cast<std::size_t>(var)] != 0)
      throw ArgumentError("cannot drop a variable the polynomial depends on");
    Exponents ne = exps;
    ne.erase(ne.begin() + var);
    out.add_term(ne, c);
  }
  return out;
}

void MultiPoly::check_vars(const MultiPoly& other) const {
  if (other.num_vars_ != num_vars_) throw ArgumentError("polynomials over different variable sets");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  check_vars(other);
  for (const auto& [exps, c] : other.terms_) add_term(exps, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  check_vars(other);
  for (const auto& [exps, c] : other.terms_) add_term(exps, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(cplx c) {
  if (c == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (it->second == cplx{}) it = terms_.erase(it);
    else ++it;
  }
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_vars(b);
  MultiPoly out(a.num_vars_);
  MultiPoly::Exponents ne(static_cast<std::size_t>(a.num_vars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < ne.size(); ++v) ne[v] = ea[v] + eb[v];
      out.add_term(ne, ca * cb);
    }
  return out;
}

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [exps, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += format_complex(c);
    for (std::size_t v = 0; v < exps.size(); ++v) {
      if (exps[v] == 0) continue;
      out += "*" + (v < names.size() ? names[v] : "v" + std::to_string(v));
      if (exps[v] > 1) out += "^" + std::to_string(exps[v]);
    }
  }
  return out;
}

std::string MultiPoly::to_string() const {
  std::vector<std::string> names;
  for (int v = 0; v < num_vars_; ++v)
    names.push_back(v + 1 == num_vars_ ? "t" : "x" + std::to_string(v + 1));
  return to_string(names);
}

MultiPoly apply_D(const MultiPoly& poly, std::span<const int> alpha) {
  if (static_cast<int>(alpha.size()) >= poly.num_vars() + 1)
    throw ArgumentError("multi-index longer than the spatial signature");
  MultiPoly out = poly;
  int order = 0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (alpha[k] > 0) out = out.derivative(static_cast<int>(k), alpha[k]);
    order += alpha[k];
  }
  static constexpr cplx powers_of_i[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return out * powers_of_i[order % 4];
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace parabver
