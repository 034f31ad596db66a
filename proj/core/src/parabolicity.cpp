#include "parabver/parabolicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "parabver/error.hpp"

namespace parabver {

namespace {

std::string format_point(std::span<const double> x, double t) {
  std::ostringstream os;
  os << "x=(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << "), t=" << t;
  return os.str();
}

std::vector<double> random_point(const ProblemSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(spec.n));
  for (int i = 0; i < spec.n; ++i) x[static_cast<std::size_t>(i)] = unit(rng) * spec.domain.lengths[static_cast<std::size_t>(i)];
  return x;
}

double frac(double v) { return v - std::floor(v); }

}  // namespace

std::vector<InteriorSample> interior_grid(const ProblemSpec& spec, int count, std::uint64_t seed) {
  if (count < 1) throw ArgumentError("interior grid needs at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<InteriorSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    InteriorSample s;
    s.x = random_point(spec, rng);
    s.t = unit(rng) * spec.tau;
    s.xi.assign(static_cast<std::size_t>(spec.n), 0.0);
    if (spec.n == 1) {
      s.xi[0] = i % 2 == 0 ? 1.0 : -1.0;
    } else if (spec.n == 2) {
      const double theta = 2.0 * std::numbers::pi * i / count;
      s.xi = {std::cos(theta), std::sin(theta)};
    } else if (i < spec.n) {
      s.xi[static_cast<std::size_t>(i)] = 1.0;
    } else {
      double norm = 0.0;
      while (norm < 1e-6) {
        norm = 0.0;
        for (double& v : s.xi) {
          v = gauss(rng);
          norm += v * v;
        }
        norm = std::sqrt(norm);
      }
      for (double& v : s.xi) v /= norm;
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<BoundarySample> boundary_grid(const ProblemSpec& spec, double delta1, int count, std::uint64_t seed) {
  if (count < 1) throw ArgumentError("boundary grid needs at least one sample");
  if (!(delta1 > 0.0)) throw ArgumentError("delta1 must be positive");
  const auto faces = spec.domain.boundary_faces();
  if (faces.empty()) throw StructuralError("the domain has no boundary");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double g1 = (std::sqrt(5.0) - 1.0) / 2.0;
  const double g2 = std::sqrt(2.0) - 1.0;

  // Fixed corners of the slice first: (q, angle fraction in [-1, 1]).
  const std::vector<std::pair<double, double>> corners = {
      {0.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}, {0.0, 0.5}, {1.0, 0.0}, {0.5, 1.0}, {0.5, -1.0}, {0.9, 1.0}};

  std::vector<BoundarySample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto& face = faces[static_cast<std::size_t>(i) % faces.size()];
    BoundarySample s;
    s.x = random_point(spec, rng);
    s.x[static_cast<std::size_t>(face.axis)] = face.position;
    s.t = unit(rng) * spec.tau;
    s.nu = face.normal;

    double q, angle;
    if (i < static_cast<int>(corners.size())) {
      std::tie(q, angle) = corners[static_cast<std::size_t>(i)];
    } else {
      q = frac(i * g1);
      angle = 2.0 * frac(i * g2) - 1.0;
    }
    if (spec.n == 1) q = 0.0;

    s.xi.assign(static_cast<std::size_t>(spec.n), 0.0);
    if (q > 0.0) {
      double norm = 0.0;
      while (norm < 1e-6) {
        norm = 0.0;
        for (int d = 0; d < spec.n; ++d) {
          if (d == face.axis) continue;
          s.xi[static_cast<std::size_t>(d)] = gauss(rng);
          norm += s.xi[static_cast<std::size_t>(d)] * s.xi[static_cast<std::size_t>(d)];
        }
        norm = std::sqrt(norm);
      }
      for (double& v : s.xi) v *= std::sqrt(q) / norm;
    }
    const double modulus = 1.0 - q;
    double theta_max = std::numbers::pi;
    if (modulus > 0.0) theta_max = std::acos(std::max(-1.0, -delta1 * q / modulus));
    const double theta = angle * theta_max;
    s.p = std::polar(modulus, theta);
    // Guard the half-plane constraint against rounding in acos/polar.
    const double floor_re = -delta1 * q;
    if (s.p.real() < floor_re) s.p = {floor_re, s.p.imag()};
    out.push_back(std::move(s));
  }
  return out;
}

RootSplit split_roots_zeta(const Polynomial& poly, double tol) {
  if (poly.effective_degree(1e-12) < 2) throw ArgumentError("root split needs a polynomial of degree >= 2");
  RootSplit split;
  for (const cplx& z : roots(poly, 1e-12)) {
    if (std::abs(z.imag()) <= tol) {
      std::ostringstream os;
      os << "split undefined: root " << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
         << "i lies within " << tol << " of the real axis";
      throw NumericalError(os.str());
    }
    (z.imag() > 0 ? split.zeta_plus : split.zeta_minus).push_back(z);
  }
  if (split.zeta_plus.size() != split.zeta_minus.size()) {
    std::ostringstream os;
    os << "unbalanced root split: " << split.zeta_plus.size() << " roots above and " << split.zeta_minus.size()
       << " below the real axis";
    throw InvariantViolation(os.str());
  }
  split.m = static_cast<int>(split.zeta_plus.size());
  return split;
}

Eigen::MatrixXcd remainder_matrix(const PolyMatrix& rows, const Polynomial& modulus) {
  const int m = modulus.degree();
  if (m < 1) throw ArgumentError("modulus must have positive degree");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows.rows(), rows.cols() * m);
  for (int j = 0; j < rows.rows(); ++j)
    for (int k = 0; k < rows.cols(); ++k) {
      const Polynomial rem = divide(rows(j, k), modulus).remainder;
      for (int c = 0; c < m; ++c) out(j, k * m + c) = rem[c];
    }
  return out;
}

ConditionIResult check_condition_i(const ProblemSpec& spec, std::span<const InteriorSample> samples) {
  if (samples.empty()) throw ArgumentError("condition (i) needs a nonempty sample grid");
  ConditionIResult result;
  double worst = -std::numeric_limits<double>::infinity();
  for (const InteriorSample& s : samples) {
    double xi2 = 0.0;
    for (double v : s.xi) xi2 += v * v;
    if (!(xi2 > 0.0)) throw ArgumentError("condition (i) samples need xi != 0");
    const Eigen::MatrixXcd m = second_order_part(spec, s.x, s.t, s.xi);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
    if (solver.info() != Eigen::Success)
      throw NumericalError("eigenvalue solver did not converge at " + format_point(s.x, s.t));
    for (Eigen::Index r = 0; r < solver.eigenvalues().size(); ++r) {
      const double re_p = -solver.eigenvalues()(r).real() / xi2;
      if (re_p > worst) {
        worst = re_p;
        result.worst = s;
      }
    }
  }
  result.samples = samples.size();
  result.delta_estimate = -worst;
  result.pass = result.delta_estimate > 0.0;
  return result;
}

Eigen::MatrixXcd covering_matrix(const ProblemSpec& spec, const BoundarySample& s, double tol, int* m_out) {
  const PolyMatrix a = symbol_in_zeta(spec, s.x, s.t, s.xi, s.nu, s.p);
  const RootSplit split = split_roots_zeta(a.determinant(), tol);
  if (spec.N > split.m) {
    std::ostringstream os;
    os << "N = " << spec.N << " exceeds the number of upper roots m = " << split.m << " at "
       << format_point(s.x, s.t);
    throw StructuralError(os.str());
  }
  if (m_out) *m_out = split.m;
  const PolyMatrix rows = boundary_symbol_in_zeta(spec, s.x, s.t, s.xi, s.nu) * a.adjugate();
  return remainder_matrix(rows, Polynomial::from_roots(split.zeta_plus));
}

ConditionIIResult check_condition_ii(const ProblemSpec& spec, double delta1, std::span<const BoundarySample> samples,
                                     double tol) {
  if (!(delta1 > 0.0)) throw ArgumentError("delta1 must be positive");
  if (samples.empty()) throw ArgumentError("condition (ii) needs a nonempty sample grid");
  ConditionIIResult result;
  result.delta1 = delta1;
  result.tol = tol;
  result.min_singular_value = std::numeric_limits<double>::infinity();
  for (const BoundarySample& s : samples) {
    double xi2 = 0.0;
    for (double v : s.xi) xi2 += v * v;
    if (std::abs(xi2 + std::abs(s.p) - 1.0) > 1e-9)
      throw ArgumentError("boundary samples must lie on |xi|^2 + |p| = 1");
    if (s.p.real() < -delta1 * xi2 - 1e-12) throw ArgumentError("boundary sample violates Re p >= -delta1 |xi|^2");
    int m = 0;
    const Eigen::MatrixXcd cover = covering_matrix(spec, s, tol, &m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cover);
    const auto& sv = svd.singularValues();
    const double smallest = sv.size() < spec.N ? 0.0 : sv(spec.N - 1);
    if (smallest < result.min_singular_value) {
      result.min_singular_value = smallest;
      result.worst = s;
    }
    result.m = m;
  }
  result.samples = samples.size();
  result.pass = result.min_singular_value > tol;
  return result;
}

bool ParabolicityReport::pass() const {
  if (!condition_i.pass) return false;
  if (!condition_ii_applicable) return true;
  return condition_ii.has_value() && condition_ii->pass;
}

ParabolicityReport check_parabolicity(const ProblemSpec& spec, const ParabolicityOptions& options) {
  spec.validate();
  ParabolicityReport report;
  report.options = options;
  const auto interior = interior_grid(spec, options.interior_samples, options.seed);
  report.condition_i = check_condition_i(spec, interior);

  if (spec.domain.boundary_faces().empty()) {
    report.condition_ii_applicable = false;
    report.condition_ii_note = "domain has no boundary";
    return report;
  }
  if (!report.condition_i.pass) {
    report.condition_ii_note = "skipped: condition (i) failed, delta1 undefined";
    return report;
  }
  const double delta = report.condition_i.delta_estimate;
  const double delta1 = options.delta1.value_or(delta / 2.0);
  if (!(delta1 > 0.0 && delta1 < delta)) {
    report.condition_ii_note = "delta1 must lie in (0, delta_estimate)";
    return report;
  }
  report.options.delta1 = delta1;
  const auto boundary = boundary_grid(spec, delta1, options.boundary_samples, options.seed + 1);
  try {
    report.condition_ii = check_condition_ii(spec, delta1, boundary, options.tol);
  } catch (const Error& e) {
    report.condition_ii_note = e.what();
  }
  return report;
}

}  // namespace parabver
