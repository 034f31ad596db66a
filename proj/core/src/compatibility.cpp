#include "parabver/compatibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "parabver/error.hpp"

namespace parabver {

std::vector<int> trace_orders(double s, int l) {
  if (!(s > 2.0)) throw ArgumentError("trace orders are defined for s > 2");
  if (l != 0 && l != 1) throw ArgumentError("boundary order must be 0 or 1");
  const double bound = (s - l - 1.5) / 2.0;
  std::vector<int> out;
  for (int r = 0; r < bound; ++r) out.push_back(r);
  return out;
}

std::vector<double> exceptional_set(std::span<const int> boundary_orders, double s_max) {
  std::vector<double> out;
  for (int lj : boundary_orders) {
    if (lj != 0 && lj != 1) throw ArgumentError("boundary order must be 0 or 1");
    for (int k = 0;; ++k) {
      const double e = 2.0 * k + lj + 1.5;
      if (e > s_max) break;
      if (e > 2.0) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> exceptional_set(const ProblemSpec& spec, double s_max) { return exceptional_set(spec.l, s_max); }

bool in_exceptional_set(std::span<const int> boundary_orders, double s, double tol) {
  for (double e : exceptional_set(boundary_orders, s + 1.0))
    if (std::abs(e - s) <= tol) return true;
  return false;
}

const MultiPoly& TraceFamily::at(int j, int r) const {
  if (j < 0 || j >= components()) throw ArgumentError("trace component out of range");
  if (r < 0 || r > max_order()) {
    std::ostringstream os;
    os << "trace v_{" << j + 1 << "," << r << "} was not generated (max order " << max_order() << ")";
    throw ArgumentError(os.str());
  }
  return v_[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
}

namespace {

int order_of(const MultiIndex& alpha) {
  int s = 0;
  for (int e : alpha) s += e;
  return s;
}

// (d_t^m c)(x, 0) over the (x, t) signature.
MultiPoly time_derivative_at_zero(const MultiPoly& c, int m, int t_var) {
  MultiPoly d = m > 0 ? c.derivative(t_var, m) : c;
  return d.substitute(t_var, 0.0);
}

MultiPoly lift_initial(const MultiPoly& h, int n) {
  if (h.num_vars() == n + 1) {
    if (h.degree_in(n) > 0) throw ArgumentError("initial data must not depend on t");
    return h;
  }
  if (h.num_vars() != n) throw ArgumentError("initial data has wrong number of variables");
  MultiPoly out(n + 1);
  for (const auto& [exps, c] : h.terms()) {
    auto e = exps;
    e.push_back(0);
    out.add_term(e, c);
  }
  return out;
}

}  // namespace

TraceFamily build_traces(const ProblemSpec& spec, std::span<const MultiPoly> f, std::span<const MultiPoly> h,
                         int r_max) {
  spec.validate();
  if (r_max < 0) throw ArgumentError("r_max must be non-negative");
  if (static_cast<int>(f.size()) != spec.N || static_cast<int>(h.size()) != spec.N)
    throw ArgumentError("need N right-hand sides and N initial data");
  const int t_var = spec.n;
  for (const MultiPoly& fj : f)
    if (fj.num_vars() != spec.n + 1) throw ArgumentError("right-hand sides must be polynomials in (x, t)");

  std::vector<std::vector<MultiPoly>> v(static_cast<std::size_t>(spec.N));
  for (int j = 0; j < spec.N; ++j) v[static_cast<std::size_t>(j)].push_back(lift_initial(h[static_cast<std::size_t>(j)], spec.n));

  for (int r = 1; r <= r_max; ++r) {
    for (int j = 0; j < spec.N; ++j) {
      MultiPoly acc = time_derivative_at_zero(f[static_cast<std::size_t>(j)], r - 1, t_var);
      for (const auto& [key, coeff] : spec.a) {
        if (key.j != j) continue;
        for (int q = 0; q <= r - 1; ++q) {
          const MultiPoly dc = time_derivative_at_zero(coeff, r - 1 - q, t_var);
          if (dc.is_zero()) continue;
          const MultiPoly dv = apply_D(v[static_cast<std::size_t>(key.k)][static_cast<std::size_t>(q)], key.alpha);
          acc -= (dc * dv) * binomial(r - 1, q);
        }
      }
      v[static_cast<std::size_t>(j)].push_back(std::move(acc));
    }
  }
  return TraceFamily(std::move(v));
}

MultiPoly build_boundary_expr(const ProblemSpec& spec, const TraceFamily& traces, int j, int r) {
  if (j < 0 || j >= spec.N) throw ArgumentError("boundary row out of range");
  if (r < 0) throw ArgumentError("order must be non-negative");
  if (r > traces.max_order()) throw ArgumentError("traces do not reach the requested order");
  const int t_var = spec.n;
  MultiPoly acc(spec.n + 1);
  for (const auto& [key, coeff] : spec.b) {
    if (key.j != j) continue;
    if (order_of(key.alpha) > spec.l[static_cast<std::size_t>(j)]) continue;
    for (int q = 0; q <= r; ++q) {
      const MultiPoly dc = time_derivative_at_zero(coeff, r - q, t_var);
      if (dc.is_zero()) continue;
      acc += (dc * apply_D(traces.at(key.k, q), key.alpha)) * binomial(r, q);
    }
  }
  return acc;
}

void gauss_legendre(int count, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count < 1) throw ArgumentError("quadrature needs at least one node");
  nodes.assign(static_cast<std::size_t>(count), 0.0);
  weights.assign(static_cast<std::size_t>(count), 0.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= count; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = count * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = mid - half * z;
    nodes[static_cast<std::size_t>(count - 1 - i)] = mid + half * z;
    weights[static_cast<std::size_t>(i)] = weights[static_cast<std::size_t>(count - 1 - i)] = half * w;
  }
}

double boundary_l2_norm(const Domain& domain, const MultiPoly& poly) {
  const int n = domain.dimension();
  if (poly.num_vars() != n + 1) throw ArgumentError("boundary norm expects a polynomial in (x, t)");
  const int points = std::max(poly.total_degree() + 1, 2);
  double total = 0.0;
  for (const auto& face : domain.boundary_faces()) {
    std::vector<std::vector<double>> nodes(static_cast<std::size_t>(n)), weights(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) {
      if (d == face.axis) {
        nodes[static_cast<std::size_t>(d)] = {face.position};
        weights[static_cast<std::size_t>(d)] = {1.0};
      } else {
        gauss_legendre(points, 0.0, domain.lengths[static_cast<std::size_t>(d)], nodes[static_cast<std::size_t>(d)],
                       weights[static_cast<std::size_t>(d)]);
      }
    }
    std::vector<int> counter(static_cast<std::size_t>(n), 0);
    std::vector<double> pt(static_cast<std::size_t>(n) + 1, 0.0);
    while (true) {
      double w = 1.0;
      for (int d = 0; d < n; ++d) {
        pt[static_cast<std::size_t>(d)] = nodes[static_cast<std::size_t>(d)][static_cast<std::size_t>(counter[static_cast<std::size_t>(d)])];
        w *= weights[static_cast<std::size_t>(d)][static_cast<std::size_t>(counter[static_cast<std::size_t>(d)])];
      }
      total += w * std::norm(poly.evaluate(pt));
      int d = n - 1;
      for (; d >= 0; --d) {
        if (++counter[static_cast<std::size_t>(d)] < static_cast<int>(nodes[static_cast<std::size_t>(d)].size())) break;
        counter[static_cast<std::size_t>(d)] = 0;
      }
      if (d < 0) break;
    }
  }
  return std::sqrt(total);
}

bool CompatibilitySystem::compatible() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.satisfied; });
}

double CompatibilitySystem::max_residual() const {
  double m = 0.0;
  for (const auto& c : conditions) m = std::max(m, c.residual);
  return m;
}

CompatibilitySystem compatibility_residuals(const ProblemSpec& spec, std::span<const MultiPoly> f,
                                            std::span<const MultiPoly> g, std::span<const MultiPoly> h, double s,
                                            const CompatibilityOptions& options) {
  spec.validate();
  if (!(s > 2.0)) throw ArgumentError("compatibility conditions are generated for s > 2");
  if (in_exceptional_set(spec.l, s)) {
    std::ostringstream os;
    os << "exceptional regularity s=" << s
       << ": the data space is defined by interpolation between s-eps and s+eps; "
          "use the interpolation module for weight-level checks";
    throw ExceptionalRegularityError(os.str());
  }
  if (static_cast<int>(g.size()) != spec.N) throw ArgumentError("need N boundary data");
  for (const MultiPoly& gj : g)
    if (gj.num_vars() != spec.n + 1) throw ArgumentError("boundary data must be polynomials in (x, t)");

  CompatibilitySystem system;
  system.s = s;
  system.boundary_orders = spec.l;
  system.tol = options.tol;
  int r_max = -1;
  std::vector<std::vector<int>> orders;
  for (int j = 0; j < spec.N; ++j) {
    orders.push_back(trace_orders(s, spec.l[static_cast<std::size_t>(j)]));
    system.counts.push_back(static_cast<int>(orders.back().size()));
    if (!orders.back().empty()) r_max = std::max(r_max, orders.back().back());
  }
  if (r_max < 0) return system;

  const TraceFamily traces = build_traces(spec, f, h, r_max);
  const int t_var = spec.n;
  for (int j = 0; j < spec.N; ++j) {
    for (int r : orders[static_cast<std::size_t>(j)]) {
      CompatibilityCondition cond;
      cond.j = j;
      cond.r = r;
      const MultiPoly& gj = g[static_cast<std::size_t>(j)];
      const MultiPoly dg = (r > 0 ? gj.derivative(t_var, r) : gj).substitute(t_var, 0.0);
      cond.defect = build_boundary_expr(spec, traces, j, r) - dg;
      cond.residual = boundary_l2_norm(spec.domain, cond.defect);
      cond.satisfied = cond.residual <= options.tol;
      system.conditions.push_back(std::move(cond));
    }
  }
  return system;
}

}  // namespace parabver
