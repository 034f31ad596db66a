#include "parabver/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "parabver/compatibility.hpp"
#include "parabver/error.hpp"

namespace parabver {

// ---------------------------------------------------------- polynomial image

LambdaImage& LambdaImage::operator+=(const LambdaImage& other) {
  if (f.size() != other.f.size() || g.size() != other.g.size() || h.size() != other.h.size())
    throw ArgumentError("images have different shapes");
  for (std::size_t i = 0; i < f.size(); ++i) f[i] += other.f[i];
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += other.g[i];
  for (std::size_t i = 0; i < h.size(); ++i) h[i] += other.h[i];
  return *this;
}

LambdaImage& LambdaImage::operator*=(cplx c) {
  for (auto* part : {&f, &g, &h})
    for (MultiPoly& p : *part) p *= c;
  return *this;
}

LambdaImage apply_lambda(const ProblemSpec& spec, std::span<const MultiPoly> u) {
  spec.validate();
  if (static_cast<int>(u.size()) != spec.N) throw ArgumentError("need N solution components");
  for (const MultiPoly& uk : u)
    if (uk.num_vars() != spec.n + 1) throw ArgumentError("solution components must be polynomials in (x, t)");
  const int t_var = spec.n;
  LambdaImage image;
  for (int j = 0; j < spec.N; ++j) {
    image.f.push_back(u[static_cast<std::size_t>(j)].derivative(t_var));
    image.g.emplace_back(spec.n + 1);
    image.h.push_back(u[static_cast<std::size_t>(j)].substitute(t_var, 0.0));
  }
  for (const auto& [key, coeff] : spec.a)
    image.f[static_cast<std::size_t>(key.j)] += coeff * apply_D(u[static_cast<std::size_t>(key.k)], key.alpha);
  for (const auto& [key, coeff] : spec.b)
    image.g[static_cast<std::size_t>(key.j)] += coeff * apply_D(u[static_cast<std::size_t>(key.k)], key.alpha);
  return image;
}

// ------------------------------------------------------------ spectral image

namespace {

cplx constant_value(const MultiPoly& p) {
  if (p.is_zero()) return {};
  if (!p.is_constant()) throw ArgumentError("spectral application needs constant coefficients");
  return p.terms().begin()->second;
}

cplx monomial_symbol(const MultiIndex& alpha, std::span<const double> xi) {
  double v = 1.0;
  for (std::size_t d = 0; d < alpha.size(); ++d) v *= std::pow(-xi[d], alpha[d]);
  return v;
}

void check_fields(const ProblemSpec& spec, std::span<const SpectralField> u) {
  if (static_cast<int>(u.size()) != spec.N) throw ArgumentError("need N solution components");
  for (const SpectralField& field : u) {
    if (!field.has_time() || field.space_dims() != spec.n)
      throw ArgumentError("solution fields must live on an (x, t) box of dimension n + 1");
    if (field.grid() != u.front().grid() || field.periods() != u.front().periods())
      throw ArgumentError("solution fields must share grid and periods");
  }
}

template <typename T>
std::vector<T> drop_front(const std::vector<T>& v) {
  return std::vector<T>(v.begin() + 1, v.end());
}

}  // namespace

cplx interior_symbol(const ProblemSpec& spec, int j, int k, std::span<const double> xi, double eta) {
  cplx sum = j == k ? cplx(0.0, eta) : cplx{};
  for (const auto& [key, coeff] : spec.a)
    if (key.j == j && key.k == k) sum += constant_value(coeff) * monomial_symbol(key.alpha, xi);
  return sum;
}

cplx boundary_symbol(const ProblemSpec& spec, int j, int k, std::span<const double> xi) {
  cplx sum{};
  for (const auto& [key, coeff] : spec.b)
    if (key.j == j && key.k == k) sum += constant_value(coeff) * monomial_symbol(key.alpha, xi);
  return sum;
}

SpectralImage apply_lambda(const ProblemSpec& spec, std::span<const SpectralField> u) {
  spec.validate();
  if (!spec.constant_coefficients()) throw ArgumentError("spectral application needs constant coefficients");
  check_fields(spec, u);
  const SpectralField& ref = u.front();
  const int n = spec.n;
  const int N = spec.N;
  std::vector<std::vector<double>> wn(static_cast<std::size_t>(n + 1));
  for (int d = 0; d <= n; ++d) wn[static_cast<std::size_t>(d)] = ref.wavenumbers(d);

  // Symbols per mode are evaluated once and shared by all rows.
  const std::size_t size = ref.size();
  std::vector<double> xi(static_cast<std::size_t>(n));
  auto mode = [&](std::size_t flat, double& eta) {
    std::size_t rest = flat;
    for (int d = n; d >= 0; --d) {
      const auto m = static_cast<std::size_t>(ref.grid()[static_cast<std::size_t>(d)]);
      const double w = wn[static_cast<std::size_t>(d)][rest % m];
      if (d == n)
        eta = w;
      else
        xi[static_cast<std::size_t>(d)] = w;
      rest /= m;
    }
  };

  SpectralImage image;
  for (int j = 0; j < N; ++j) image.f.emplace_back(ref.grid(), ref.periods(), true);
  for (std::size_t flat = 0; flat < size; ++flat) {
    bool any = false;
    for (const SpectralField& uk : u) any = any || uk.coeffs()[flat] != cplx{};
    if (!any) continue;
    double eta = 0.0;
    mode(flat, eta);
    for (int j = 0; j < N; ++j) {
      cplx sum{};
      for (int k = 0; k < N; ++k) {
        const cplx c = u[static_cast<std::size_t>(k)].coeffs()[flat];
        if (c != cplx{}) sum += interior_symbol(spec, j, k, xi, eta) * c;
      }
      image.f[static_cast<std::size_t>(j)].coeffs()[flat] = sum;
    }
  }

  // h: evaluate at t = 0, i.e. sum over the time frequencies.
  const std::vector<int> xgrid(ref.grid().begin(), ref.grid().end() - 1);
  const std::vector<double> xperiods(ref.periods().begin(), ref.periods().end() - 1);
  const auto mt = static_cast<std::size_t>(ref.grid().back());
  for (int j = 0; j < N; ++j) {
    SpectralField h(xgrid, xperiods, false);
    const auto src = u[static_cast<std::size_t>(j)].coeffs();
    for (std::size_t flat = 0; flat < size; ++flat) h.coeffs()[flat / mt] += src[flat];
    image.h.push_back(std::move(h));
  }

  // g: B-symbol applied per mode, then evaluated at x_1 = face position.
  const auto faces = spec.domain.boundary_faces();
  if (!faces.empty()) {
    const std::vector<int> bgrid = drop_front(ref.grid());
    const std::vector<double> bperiods = drop_front(ref.periods());
    const auto m1 = static_cast<std::size_t>(ref.grid().front());
    const std::size_t rest_size = size / m1;
    for (int j = 0; j < N; ++j) {
      for (const auto& face : faces) {
        SpectralField g(bgrid, bperiods, true);
        for (std::size_t flat = 0; flat < size; ++flat) {
          bool any = false;
          for (const SpectralField& uk : u) any = any || uk.coeffs()[flat] != cplx{};
          if (!any) continue;
          double eta = 0.0;
          mode(flat, eta);
          cplx sum{};
          for (int k = 0; k < N; ++k) {
            const cplx c = u[static_cast<std::size_t>(k)].coeffs()[flat];
            if (c != cplx{}) sum += boundary_symbol(spec, j, k, xi) * c;
          }
          g.coeffs()[flat % rest_size] += sum * std::polar(1.0, xi[0] * face.position);
        }
        image.g.push_back(std::move(g));
        image.boundary_orders.push_back(spec.l[static_cast<std::size_t>(j)]);
      }
    }
  }
  return image;
}

// --------------------------------------------------------------------- norms

double q_norm(const SpectralImage& image, const RegularityIndex& idx) {
  if (!(idx.s > 2.0)) throw ArgumentError("data norms are defined for s > 2");
  if (image.g.size() != image.boundary_orders.size()) throw ArgumentError("boundary orders do not match g");
  double total = 0.0;
  for (const SpectralField& f : image.f) total += std::pow(aniso_norm(f, idx.with_order(idx.s - 2.0)), 2);
  for (std::size_t i = 0; i < image.g.size(); ++i)
    total += std::pow(aniso_norm(image.g[i], idx.with_order(idx.s - image.boundary_orders[i] - 0.5)), 2);
  for (const SpectralField& h : image.h) total += std::pow(iso_norm(h, idx.with_order(idx.s - 1.0)), 2);
  return std::sqrt(total);
}

namespace {

std::vector<double> cylinder_lengths(const ProblemSpec& spec) {
  std::vector<double> lengths = spec.domain.lengths;
  lengths.push_back(spec.tau);
  return lengths;
}

}  // namespace

double q_norm(const ProblemSpec& spec, const LambdaImage& image, const RegularityIndex& idx,
              const SurrogateOptions& options) {
  if (!(idx.s > 2.0)) throw ArgumentError("data norms are defined for s > 2");
  const std::vector<double> lengths = cylinder_lengths(spec);
  const int t_var = spec.n;
  double total = 0.0;
  for (const MultiPoly& f : image.f) {
    if (f.is_zero()) continue;
    total += std::pow(aniso_norm(extend_polynomial(f, lengths, true, options.extension), idx.with_order(idx.s - 2.0)), 2);
  }
  const auto faces = spec.domain.boundary_faces();
  for (std::size_t j = 0; j < image.g.size(); ++j) {
    for (const auto& face : faces) {
      const MultiPoly trace = image.g[j].restrict_var(face.axis, face.position);
      if (trace.is_zero()) continue;
      std::vector<double> face_lengths = lengths;
      face_lengths.erase(face_lengths.begin() + face.axis);
      const double order = idx.s - spec.l[j] - 0.5;
      total += std::pow(
          aniso_norm(extend_polynomial(trace, face_lengths, true, options.extension), idx.with_order(order)), 2);
    }
  }
  const std::vector<double> space(lengths.begin(), lengths.end() - 1);
  for (const MultiPoly& h : image.h) {
    if (h.is_zero()) continue;
    const MultiPoly hx = h.drop_var(t_var);
    total += std::pow(iso_norm(extend_polynomial(hx, space, false, options.extension), idx.with_order(idx.s - 1.0)), 2);
  }
  return std::sqrt(total);
}

double solution_norm(std::span<const SpectralField> u, const RegularityIndex& idx) {
  double total = 0.0;
  for (const SpectralField& uk : u) total += std::pow(aniso_norm(uk, idx), 2);
  return std::sqrt(total);
}

double solution_norm(const ProblemSpec& spec, std::span<const MultiPoly> u, const RegularityIndex& idx,
                     const SurrogateOptions& options) {
  const std::vector<double> lengths = cylinder_lengths(spec);
  double total = 0.0;
  for (const MultiPoly& uk : u) {
    if (uk.is_zero()) continue;
    total += std::pow(aniso_norm(extend_polynomial(uk, lengths, true, options.extension), idx), 2);
  }
  return std::sqrt(total);
}

// --------------------------------------------------------------------- sweep

std::vector<double> default_periods(const ProblemSpec& spec) {
  std::vector<double> periods = spec.domain.lengths;
  if (spec.domain.kind != Domain::Kind::periodic && !periods.empty()) periods[0] *= 2.0;
  periods.push_back(2.0 * spec.tau);
  return periods;
}

namespace {

std::vector<int> sweep_grid(const ProblemSpec& spec, int cutoff) {
  if (cutoff < 1) throw ArgumentError("cutoffs must be positive");
  return std::vector<int>(static_cast<std::size_t>(spec.n + 1), 2 * cutoff + 2);
}

void check_periods(const ProblemSpec& spec, std::span<const double> periods) {
  if (static_cast<int>(periods.size()) != spec.n + 1) throw ArgumentError("sweep needs n + 1 periods");
}

bool within_band(std::span<const int> freq, int cutoff) {
  return std::all_of(freq.begin(), freq.end(), [cutoff](int k) { return std::abs(k) <= cutoff; });
}

std::vector<SpectralField> draw_attempt(const ProblemSpec& spec, double s, int cutoff,
                                        std::span<const double> periods, std::uint64_t seed, int draw, int attempt) {
  check_periods(spec, periods);
  const std::vector<int> grid = sweep_grid(spec, cutoff);
  const std::vector<double> per(periods.begin(), periods.end());
  std::vector<SpectralField> u;
  for (int comp = 0; comp < spec.N; ++comp) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(cutoff), static_cast<std::uint32_t>(draw),
                      static_cast<std::uint32_t>(attempt), static_cast<std::uint32_t>(comp)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    SpectralField field(grid, per, true);
    std::vector<double> xi(static_cast<std::size_t>(spec.n));
    for (std::size_t flat = 0; flat < field.size(); ++flat) {
      const auto freq = field.frequency(flat);
      if (!within_band(freq, cutoff)) continue;
      for (int d = 0; d < spec.n; ++d)
        xi[static_cast<std::size_t>(d)] = 2.0 * M_PI * freq[static_cast<std::size_t>(d)] / per[static_cast<std::size_t>(d)];
      const double eta = 2.0 * M_PI * freq.back() / per.back();
      const double re = normal(rng);
      const double im = normal(rng);
      field.coeffs()[flat] = cplx(re, im) * (M_SQRT1_2 * std::pow(aniso_radius(xi, eta), -(s + 1.0)));
    }
    u.push_back(std::move(field));
  }
  return u;
}

}  // namespace

std::vector<SpectralField> random_draw(const ProblemSpec& spec, double s, int cutoff, std::span<const double> periods,
                                       std::uint64_t seed, int draw) {
  return draw_attempt(spec, s, cutoff, periods, seed, draw, 0);
}

std::vector<SpectralField> fixed_low_mode_input(const ProblemSpec& spec, int cutoff, std::span<const double> periods) {
  check_periods(spec, periods);
  const std::vector<int> grid = sweep_grid(spec, std::max(cutoff, 2));
  const std::vector<double> per(periods.begin(), periods.end());
  std::vector<SpectralField> u;
  for (int comp = 0; comp < spec.N; ++comp) {
    SpectralField field(grid, per, true);
    for (std::size_t flat = 0; flat < field.size(); ++flat) {
      const auto freq = field.frequency(flat);
      if (!within_band(freq, 2)) continue;
      double k2 = 0.0;
      for (int k : freq) k2 += k * k;
      field.coeffs()[flat] = cplx(1.0 + 0.25 * freq.front(), 0.5 - 0.125 * freq.back()) / ((1.0 + k2) * (comp + 1));
    }
    u.push_back(std::move(field));
  }
  return u;
}

double isomorphism_ratio(const ProblemSpec& spec, std::span<const SpectralField> u, const RegularityIndex& idx) {
  const double denom = solution_norm(u, idx);
  if (!(denom > 0.0)) throw ArgumentError("ratio undefined for a zero input");
  return q_norm(apply_lambda(spec, u), idx) / denom;
}

SweepTable isomorphism_sweep(const ProblemSpec& spec, const RegularityIndex& idx, const SweepOptions& options) {
  spec.validate();
  if (!spec.constant_coefficients()) throw ArgumentError("the sweep applies Lambda spectrally and needs constant coefficients");
  if (!(idx.s > 2.0)) throw ArgumentError("the sweep needs s > 2");
  if (in_exceptional_set(spec.l, idx.s)) {
    std::ostringstream os;
    os << "s=" << idx.s << " is exceptional; pick s outside E for the sweep";
    throw ExceptionalRegularityError(os.str());
  }
  if (options.cutoffs.empty() || options.samples < 1) throw ArgumentError("sweep needs cutoffs and samples");

  SweepTable table;
  table.s = idx.s;
  table.spread_bound = options.spread_bound;
  table.invariance_tol = options.invariance_tol;
  table.periods = options.periods.empty() ? default_periods(spec) : options.periods;
  check_periods(spec, table.periods);

  const int threads = std::max(1, options.threads);
  for (int cutoff : options.cutoffs) {
    SweepRow row;
    row.cutoff = cutoff;
    row.ratios.assign(static_cast<std::size_t>(options.samples), 0.0);
    std::vector<int> redraws(static_cast<std::size_t>(options.samples), 0);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    auto worker = [&](int tid) {
      try {
        for (int draw = tid; draw < options.samples; draw += threads) {
          for (int attempt = 0;; ++attempt) {
            if (attempt > 16) throw NumericalError("repeated zero-norm draws");
            const auto u = draw_attempt(spec, idx.s, cutoff, table.periods, options.seed, draw, attempt);
            if (!(solution_norm(u, idx) > 0.0)) {
              ++redraws[static_cast<std::size_t>(draw)];
              continue;
            }
            row.ratios[static_cast<std::size_t>(draw)] = isomorphism_ratio(spec, u, idx);
            break;
          }
        }
      } catch (...) {
        errors[static_cast<std::size_t>(tid)] = std::current_exception();
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
      for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (int r : redraws) table.redraws += r;

    std::vector<double> sorted = row.ratios;
    std::sort(sorted.begin(), sorted.end());
    row.min = sorted.front();
    row.max = sorted.back();
    const std::size_t mid = sorted.size() / 2;
    row.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    row.fixed_ratio = isomorphism_ratio(spec, fixed_low_mode_input(spec, cutoff, table.periods), idx);
    table.rows.push_back(std::move(row));
  }

  double lo = table.rows.front().min, hi = table.rows.front().max;
  for (const SweepRow& row : table.rows) {
    lo = std::min(lo, row.min);
    hi = std::max(hi, row.max);
    for (double r : row.ratios)
      if (!(r > 0.0) || !std::isfinite(r)) throw InvariantViolation("sweep produced a non-positive or non-finite ratio");
    table.fixed_invariance = std::max(table.fixed_invariance, std::abs(row.fixed_ratio - table.rows.front().fixed_ratio) /
                                                                  table.rows.front().fixed_ratio);
  }
  table.spread = hi / lo;
  return table;
}

}  // namespace parabver
