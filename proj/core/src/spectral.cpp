#include "parabver/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "parabver/error.hpp"

namespace parabver {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void run_fft(std::span<const int> grid, std::span<cplx> data, int sign) {
  std::vector<int> n(grid.begin(), grid.end());
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), ptr, ptr, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericalError("FFTW could not create a plan");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

std::size_t product(std::span<const int> grid) {
  std::size_t total = 1;
  for (int m : grid) total *= static_cast<std::size_t>(m);
  return total;
}

// Neumaier compensated summation; order of additions is fixed by the caller.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) carry += (sum - t) + x;
    else carry += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

std::string describe_mode(const SpectralField& field, std::size_t flat) {
  std::ostringstream os;
  os << "(";
  const auto freq = field.frequency(flat);
  for (std::size_t d = 0; d < freq.size(); ++d) os << (d ? "," : "") << freq[d];
  os << ")";
  return os.str();
}

// sqrt(volume * sum_k w2(xi_k, eta_k) |c_k|^2) where w2 is the squared weight.
template <typename SquaredWeight>
double weighted_norm(const SpectralField& field, SquaredWeight&& w2) {
  const int dims = field.dims();
  const int space = field.space_dims();
  std::vector<std::vector<double>> wn(static_cast<std::size_t>(dims));
  for (int d = 0; d < dims; ++d) wn[static_cast<std::size_t>(d)] = field.wavenumbers(d);

  std::vector<int> counter(static_cast<std::size_t>(dims), 0);
  std::vector<double> xi(static_cast<std::size_t>(space), 0.0);
  CompensatedSum acc;
  const auto coeffs = field.coeffs();
  for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
    const double mag2 = std::norm(coeffs[flat]);
    if (mag2 != 0.0) {
      for (int d = 0; d < space; ++d)
        xi[static_cast<std::size_t>(d)] = wn[static_cast<std::size_t>(d)][static_cast<std::size_t>(counter[d])];
      const double eta = field.has_time() ? wn.back()[static_cast<std::size_t>(counter.back())] : 0.0;
      const double term = w2(std::span<const double>(xi), eta) * mag2;
      if (!std::isfinite(term))
        throw RangeError("weighted norm term overflows at mode " + describe_mode(field, flat));
      acc.add(term);
    }
    for (int d = dims - 1; d >= 0; --d) {
      if (++counter[static_cast<std::size_t>(d)] < field.grid()[static_cast<std::size_t>(d)]) break;
      counter[static_cast<std::size_t>(d)] = 0;
    }
  }
  const double total = field.volume() * acc.value();
  if (!std::isfinite(total)) throw RangeError("weighted norm overflows");
  return std::sqrt(total);
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

// ------------------------------------------------------------- SpectralField

SpectralField::SpectralField(std::vector<int> grid, std::vector<double> periods, bool time_axis)
    : grid_(std::move(grid)), periods_(std::move(periods)), time_axis_(time_axis) {
  if (grid_.empty()) throw ArgumentError("spectral field needs at least one dimension");
  if (grid_.size() != periods_.size()) throw ArgumentError("grid and periods have different lengths");
  for (int m : grid_)
    if (m < 2 || m % 2 != 0) throw ArgumentError("mode counts must be even integers >= 2");
  for (double p : periods_)
    if (!(p > 0.0) || !std::isfinite(p)) throw ArgumentError("periods must be positive and finite");
  coeffs_.assign(product(grid_), cplx{});
}

SpectralField SpectralField::from_samples(std::vector<int> grid, std::vector<double> periods, bool time_axis,
                                          std::span<const cplx> values) {
  SpectralField field(std::move(grid), std::move(periods), time_axis);
  if (values.size() != field.coeffs_.size()) throw ArgumentError("sample count does not match the grid");
  std::copy(values.begin(), values.end(), field.coeffs_.begin());
  run_fft(field.grid_, field.coeffs_, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(field.coeffs_.size());
  for (cplx& c : field.coeffs_) c *= scale;
  return field;
}

std::vector<cplx> SpectralField::to_samples() const {
  std::vector<cplx> values = coeffs_;
  run_fft(grid_, values, FFTW_BACKWARD);
  return values;
}

double SpectralField::volume() const noexcept {
  double v = 1.0;
  for (double p : periods_) v *= p;
  return v;
}

std::vector<int> SpectralField::frequency(std::size_t flat) const {
  std::vector<int> freq(grid_.size());
  for (int d = dims() - 1; d >= 0; --d) {
    const auto m = static_cast<std::size_t>(grid_[static_cast<std::size_t>(d)]);
    const int i = static_cast<int>(flat % m);
    flat /= m;
    freq[static_cast<std::size_t>(d)] = i < static_cast<int>(m) / 2 ? i : i - static_cast<int>(m);
  }
  return freq;
}

bool SpectralField::representable(std::span<const int> freq) const noexcept {
  if (freq.size() != grid_.size()) return false;
  for (std::size_t d = 0; d < freq.size(); ++d) {
    const int half = grid_[d] / 2;
    if (freq[d] < -half || freq[d] >= half) return false;
  }
  return true;
}

std::size_t SpectralField::flat_index(std::span<const int> freq) const {
  if (!representable(freq)) throw ArgumentError("frequency not representable on this grid");
  std::size_t flat = 0;
  for (std::size_t d = 0; d < freq.size(); ++d) {
    const int m = grid_[d];
    const int i = freq[d] >= 0 ? freq[d] : freq[d] + m;
    flat = flat * static_cast<std::size_t>(m) + static_cast<std::size_t>(i);
  }
  return flat;
}

std::vector<double> SpectralField::wavenumbers(int d) const {
  const int m = grid_.at(static_cast<std::size_t>(d));
  const double scale = 2.0 * std::numbers::pi / periods_[static_cast<std::size_t>(d)];
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = scale * (i < m / 2 ? i : i - m);
  return out;
}

double SpectralField::l2_norm() const {
  CompensatedSum acc;
  for (const cplx& c : coeffs_) acc.add(std::norm(c));
  return std::sqrt(volume() * acc.value());
}

bool SpectralField::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](cplx c) { return c == cplx{}; });
}

void SpectralField::check_compatible(const SpectralField& other) const {
  if (grid_ != other.grid_ || periods_ != other.periods_ || time_axis_ != other.time_axis_)
    throw ArgumentError("spectral fields live on different boxes");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx c) {
  for (cplx& x : coeffs_) x *= c;
  return *this;
}

double sample_l2_norm(std::span<const int> grid, std::span<const double> periods, std::span<const cplx> values) {
  if (grid.size() != periods.size()) throw ArgumentError("grid and periods have different lengths");
  const std::size_t total = product(grid);
  if (values.size() != total) throw ArgumentError("sample count does not match the grid");
  double volume = 1.0;
  for (double p : periods) volume *= p;
  CompensatedSum acc;
  for (const cplx& v : values) acc.add(std::norm(v));
  return std::sqrt(volume / static_cast<double>(total) * acc.value());
}

// ------------------------------------------------------------------- weights

double aniso_radius(std::span<const double> xi, double eta) {
  return std::sqrt(1.0 + squared_norm(xi) + std::abs(eta));
}

double aniso_weight(std::span<const double> xi, double eta, const RegularityIndex& idx) {
  const double r = aniso_radius(xi, eta);
  return std::pow(r, idx.s) * idx.phi(r);
}

double iso_weight(std::span<const double> xi, const RegularityIndex& idx) {
  const double r = std::sqrt(1.0 + squared_norm(xi));
  return std::pow(r, idx.s) * idx.phi(r);
}

double aniso_norm(const SpectralField& field, const RegularityIndex& idx) {
  if (!field.has_time()) throw ArgumentError("anisotropic norm needs a time axis");
  const bool plain = idx.phi.is_identically_one();
  return weighted_norm(field, [&](std::span<const double> xi, double eta) {
    const double r2 = 1.0 + squared_norm(xi) + std::abs(eta);
    const double w2 = std::pow(r2, idx.s);
    if (plain) return w2;
    const double phi = idx.phi(std::sqrt(r2));
    return w2 * phi * phi;
  });
}

double iso_norm(const SpectralField& field, const RegularityIndex& idx) {
  if (field.has_time()) throw ArgumentError("isotropic norm is defined for fields without a time axis");
  const bool plain = idx.phi.is_identically_one();
  return weighted_norm(field, [&](std::span<const double> xi, double) {
    const double r2 = 1.0 + squared_norm(xi);
    const double w2 = std::pow(r2, idx.s);
    if (plain) return w2;
    const double phi = idx.phi(std::sqrt(r2));
    return w2 * phi * phi;
  });
}

// ------------------------------------------------------- embedding constants

namespace {

// Supremum of f over [1, r_max]: dense log grid plus known kinks, then a
// golden-section refinement around the best grid point.
template <typename F>
double supremum(F&& f, double r_max, const SlowlyVaryingFn& phi) {
  std::vector<double> candidates = log_grid(1.0, r_max, 4001);
  if (phi.kind() == SlowlyVaryingFn::Kind::log_multiscale && phi.splice_radius() <= r_max)
    candidates.push_back(phi.splice_radius());
  if (phi.kind() == SlowlyVaryingFn::Kind::tabulated)
    for (const auto& [r, v] : phi.table())
      if (r <= r_max) candidates.push_back(r);
  std::sort(candidates.begin(), candidates.end());

  std::size_t best = 0;
  double best_value = f(candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = f(candidates[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double lo = std::log(candidates[best > 0 ? best - 1 : 0]);
  double hi = std::log(candidates[std::min(best + 1, candidates.size() - 1)]);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - g * (hi - lo);
  double b = lo + g * (hi - lo);
  double fa = f(std::exp(a));
  double fb = f(std::exp(b));
  for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = f(std::exp(b));
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = f(std::exp(a));
    }
  }
  return std::max({best_value, fa, fb});
}

}  // namespace

EmbeddingConstants embedding_constants(double s0, const RegularityIndex& idx, double s1, double r_max) {
  if (!(s0 < idx.s && idx.s < s1)) throw ArgumentError("embedding constants need s0 < s < s1");
  if (!(r_max >= 1.0)) throw ArgumentError("band limit must be >= 1");
  EmbeddingConstants out;
  out.band_limit = r_max;
  out.c_high = supremum([&](double r) { return std::pow(r, idx.s - s1) * idx.phi(r); }, r_max, idx.phi);
  out.c_low = supremum([&](double r) { return std::pow(r, s0 - idx.s) / idx.phi(r); }, r_max, idx.phi);
  return out;
}

}  // namespace parabver
