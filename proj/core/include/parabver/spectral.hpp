#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "parabver/weights.hpp"

namespace parabver {

using cplx = std::complex<double>;

/// Band-limited field on a periodic box, stored as Fourier coefficients.
///
/// Dimension d has `grid[d]` (even) modes and period `periods[d]`. When
/// `time_axis` is set, the last dimension is the time-like variable and its
/// wavenumber plays the role of eta; the others are spatial (xi).
///
/// Coefficients are row-major (last dimension fastest) in FFT index order:
/// index i maps to the signed frequency i for i < M/2 and i - M otherwise.
/// The physical wavenumber of frequency k is 2*pi*k/period. The field is
///   u(x) = sum_k c_k exp(i * sum_d 2*pi*k_d*x_d/period_d).
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(std::vector<int> grid, std::vector<double> periods, bool time_axis);

  /// Coefficients from collocation values at x_j = j*period/M (row-major), via FFT.
  static SpectralField from_samples(std::vector<int> grid, std::vector<double> periods, bool time_axis,
                                    std::span<const cplx> values);
  /// Collocation values by inverse FFT.
  std::vector<cplx> to_samples() const;

  int dims() const noexcept { return static_cast<int>(grid_.size()); }
  int space_dims() const noexcept { return time_axis_ ? dims() - 1 : dims(); }
  bool has_time() const noexcept { return time_axis_; }
  const std::vector<int>& grid() const noexcept { return grid_; }
  const std::vector<double>& periods() const noexcept { return periods_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  /// Product of the periods; the Lebesgue measure of the box.
  double volume() const noexcept;

  std::span<cplx> coeffs() noexcept { return coeffs_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Signed frequency vector of a flat index.
  std::vector<int> frequency(std::size_t flat) const;
  /// Flat index of a signed frequency vector; ArgumentError if not representable.
  std::size_t flat_index(std::span<const int> freq) const;
  bool representable(std::span<const int> freq) const noexcept;
  cplx& at(std::span<const int> freq) { return coeffs_[flat_index(freq)]; }
  cplx at(std::span<const int> freq) const { return coeffs_[flat_index(freq)]; }

  /// Physical wavenumbers 2*pi*k/period of every index along dimension d.
  std::vector<double> wavenumbers(int d) const;

  /// sqrt(volume * sum |c_k|^2).
  double l2_norm() const;

  bool is_zero() const noexcept;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator*=(cplx c);

 private:
  void check_compatible(const SpectralField& other) const;

  std::vector<int> grid_;
  std::vector<double> periods_;
  bool time_axis_ = false;
  std::vector<cplx> coeffs_;
};

/// L2 norm of collocation values on a uniform periodic grid: sqrt(volume/M * sum |u_j|^2).
double sample_l2_norm(std::span<const int> grid, std::span<const double> periods, std::span<const cplx> values);

/// r(xi, eta) = (1 + |xi|^2 + |eta|)^{1/2}; |eta| enters linearly.
double aniso_radius(std::span<const double> xi, double eta);
/// r(xi,eta)^s * phi(r(xi,eta)).
double aniso_weight(std::span<const double> xi, double eta, const RegularityIndex& idx);
/// <xi>^s * phi(<xi>), <xi> = (1 + |xi|^2)^{1/2}.
double iso_weight(std::span<const double> xi, const RegularityIndex& idx);

/// Quadrature form of the anisotropic H^{s,s/2;phi} norm: sqrt(volume * sum weight^2 |c|^2).
/// Requires a time axis. Throws RangeError naming the mode if a term overflows.
double aniso_norm(const SpectralField& field, const RegularityIndex& idx);
/// Isotropic H^{s;phi} norm of a field without a time axis.
double iso_norm(const SpectralField& field, const RegularityIndex& idx);

struct EmbeddingConstants {
  double c_low = 0.0;   ///< ||.||_{s0} <= c_low  * ||.||_{s,phi}
  double c_high = 0.0;  ///< ||.||_{s,phi} <= c_high * ||.||_{s1}
  double band_limit = 0.0;
};

/// Constants of the chained embeddings H^{s1} -> H^{s;phi} -> H^{s0}, valid on
/// fields whose modes satisfy r <= r_max.
EmbeddingConstants embedding_constants(double s0, const RegularityIndex& idx, double s1, double r_max);

/// Text container, see docs/formats.md.
void write_field(std::ostream& os, const SpectralField& field);
SpectralField read_field(std::istream& is);

}  // namespace parabver
