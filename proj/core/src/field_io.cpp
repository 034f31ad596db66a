#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "parabver/error.hpp"
#include "parabver/spectral.hpp"

namespace parabver {

namespace {

constexpr const char* kMagic = "parabver-spectral-field";
constexpr int kVersion = 1;

void expect_keyword(std::istream& is, const std::string& keyword) {
  std::string word;
  if (!(is >> word) || word != keyword)
    throw ArgumentError("spectral field file: expected '" + keyword + "', got '" + word + "'");
}

}  // namespace

void write_field(std::ostream& os, const SpectralField& field) {
  std::ostringstream buf;
  buf.precision(17);
  buf << kMagic << " " << kVersion << "\n";
  buf << "dims " << field.dims() << "\n";
  buf << "time_axis " << (field.has_time() ? 1 : 0) << "\n";
  buf << "grid";
  for (int m : field.grid()) buf << " " << m;
  buf << "\nperiods";
  for (double p : field.periods()) buf << " " << p;
  buf << "\ncoeffs " << field.size() << "\n";
  for (const cplx& c : field.coeffs()) buf << c.real() << " " << c.imag() << "\n";
  os << buf.str();
}

SpectralField read_field(std::istream& is) {
  expect_keyword(is, kMagic);
  int version = 0;
  if (!(is >> version) || version != kVersion) throw ArgumentError("unsupported spectral field version");
  expect_keyword(is, "dims");
  int dims = 0;
  if (!(is >> dims) || dims < 1) throw ArgumentError("spectral field file: bad dims");
  expect_keyword(is, "time_axis");
  int time_axis = 0;
  if (!(is >> time_axis) || (time_axis != 0 && time_axis != 1))
    throw ArgumentError("spectral field file: time_axis must be 0 or 1");
  expect_keyword(is, "grid");
  std::vector<int> grid(static_cast<std::size_t>(dims));
  for (int& m : grid)
    if (!(is >> m)) throw ArgumentError("spectral field file: bad grid");
  expect_keyword(is, "periods");
  std::vector<double> periods(static_cast<std::size_t>(dims));
  for (double& p : periods)
    if (!(is >> p)) throw ArgumentError("spectral field file: bad periods");
  SpectralField field(grid, periods, time_axis == 1);
  expect_keyword(is, "coeffs");
  std::size_t count = 0;
  if (!(is >> count) || count != field.size())
    throw ArgumentError("spectral field file: coefficient count does not match the grid");
  for (cplx& c : field.coeffs()) {
    double re = 0.0, im = 0.0;
    if (!(is >> re >> im)) throw ArgumentError("spectral field file: truncated coefficient payload");
    c = {re, im};
  }
  return field;
}

}  // namespace parabver
