#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "parabver/parabolicity.hpp"
#include "parabver/polynomial.hpp"
#include "parabver/symbols.hpp"
#include "parabver/verifier.hpp"
#include "parabver/weights.hpp"

namespace parabver {

/// Stage names in execution order.
inline const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names{"weights",       "parabolicity", "compatibility",
                                              "interpolation", "sweep",        "norms"};
  return names;
}

struct WeightsSettings {
  std::vector<double> lambdas{0.5, 2.0, 10.0};
  double probe = 1e8;
  double tol = 0.05;
  double bound_d = 1e8;
  int grid = 200;
};

struct CompatibilitySettings {
  std::vector<double> s;
  double tol = 1e-10;
  bool listing = false;  ///< include the defect polynomials in the report
};

struct DataSettings {
  std::vector<MultiPoly> u;  ///< empty unless given
  std::vector<MultiPoly> f, g, h;  ///< explicit data, added on top of Lambda u when u is given
  bool has_u = false;
  bool has_explicit = false;
};

struct InterpolationSettings {
  double s0 = 2.0, s = 3.0, s1 = 4.0;
  std::vector<double> midpoint_s{3.0, 3.5, 4.7};
  std::vector<double> eps{0.1, 0.2, 0.4};
  int grid = 200;
  double r_max = 1e8;
  double tol = 1e-12;
};

struct SweepSettings {
  double s = 3.0;
  SweepOptions options;
};

struct NormSettings {
  std::vector<double> s{3.0};
  int grid = 32;
};

struct RunConfig {
  std::string source;
  std::optional<ProblemSpec> problem;
  SlowlyVaryingFn phi;
  std::vector<std::string> stages;  ///< enabled, in execution order
  WeightsSettings weights;
  ParabolicityOptions parabolicity;
  CompatibilitySettings compatibility;
  DataSettings data;
  InterpolationSettings interpolation;
  SweepSettings sweep;
  NormSettings norms;
};

/// Parses the line-oriented config format (docs/formats.md). Errors carry line and column.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig parse_config_file(const std::string& path);

}  // namespace parabver
