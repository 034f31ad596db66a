#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parabver/compatibility.hpp"
#include "parabver/config.hpp"
#include "parabver/interpolation.hpp"
#include "parabver/parabolicity.hpp"
#include "parabver/verifier.hpp"
#include "parabver/weights.hpp"

namespace parabver {

struct RunOptions {
  std::vector<std::string> stages;  ///< replaces the configured stages when non-empty
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;  ///< compatibility residual tolerance
};

struct Assertion {
  std::string stage;
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct NormRow {
  double s = 0.0;
  std::string phi;
  int cutoff = 0;  ///< extension grid for polynomial data
  double solution_norm = 0.0;
  double data_norm = 0.0;
  double ratio = 0.0;
};

struct CompatibilityEntry {
  double s = 0.0;
  std::optional<CompatibilitySystem> system;
  std::string error;
};

struct IdentityResult {
  double s0 = 0.0, s = 0.0, s1 = 0.0;
  double max_error = 0.0;
  std::vector<MidpointReport> midpoints;
};

struct RunReport {
  RunConfig config;
  std::vector<std::string> stages;
  std::optional<KaramataReport> karamata;
  std::optional<BoundednessReport> boundedness;
  std::optional<ParabolicityReport> parabolicity;
  std::vector<CompatibilityEntry> compatibility;
  std::optional<IdentityResult> identity;
  std::optional<SweepTable> sweep;
  std::vector<NormRow> norms;
  std::vector<std::string> stage_errors;
  std::vector<Assertion> assertions;

  bool pass() const;
  /// Deterministic JSON with stable key order and no timestamps.
  std::string report_json() const;
  /// kind,s,phi,cutoff,draw,ratio
  std::string ratios_csv() const;
};

RunReport run(const RunConfig& config, const RunOptions& options = {});
RunReport run(const std::string& config_path, const RunOptions& options = {});

/// Data triple of a config: Lambda u (when u is given) plus explicit f, g, h.
LambdaImage config_data(const RunConfig& config);

}  // namespace parabver
