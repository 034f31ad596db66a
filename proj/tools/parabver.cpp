#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "parabver/config.hpp"
#include "parabver/error.hpp"
#include "parabver/run.hpp"
#include "parabver/spectral.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string csv_path_for(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + ".csv";
  return out.substr(0, dot) + ".csv";
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  return static_cast<bool>(os);
}

int run_command(const std::string& config_path, const std::vector<std::string>& stages,
                std::optional<std::uint64_t> seed, std::optional<double> tol, const std::string& out) {
  parabver::RunConfig config;
  try {
    config = parabver::parse_config_file(config_path);
  } catch (const parabver::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  }

  parabver::RunOptions options;
  options.stages = stages;
  options.seed = seed;
  options.tol = tol;
  parabver::RunReport report;
  try {
    report = parabver::run(config, options);
  } catch (const parabver::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string json = report.report_json();
  if (out.empty()) {
    std::cout << json;
  } else {
    if (!write_file(out, json) || !write_file(csv_path_for(out), report.ratios_csv())) {
      std::cerr << "error: cannot write " << out << "\n";
      return kExitUsage;
    }
  }

  for (const auto& a : report.assertions)
    std::cerr << (a.pass ? "PASS " : "FAIL ") << a.stage << ": " << a.name << " (value " << a.value
              << ", threshold " << a.threshold << (a.detail.empty() ? "" : ", " + a.detail) << ")\n";
  for (const auto& e : report.stage_errors) std::cerr << "ERROR " << e << "\n";
  return report.pass() ? 0 : kExitFail;
}

int norm_command(const std::string& path, double s, const std::vector<double>& theta, double splice) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    return kExitUsage;
  }
  try {
    const parabver::SpectralField field = parabver::read_field(in);
    const parabver::SlowlyVaryingFn phi =
        theta.empty() ? parabver::SlowlyVaryingFn() : parabver::SlowlyVaryingFn::log_multiscale(theta, splice);
    const parabver::RegularityIndex idx(s, phi);
    const double value = field.has_time() ? parabver::aniso_norm(field, idx) : parabver::iso_norm(field, idx);
    std::cout.precision(17);
    std::cout << (field.has_time() ? "aniso " : "iso ") << value << "\n";
  } catch (const parabver::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification harness for parabolic initial-boundary value problems in generalized Sobolev spaces"};
  app.set_version_flag("--version", std::string(PARABVER_CLI_VERSION));

  std::string config_path;
  std::vector<std::string> stages;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out;
  app.add_option("--config", config_path, "Config file")->check(CLI::ExistingFile);
  app.add_option("--stage", stages, "Run only this stage (repeatable)")
      ->check(CLI::IsMember(parabver::stage_names()));
  app.add_option("--seed", seed, "Override every configured seed");
  app.add_option("--tol", tol, "Override the compatibility residual tolerance");
  app.add_option("--out", out, "Write the JSON report here and the ratio table next to it as .csv");

  auto* norm = app.add_subcommand("norm", "Weighted norm of a spectral field file");
  std::string field_path;
  double s = 0.0;
  std::vector<double> theta;
  double splice = 0.0;
  norm->add_option("field", field_path, "Field file")->required()->check(CLI::ExistingFile);
  norm->add_option("--s", s, "Order s")->required();
  norm->add_option("--theta", theta, "Exponents of the log-multiscale phi (default phi = 1)");
  norm->add_option("--splice", splice, "Splice radius of phi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*norm) return norm_command(field_path, s, theta, splice);
  if (config_path.empty()) {
    std::cerr << "error: --config is required\n" << app.help();
    return kExitUsage;
  }
  return run_command(config_path, stages, seed, tol, out);
}
