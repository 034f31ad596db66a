#include "parabver/run.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "parabver/error.hpp"

namespace parabver {

using json = nlohmann::ordered_json;

namespace {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json interior_sample_json(const InteriorSample& s) { return json{{"x", s.x}, {"t", s.t}, {"xi", s.xi}}; }

json boundary_sample_json(const BoundarySample& s) {
  return json{{"x", s.x}, {"t", s.t}, {"xi", s.xi}, {"nu", s.nu}, {"p", complex_json(s.p)}};
}

json parabolicity_json(const ParabolicityReport& r) {
  json out;
  out["pass"] = r.pass();
  out["options"] = json{{"interior_samples", r.options.interior_samples},
                        {"boundary_samples", r.options.boundary_samples},
                        {"seed", r.options.seed},
                        {"tol", r.options.tol}};
  const auto& ci = r.condition_i;
  out["condition_i"] = json{{"pass", ci.pass},
                            {"delta_estimate", ci.delta_estimate},
                            {"samples", ci.samples},
                            {"worst", interior_sample_json(ci.worst)}};
  json cii;
  cii["applicable"] = r.condition_ii_applicable;
  if (r.condition_ii) {
    const auto& c = *r.condition_ii;
    cii["pass"] = c.pass;
    cii["min_singular_value"] = c.min_singular_value;
    cii["tol"] = c.tol;
    cii["m"] = c.m;
    cii["delta1"] = c.delta1;
    cii["samples"] = c.samples;
    cii["worst"] = boundary_sample_json(c.worst);
  }
  if (!r.condition_ii_note.empty()) cii["note"] = r.condition_ii_note;
  out["condition_ii"] = cii;
  return out;
}

json compatibility_json(const std::vector<CompatibilityEntry>& entries, bool listing) {
  json out = json::array();
  for (const auto& e : entries) {
    json item;
    item["s"] = e.s;
    if (!e.error.empty()) {
      item["error"] = e.error;
    } else {
      const auto& sys = *e.system;
      item["compatible"] = sys.compatible();
      item["tol"] = sys.tol;
      item["counts"] = sys.counts;
      item["max_residual"] = sys.max_residual();
      json conds = json::array();
      for (const auto& c : sys.conditions) {
        json cj{{"j", c.j + 1}, {"r", c.r}, {"residual", c.residual}, {"satisfied", c.satisfied}};
        if (listing) cj["defect"] = c.defect.to_string();
        conds.push_back(cj);
      }
      item["conditions"] = conds;
    }
    out.push_back(item);
  }
  return out;
}

json sweep_json(const SweepTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back(json{{"cutoff", r.cutoff},
                        {"samples", r.ratios.size()},
                        {"min", r.min},
                        {"median", r.median},
                        {"max", r.max},
                        {"fixed_ratio", r.fixed_ratio}});
  return json{{"s", t.s},
              {"periods", t.periods},
              {"rows", rows},
              {"spread", t.spread},
              {"spread_bound", t.spread_bound},
              {"spread_bound_origin", "empirical policy"},
              {"fixed_invariance", t.fixed_invariance},
              {"invariance_tol", t.invariance_tol},
              {"redraws", t.redraws},
              {"surrogate", true}};
}

// Shortest of %.15g / %.17g that round-trips.
std::string format_double(double v) {
  for (int precision : {15, 17}) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    if (precision == 17 || std::stod(os.str()) == v) return os.str();
  }
  return {};
}

void add(RunReport& report, std::string stage, std::string name, bool pass, double value, double threshold,
         std::string detail = {}) {
  report.assertions.push_back({std::move(stage), std::move(name), pass, value, threshold, std::move(detail)});
}

// ------------------------------------------------------------------- stages

void stage_weights(RunReport& report) {
  const auto& cfg = report.config;
  report.karamata = karamata_check(cfg.phi, cfg.weights.lambdas, cfg.weights.probe, cfg.weights.tol);
  report.boundedness = boundedness_check(cfg.phi, cfg.weights.bound_d, cfg.weights.grid);
  add(report, "weights", "karamata", report.karamata->pass, report.karamata->worst_deviation, cfg.weights.tol,
      "worst lambda " + format_double(report.karamata->worst_lambda));
  add(report, "weights", "bounded_on_compacts", report.boundedness->pass,
      std::max(report.boundedness->max_phi, report.boundedness->max_inv_phi), report.boundedness->upper);
}

void stage_parabolicity(RunReport& report, const RunOptions& options) {
  ParabolicityOptions o = report.config.parabolicity;
  if (options.seed) o.seed = *options.seed;
  report.parabolicity = check_parabolicity(*report.config.problem, o);
  const auto& p = *report.parabolicity;
  add(report, "parabolicity", "condition_i", p.condition_i.pass, p.condition_i.delta_estimate, 0.0,
      "delta_estimate must be positive");
  if (p.condition_ii)
    add(report, "parabolicity", "condition_ii", p.condition_ii->pass, p.condition_ii->min_singular_value,
        p.condition_ii->tol, "minimum singular value of the covering matrix");
  else if (p.condition_ii_applicable && p.condition_i.pass)
    add(report, "parabolicity", "condition_ii", false, 0.0, o.tol, p.condition_ii_note);
}

void stage_compatibility(RunReport& report, const RunOptions& options) {
  const auto& cfg = report.config;
  const LambdaImage data = config_data(cfg);
  CompatibilityOptions o;
  o.tol = options.tol.value_or(cfg.compatibility.tol);
  for (double s : cfg.compatibility.s) {
    CompatibilityEntry entry;
    entry.s = s;
    try {
      entry.system = compatibility_residuals(*cfg.problem, data.f, data.g, data.h, s, o);
      add(report, "compatibility", "residuals at s=" + format_double(s), entry.system->compatible(),
          entry.system->max_residual(), o.tol);
    } catch (const Error& e) {
      entry.error = e.what();
      add(report, "compatibility", "residuals at s=" + format_double(s), false, 0.0, o.tol, e.what());
    }
    report.compatibility.push_back(std::move(entry));
  }
}

void stage_interpolation(RunReport& report) {
  const auto& c = report.config.interpolation;
  IdentityResult result;
  result.s0 = c.s0;
  result.s = c.s;
  result.s1 = c.s1;
  const std::vector<double> grid = log_grid(1.0, c.r_max, c.grid);
  result.max_error = verify_weight_identity(InterpolationParam(c.s0, c.s, c.s1, report.config.phi), grid);
  add(report, "interpolation", "weight_identity", result.max_error <= c.tol, result.max_error, c.tol);
  for (double s : c.midpoint_s) {
    result.midpoints.push_back(midpoint_space_weights(s, c.eps, report.config.phi, grid));
    const auto& m = result.midpoints.back();
    add(report, "interpolation", "midpoint at s=" + format_double(s), m.pass(c.tol),
        std::max(m.max_deviation, m.eps_spread), c.tol);
  }
  report.identity = std::move(result);
}

void stage_sweep(RunReport& report, const RunOptions& options) {
  const auto& cfg = report.config;
  SweepOptions o = cfg.sweep.options;
  if (options.seed) o.seed = *options.seed;
  report.sweep = isomorphism_sweep(*cfg.problem, RegularityIndex(cfg.sweep.s, cfg.phi), o);
  const auto& t = *report.sweep;
  add(report, "sweep", "ratio_spread", t.spread_ok(), t.spread, t.spread_bound, "max/min over all draws");
  add(report, "sweep", "fixed_input_invariance", t.invariance_ok(), t.fixed_invariance, t.invariance_tol);
}

void stage_norms(RunReport& report) {
  const auto& cfg = report.config;
  if (!cfg.data.has_u) throw ArgumentError("the norms stage needs a solution u in [data]");
  SurrogateOptions o;
  o.extension.grid = cfg.norms.grid;
  const LambdaImage image = apply_lambda(*cfg.problem, cfg.data.u);
  for (double s : cfg.norms.s) {
    const RegularityIndex idx(s, cfg.phi);
    NormRow row;
    row.s = s;
    row.phi = cfg.phi.describe();
    row.cutoff = cfg.norms.grid;
    row.solution_norm = solution_norm(*cfg.problem, cfg.data.u, idx, o);
    row.data_norm = q_norm(*cfg.problem, image, idx, o);
    row.ratio = row.data_norm / row.solution_norm;
    const bool ok = std::isfinite(row.ratio) && row.ratio > 0.0;
    add(report, "norms", "ratio at s=" + format_double(s), ok, row.ratio, 0.0, "finite and positive");
    report.norms.push_back(row);
  }
}

}  // namespace

LambdaImage config_data(const RunConfig& config) {
  if (!config.problem) throw ArgumentError("config has no problem");
  const ProblemSpec& spec = *config.problem;
  LambdaImage data;
  if (config.data.has_u) {
    data = apply_lambda(spec, config.data.u);
  } else {
    data.f.assign(static_cast<std::size_t>(spec.N), MultiPoly(spec.n + 1));
    data.g = data.f;
    data.h = data.f;
  }
  LambdaImage extra{config.data.f, config.data.g, config.data.h};
  data += extra;
  return data;
}

bool RunReport::pass() const {
  return stage_errors.empty() &&
         std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

RunReport run(const RunConfig& config, const RunOptions& options) {
  RunReport report;
  report.config = config;
  report.stages = config.stages;
  if (!options.stages.empty()) {
    const auto& names = stage_names();
    for (const std::string& s : options.stages)
      if (std::find(names.begin(), names.end(), s) == names.end()) throw ArgumentError("unknown stage '" + s + "'");
    report.stages.clear();
    for (const std::string& name : names)
      if (std::find(options.stages.begin(), options.stages.end(), name) != options.stages.end())
        report.stages.push_back(name);
  }
  for (const std::string& stage : report.stages) {
    try {
      if (stage != "weights" && stage != "interpolation" && !config.problem)
        throw ArgumentError("stage needs a [problem] section");
      if (stage == "weights") stage_weights(report);
      else if (stage == "parabolicity") stage_parabolicity(report, options);
      else if (stage == "compatibility") stage_compatibility(report, options);
      else if (stage == "interpolation") stage_interpolation(report);
      else if (stage == "sweep") stage_sweep(report, options);
      else if (stage == "norms") stage_norms(report);
    } catch (const Error& e) {
      report.stage_errors.push_back(stage + ": " + e.what());
    }
  }
  return report;
}

RunReport run(const std::string& config_path, const RunOptions& options) {
  return run(parse_config_file(config_path), options);
}

std::string RunReport::report_json() const {
  json out;
  out["tool"] = json{{"name", "parabver"}, {"version", PARABVER_VERSION}};
  out["config"] = config.source;
  out["phi"] = config.phi.describe();
  out["stages"] = stages;
  out["pass"] = pass();

  json results = json::object();
  if (karamata) {
    results["weights"] = json{{"karamata",
                               {{"pass", karamata->pass},
                                {"probe_radius", karamata->probe_radius},
                                {"tolerance", karamata->tolerance},
                                {"lambdas", karamata->lambdas},
                                {"deviations", karamata->deviations},
                                {"worst_deviation", karamata->worst_deviation},
                                {"worst_lambda", karamata->worst_lambda}}},
                              {"boundedness",
                               {{"pass", boundedness->pass},
                                {"upper", boundedness->upper},
                                {"grid_size", boundedness->grid_size},
                                {"max_phi", boundedness->max_phi},
                                {"max_inv_phi", boundedness->max_inv_phi}}}};
  }
  if (parabolicity) results["parabolicity"] = parabolicity_json(*parabolicity);
  if (!compatibility.empty()) results["compatibility"] = compatibility_json(compatibility, config.compatibility.listing);
  if (identity) {
    json mids = json::array();
    for (const auto& m : identity->midpoints)
      mids.push_back(json{{"s", m.s}, {"eps", m.eps}, {"max_deviation", m.max_deviation}, {"eps_spread", m.eps_spread}});
    results["interpolation"] = json{{"s0", identity->s0},
                                    {"s", identity->s},
                                    {"s1", identity->s1},
                                    {"grid", config.interpolation.grid},
                                    {"r_max", config.interpolation.r_max},
                                    {"weight_identity_max_error", identity->max_error},
                                    {"midpoint", mids}};
  }
  if (sweep) results["sweep"] = sweep_json(*sweep);
  if (!norms.empty()) {
    json rows = json::array();
    for (const auto& r : norms)
      rows.push_back(json{{"s", r.s},
                          {"phi", r.phi},
                          {"grid", r.cutoff},
                          {"solution_norm", r.solution_norm},
                          {"data_norm", r.data_norm},
                          {"ratio", r.ratio},
                          {"surrogate", true}});
    results["norms"] = rows;
  }
  out["results"] = results;

  json asserts = json::array();
  for (const auto& a : assertions) {
    json aj{{"stage", a.stage}, {"name", a.name}, {"pass", a.pass}, {"value", a.value}, {"threshold", a.threshold}};
    if (!a.detail.empty()) aj["detail"] = a.detail;
    asserts.push_back(aj);
  }
  out["assertions"] = asserts;
  out["errors"] = stage_errors;
  return out.dump(2) + "\n";
}

std::string RunReport::ratios_csv() const {
  std::ostringstream os;
  os << "kind,s,phi,cutoff,draw,ratio\n";
  const std::string phi = config.phi.describe();
  auto quoted = [](const std::string& s) { return "\"" + s + "\""; };
  if (sweep) {
    for (const auto& row : sweep->rows) {
      for (std::size_t d = 0; d < row.ratios.size(); ++d)
        os << "sweep," << format_double(sweep->s) << "," << quoted(phi) << "," << row.cutoff << "," << d << ","
           << format_double(row.ratios[d]) << "\n";
      os << "fixed," << format_double(sweep->s) << "," << quoted(phi) << "," << row.cutoff << ",-1,"
         << format_double(row.fixed_ratio) << "\n";
    }
  }
  for (const auto& r : norms)
    os << "norms," << format_double(r.s) << "," << quoted(r.phi) << "," << r.cutoff << ",-1," << format_double(r.ratio)
       << "\n";
  return os.str();
}

}  // namespace parabver
