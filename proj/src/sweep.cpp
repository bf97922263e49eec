#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

#include "xydm/free_fermion.hpp"
#include "xydm/parallel.hpp"
#include "xydm/probes.hpp"
#include "xydm/sweep.hpp"

namespace xydm {

namespace {

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

void set_axis(ModelParams& params, const std::string& axis, double value) {
  if (axis == "lambda") params.lambda = value;
  else if (axis == "D") params.D = value;
  else if (axis == "gamma") params.gamma = value;
  else if (axis == "N") params.N = static_cast<int>(value);
  else throw std::invalid_argument("unknown sweep axis '" + axis + "' (expected lambda|D|gamma|N)");
}

double observe(const std::string& name, const ModelParams& p, const SweepSpec& spec) {
  if (name == "energy") return ground_state(p, spec.sector).energy;
  if (name == "gap") return excitation_gap(p);
  if (name == "min_lambda") return ground_state(p, spec.sector).min_lambda;
  if (name == "beta") return geometric_phase(p);
  if (name == "beta_per_site") return geometric_phase(p) / p.N;
  if (name == "dbeta") return gp_derivative(p, spec.h);
  if (name == "fidelity") return fidelity(p, spec.delta);
  if (name == "curvature") return energy_curvature(p, spec.h);
  if (name == "valid_vacuum") return valid_vacuum(p) ? 1.0 : 0.0;
  throw std::invalid_argument("unknown observable '" + name + "'");
}

}  // namespace

const std::vector<std::string>& known_observables() {
  static const std::vector<std::string> names{"energy", "gap",      "min_lambda", "beta",        "beta_per_site",
                                              "dbeta",  "fidelity", "curvature",  "valid_vacuum"};
  return names;
}

SweepTable run_sweep(const ModelParams& templ, const SweepSpec& spec) {
  if (spec.axis != "lambda" && spec.axis != "D" && spec.axis != "gamma" && spec.axis != "N") {
    throw std::invalid_argument("unknown sweep axis '" + spec.axis + "' (expected lambda|D|gamma|N)");
  }
  if (!(spec.lo < spec.hi)) throw std::invalid_argument("sweep needs lo < hi");
  if (spec.steps < 2) throw std::invalid_argument("sweep needs steps >= 2 (got " + std::to_string(spec.steps) + ")");
  if (spec.observables.empty()) throw std::invalid_argument("sweep needs at least one observable");
  for (const auto& name : spec.observables) {
    const auto& known = known_observables();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw std::invalid_argument("unknown observable '" + name + "'");
    }
  }
  if (!(spec.h > 0.0)) throw std::invalid_argument("derivative step h must be > 0");

  std::vector<double> axis;
  for (int i = 0; i < spec.steps; ++i) {
    double v = i == spec.steps - 1 ? spec.hi : spec.lo + (spec.hi - spec.lo) * i / (spec.steps - 1);
    if (spec.axis == "N") v = std::round(v);
    axis.push_back(v);
  }
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());

  // Validate every grid point before spending time on any of them.
  for (const double v : axis) {
    ModelParams p = templ;
    set_axis(p, spec.axis, v);
    p.validate();
  }

  SweepTable table;
  table.axis_name = spec.axis;
  table.columns = spec.observables;
  table.metadata.params = templ;
  table.metadata.grid = "axis=" + spec.axis + " lo=" + format_real(spec.lo) + " hi=" + format_real(spec.hi) +
                        " steps=" + std::to_string(spec.steps) + " sector=" + std::string(to_string(spec.sector)) +
                        " h=" + format_real(spec.h) + " delta=" + format_real(spec.delta);
  table.rows.resize(axis.size());
  parallel_for(axis.size(), spec.workers, [&](std::size_t i) {
    ModelParams p = templ;
    set_axis(p, spec.axis, axis[i]);
    SweepRow row;
    row.axis_value = axis[i];
    for (const auto& name : spec.observables) row.values.push_back(observe(name, p, spec));
    table.rows[i] = std::move(row);
  });
  return table;
}

UniformDraws::UniformDraws(std::uint64_t seed) : engine_(seed) {}

double UniformDraws::next(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

CheckResult run_check(const CheckOptions& options) {
  if (options.sizes.empty()) throw std::invalid_argument("check needs at least one chain length");
  for (const int n : options.sizes) {
    if (n < 2 || n > kMaxSpinSites) {
      throw std::invalid_argument("check sizes must lie in [2, " + std::to_string(kMaxSpinSites) + "] (got " +
                                  std::to_string(n) + ")");
    }
  }
  if (options.draws < 1) throw std::invalid_argument("check needs draws >= 1");

  UniformDraws draws(options.seed);
  std::vector<ModelParams> points;
  for (const int n : options.sizes) {
    for (int d = 0; d < options.draws; ++d) {
      ModelParams p;
      p.N = n;
      p.J = draws.next(-2.0, 2.0);
      p.gamma = draws.next(-1.0, 1.0);
      p.lambda = draws.next(-2.0, 2.0);
      p.D = draws.next(-2.0, 2.0);
      points.push_back(p);
    }
  }

  CheckResult result;
  result.entries.resize(points.size());
  parallel_for(points.size(), options.workers, [&](std::size_t i) {
    CheckEntry entry;
    entry.cross = crosscheck(points[i]);
    if (points[i].N <= kMaxFockSites) entry.jw = jw_consistency_check(points[i]);
    result.entries[i] = std::move(entry);
  });

  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    const CheckEntry& e = result.entries[i];
    if (e.cross.abs_error > result.entries[result.worst].cross.abs_error) result.worst = i;
    if (!(e.cross.abs_error <= kCrosscheckTolerance)) result.passed = false;
    if (e.jw && !(e.jw->bdg_multiset_error <= kSpectralTolerance && e.jw->abs_error <= kCrosscheckTolerance)) {
      result.passed = false;
    }
  }
  return result;
}

std::string check_to_csv(const CheckResult& result, const CheckOptions& options) {
  std::string out;
  out += "# version=" + std::string(kVersion) + "\n";
  out += "# generator=mt19937_64\n";
  out += "# seed=" + std::to_string(options.seed) + "\n";
  out += "# sizes=" + join_ints(options.sizes) + "\n";
  out += "# draws_per_size=" + std::to_string(options.draws) + "\n";
  out += "# passed=" + std::string(result.passed ? "true" : "false") + "\n";
  out += "draw,N,J,gamma,lambda,D,spin_e0,analytic_e0,abs_error,spin_gap,matched_sector,bdg_error,jw_spectral_error\n";
  for (std::size_t i = 0; i < result.entries.size(); ++i) {
    const OracleReport& r = result.entries[i].cross;
    const auto& p = r.params;
    out += std::to_string(i) + "," + std::to_string(p.N) + "," + format_real(p.J) + "," + format_real(p.gamma) + "," +
           format_real(p.lambda) + "," + format_real(p.D) + "," + format_real(r.spin_ground_energy) + "," +
           format_real(r.analytic_ground_energy) + "," + format_real(r.abs_error) + "," + format_real(r.spin_gap) +
           "," + std::string(to_string(r.matched_sector)) + "," + format_real(r.bdg_multiset_error) + "," +
           (result.entries[i].jw ? format_real(result.entries[i].jw->bdg_multiset_error) : std::string("nan")) + "\n";
  }
  return out;
}

std::string check_to_json(const CheckResult& result, const CheckOptions& options) {
  nlohmann::ordered_json doc;
  doc["metadata"] = {{"version", kVersion},
                     {"generator", "mt19937_64"},
                     {"seed", options.seed},
                     {"sizes", options.sizes},
                     {"draws_per_size", options.draws},
                     {"passed", result.passed}};
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (const CheckEntry& e : result.entries) {
    const OracleReport& r = e.cross;
    nlohmann::ordered_json item;
    item["params"] = {{"J", r.params.J}, {"gamma", r.params.gamma}, {"D", r.params.D},
                      {"lambda", r.params.lambda}, {"N", r.params.N}};
    item["spin_ground_energy"] = r.spin_ground_energy;
    item["analytic_ground_energy"] = r.analytic_ground_energy;
    item["abs_error"] = r.abs_error;
    item["spin_gap"] = r.spin_gap;
    item["matched_sector"] = to_string(r.matched_sector);
    item["bdg_multiset_error"] = r.bdg_multiset_error;
    if (e.jw) item["jw_spectral_error"] = e.jw->bdg_multiset_error;
    reports.push_back(std::move(item));
  }
  doc["reports"] = std::move(reports);
  return doc.dump(2) + "\n";
}

std::string scaling_to_json(const ScalingFit& fit, const ModelParams& templ, LambdaWindow window,
                            const ScalingOptions& options) {
  nlohmann::ordered_json doc;
  doc["metadata"] = {{"version", kVersion},
                     {"params", {{"J", templ.J}, {"gamma", templ.gamma}, {"D", templ.D}}},
                     {"window", {window.lo, window.hi}},
                     {"grid_points", options.grid_points},
                     {"h", options.h}};
  doc["fit"] = {{"sizes", fit.sizes},
                {"peak_locations", fit.peak_locations},
                {"peak_heights", fit.peak_heights},
                {"log_fit_slope", fit.log_fit_slope},
                {"log_fit_intercept", fit.log_fit_intercept},
                {"log_fit_r2", fit.log_fit_r2}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < fit.sizes.size(); ++i) {
    rows.push_back({fit.sizes[i], fit.peak_locations[i], fit.peak_heights[i]});
  }
  doc["columns"] = {"N", "lambda_m", "height_per_site"};
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string scaling_to_csv(const ScalingFit& fit, const ModelParams& templ, LambdaWindow window,
                           const ScalingOptions& options) {
  SweepTable table;
  table.axis_name = "N";
  table.columns = {"lambda_m", "height_per_site"};
  table.metadata.params = templ;
  table.metadata.params.N = fit.sizes.front();
  table.metadata.grid = "window=" + format_real(window.lo) + ":" + format_real(window.hi) +
                        " grid_points=" + std::to_string(options.grid_points) + " h=" + format_real(options.h);
  table.metadata.extra = {{"log_fit_slope", format_real(fit.log_fit_slope)},
                          {"log_fit_intercept", format_real(fit.log_fit_intercept)},
                          {"log_fit_r2", format_real(fit.log_fit_r2)}};
  for (std::size_t i = 0; i < fit.sizes.size(); ++i) {
    table.rows.push_back({static_cast<double>(fit.sizes[i]), {fit.peak_locations[i], fit.peak_heights[i]}});
  }
  return to_csv(table);
}

}  // namespace xydm
