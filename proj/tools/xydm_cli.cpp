// xydm: spectra, sweeps, oracle checks and scaling studies for the XY chain
// with Dzyaloshinskii-Moriya interaction.
//
// Exit codes: 0 success, 1 oracle check failed, 2 usage error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "xydm/sweep.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCheckFailed = 1;

struct CommonFlags {
  double J = 1.0;
  double gamma = 1.0;
  double D = 0.0;
  double lambda = 1.0;
  int N = 100;
  std::string sector = "paper";
  std::string format = "csv";
  std::string out;
  unsigned workers = 1;

  xydm::ModelParams params() const {
    xydm::ModelParams p{J, gamma, D, lambda, N};
    p.validate();
    return p;
  }
};

void add_couplings(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--J", f.J, "exchange coupling J")->capture_default_str();
  cmd.add_option("--gamma", f.gamma, "anisotropy gamma")->capture_default_str();
  cmd.add_option("--D", f.D, "Dzyaloshinskii-Moriya strength D")->capture_default_str();
  cmd.add_option("--lambda", f.lambda, "transverse field lambda")->capture_default_str();
}

void add_output(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  cmd.add_option("--out", f.out, "output path (default: standard output)");
  cmd.add_option("--workers", f.workers, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
}

void add_common(CLI::App& cmd, CommonFlags& f) {
  add_couplings(cmd, f);
  cmd.add_option("--N", f.N, "chain length")->capture_default_str();
  cmd.add_option("--sector", f.sector, "momentum grid")
      ->check(CLI::IsMember({"paper", "even", "odd"}))
      ->capture_default_str();
  add_output(cmd, f);
}

void emit(const CommonFlags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(f.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + f.out + "'");
  file << text;
}

std::string render(const CommonFlags& f, const xydm::SweepTable& table) {
  return f.format == "json" ? xydm::to_json(table) : xydm::to_csv(table);
}

xydm::LambdaWindow parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("--window expects lo:hi (got '" + text + "')");
  std::size_t used_lo = 0;
  std::size_t used_hi = 0;
  const std::string lo_text = text.substr(0, colon);
  const std::string hi_text = text.substr(colon + 1);
  xydm::LambdaWindow w;
  try {
    w.lo = std::stod(lo_text, &used_lo);
    w.hi = std::stod(hi_text, &used_hi);
  } catch (const std::exception&) {
    throw std::invalid_argument("--window expects lo:hi (got '" + text + "')");
  }
  if (used_lo != lo_text.size() || used_hi != hi_text.size()) {
    throw std::invalid_argument("--window expects lo:hi (got '" + text + "')");
  }
  if (!(w.lo < w.hi)) throw std::invalid_argument("--window needs lo < hi");
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solution, QPT probes and ED oracle for the XY chain with DM interaction"};
  app.require_subcommand(1);

  CommonFlags spectrum_flags;
  auto* spectrum = app.add_subcommand("spectrum", "Mode table: k, x, cos_theta, sin_theta, lambda_k");
  add_common(*spectrum, spectrum_flags);

  CommonFlags ground_flags;
  auto* ground = app.add_subcommand("ground", "Ground-state occupations and summary");
  add_common(*ground, ground_flags);

  CommonFlags sweep_flags;
  xydm::SweepSpec sweep_spec;
  std::vector<std::string> observables{"energy", "gap", "min_lambda"};
  auto* sweep = app.add_subcommand("sweep", "Evaluate observables over a uniform parameter grid");
  add_common(*sweep, sweep_flags);
  sweep->add_option("--axis", sweep_spec.axis, "swept parameter")
      ->check(CLI::IsMember({"lambda", "D", "gamma", "N"}))
      ->capture_default_str();
  sweep->add_option("--lo", sweep_spec.lo, "first grid value")->capture_default_str();
  sweep->add_option("--hi", sweep_spec.hi, "last grid value")->capture_default_str();
  sweep->add_option("--steps", sweep_spec.steps, "number of grid points (>= 2)")->capture_default_str();
  sweep->add_option("--observables", observables, "comma list of observables")->delimiter(',');
  sweep->add_option("--step", sweep_spec.h, "derivative step for dbeta and curvature")->capture_default_str();
  sweep->add_option("--delta", sweep_spec.delta, "field offset for fidelity")->capture_default_str();

  CommonFlags check_flags;
  xydm::CheckOptions check_options;
  auto* check = app.add_subcommand("check", "Random-draw comparison of spin ED against the free-fermion solution");
  check->add_option("--N", check_options.sizes, "comma list of chain lengths (<= 14)")->delimiter(',');
  check->add_option("--draws", check_options.draws, "draws per chain length")->capture_default_str();
  check->add_option("--seed", check_options.seed, "mt19937_64 seed")->capture_default_str();
  add_output(*check, check_flags);

  CommonFlags scaling_flags;
  scaling_flags.format = "json";
  std::vector<int> sizes{51, 101, 201, 401};
  std::string window_text = "0.5:1.5";
  xydm::ScalingOptions scaling_options;
  auto* scaling = app.add_subcommand("scaling", "Finite-size scaling of the geometric-phase derivative peak");
  add_couplings(*scaling, scaling_flags);
  scaling->add_option("--sizes", sizes, "comma list of chain lengths (>= 3)")->delimiter(',');
  scaling->add_option("--window", window_text, "lambda window lo:hi")->capture_default_str();
  scaling->add_option("--grid-points", scaling_options.grid_points, "scan points per size")->capture_default_str();
  scaling->add_option("--step", scaling_options.h, "derivative step")->capture_default_str();
  add_output(*scaling, scaling_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*spectrum) {
      const auto& f = spectrum_flags;
      emit(f, render(f, xydm::spectrum_table(f.params(), xydm::parse_sector(f.sector))));
    } else if (*ground) {
      const auto& f = ground_flags;
      emit(f, render(f, xydm::ground_table(f.params(), xydm::parse_sector(f.sector))));
    } else if (*sweep) {
      const auto& f = sweep_flags;
      sweep_spec.observables = observables;
      sweep_spec.sector = xydm::parse_sector(f.sector);
      sweep_spec.workers = f.workers;
      xydm::ModelParams templ{f.J, f.gamma, f.D, f.lambda, f.N};
      if (sweep_spec.axis != "N") templ.validate();
      emit(f, render(f, xydm::run_sweep(templ, sweep_spec)));
    } else if (*check) {
      check_options.workers = check_flags.workers;
      const xydm::CheckResult result = xydm::run_check(check_options);
      emit(check_flags, check_flags.format == "json" ? xydm::check_to_json(result, check_options)
                                                     : xydm::check_to_csv(result, check_options));
      const xydm::OracleReport& worst = result.entries[result.worst].cross;
      std::fprintf(stderr, "check: %zu reports, worst abs_error %.3e: %s\n", result.entries.size(), worst.abs_error,
                   result.passed ? "PASS" : "FAIL");
      if (!result.passed) {
        for (const auto& entry : result.entries) {
          const bool bad_cross = !(entry.cross.abs_error <= xydm::kCrosscheckTolerance);
          const bool bad_jw = entry.jw && !(entry.jw->bdg_multiset_error <= xydm::kSpectralTolerance &&
                                            entry.jw->abs_error <= xydm::kCrosscheckTolerance);
          if (!bad_cross && !bad_jw) continue;
          const auto& p = entry.cross.params;
          std::fprintf(stderr,
                       "offender: N=%d J=%.17g gamma=%.17g lambda=%.17g D=%.17g abs_error=%.3e jw_spectral=%.3e\n",
                       p.N, p.J, p.gamma, p.lambda, p.D, entry.cross.abs_error,
                       entry.jw ? entry.jw->bdg_multiset_error : 0.0);
        }
        const auto& p = worst.params;
        std::fprintf(stderr, "worst: N=%d J=%.17g gamma=%.17g lambda=%.17g D=%.17g\n", p.N, p.J, p.gamma, p.lambda,
                     p.D);
        return kExitCheckFailed;
      }
    } else if (*scaling) {
      const auto& f = scaling_flags;
      const xydm::LambdaWindow window = parse_window(window_text);
      scaling_options.workers = f.workers;
      xydm::ModelParams templ{f.J, f.gamma, f.D, f.lambda, 2};
      templ.validate();
      const xydm::ScalingFit fit = xydm::scaling_study(f.J, f.gamma, f.D, sizes, window, scaling_options);
      emit(f, f.format == "json" ? xydm::scaling_to_json(fit, templ, window, scaling_options)
                                 : xydm::scaling_to_csv(fit, templ, window, scaling_options));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "xydm: %s\n", e.what());
    return kExitUsage;
  }
  return 0;
}
