#pragma once

// Quantum-phase-transition detectors built only from the Bogoliubov angles
// on the PaperGrid. None of these read ModelParams::D, so every output is
// bit-identical under a change of D alone.

#include <vector>

#include "xydm/model.hpp"

namespace xydm {

struct ProbeResult {
  double beta = 0.0;
  double beta_per_site = 0.0;
  double dbeta_dlambda = 0.0;
  double fidelity = 1.0;
  ModelParams params;
  /// min_k Lambda_k >= 0: the Bogoliubov vacuum is the true ground state.
  bool valid_vacuum = true;
};

/// beta = sum_{k > 0} pi (1 - cos theta_k): the phase picked up by the
/// ground state when every spin is rotated by 2 pi about z.
double geometric_phase(const ModelParams& params);

/// [beta(lambda + h) - beta(lambda - h)] / 2h. Throws for h <= 0.
double gp_derivative(const ModelParams& params, double h);

/// Overlap magnitude of the Bogoliubov vacua at lambda and lambda + delta:
/// prod_{k > 0} |cos((theta_k(lambda) - theta_k(lambda + delta)) / 2)|.
double fidelity(const ModelParams& params, double delta);

/// min_k Lambda_k >= 0 over the PaperGrid.
bool valid_vacuum(const ModelParams& params);

ProbeResult evaluate_probes(const ModelParams& params, double h, double delta);

struct LambdaWindow {
  double lo = 0.5;
  double hi = 1.5;
};

struct PeakLocation {
  double lambda_m = 0.0;
  /// |dbeta/dlambda| at lambda_m.
  double height = 0.0;
  /// height / N.
  double height_per_site = 0.0;
};

inline constexpr int kDefaultPeakGridPoints = 201;
inline constexpr double kDefaultPeakStep = 1e-5;
inline constexpr double kPeakTolerance = 1e-6;

/// Maximizes |dbeta/dlambda| over the window for a chain of N sites: uniform
/// scan with grid_points samples, then golden-section refinement of the best
/// bracket down to kPeakTolerance in lambda. The template's lambda and N are
/// ignored.
PeakLocation locate_peak(const ModelParams& templ, LambdaWindow window, int grid_points, int N,
                         double h = kDefaultPeakStep);

struct ScalingFit {
  std::vector<int> sizes;
  std::vector<double> peak_locations;
  /// Per-site heights |d(beta/N)/dlambda| at the peak; these are what the log fit uses.
  std::vector<double> peak_heights;
  double log_fit_slope = 0.0;
  double log_fit_intercept = 0.0;
  double log_fit_r2 = 0.0;
};

struct ScalingOptions {
  int grid_points = kDefaultPeakGridPoints;
  double h = kDefaultPeakStep;
  unsigned workers = 1;
};

/// Runs locate_peak for every size (sorted ascending, at least three
/// distinct) and least-squares fits peak heights against ln N.
ScalingFit scaling_study(double J, double gamma, double D, std::vector<int> sizes, LambdaWindow window,
                         const ScalingOptions& options = {});

}  // namespace xydm
