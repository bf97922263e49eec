#include "xydm/probes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "xydm/parallel.hpp"

namespace xydm {

namespace {

std::vector<ModeLabel> positive_modes(int N) {
  std::vector<ModeLabel> out;
  for (const ModeLabel k : build_kgrid(N, SectorTag::PaperGrid)) {
    if (k.twice > 0) out.push_back(k);
  }
  return out;
}

ModelParams with_lambda(ModelParams params, double lambda) {
  params.lambda = lambda;
  return params;
}

double abs_derivative(const ModelParams& templ, int N, double lambda, double h) {
  ModelParams p = templ;
  p.N = N;
  p.lambda = lambda;
  return std::abs(gp_derivative(p, h));
}

}  // namespace

double geometric_phase(const ModelParams& params) {
  params.validate();
  double beta = 0.0;
  for (const ModeLabel k : positive_modes(params.N)) {
    beta += std::numbers::pi * (1.0 - bogoliubov_angle(params, k).cos_theta);
  }
  return beta;
}

double gp_derivative(const ModelParams& params, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("derivative step h must be > 0");
  const double plus = geometric_phase(with_lambda(params, params.lambda + h));
  const double minus = geometric_phase(with_lambda(params, params.lambda - h));
  return (plus - minus) / (2.0 * h);
}

double fidelity(const ModelParams& params, double delta) {
  params.validate();
  if (!std::isfinite(delta)) throw std::invalid_argument("fidelity delta must be finite");
  const ModelParams shifted = with_lambda(params, params.lambda + delta);
  double overlap = 1.0;
  for (const ModeLabel k : positive_modes(params.N)) {
    const BogoliubovAngle a = bogoliubov_angle(params, k);
    const BogoliubovAngle b = bogoliubov_angle(shifted, k);
    const double theta_a = std::atan2(a.sin_theta, a.cos_theta);
    const double theta_b = std::atan2(b.sin_theta, b.cos_theta);
    overlap *= std::abs(std::cos(0.5 * (theta_a - theta_b)));
  }
  return overlap;
}

bool valid_vacuum(const ModelParams& params) {
  params.validate();
  for (const ModeLabel k : build_kgrid(params.N, SectorTag::PaperGrid)) {
    if (dispersion(params, k) < 0.0) return false;
  }
  return true;
}

ProbeResult evaluate_probes(const ModelParams& params, double h, double delta) {
  ProbeResult result;
  result.params = params;
  result.beta = geometric_phase(params);
  result.beta_per_site = result.beta / params.N;
  result.dbeta_dlambda = gp_derivative(params, h);
  result.fidelity = fidelity(params, delta);
  result.valid_vacuum = valid_vacuum(params);
  return result;
}

PeakLocation locate_peak(const ModelParams& templ, LambdaWindow window, int grid_points, int N, double h) {
  if (!(window.lo < window.hi) || !std::isfinite(window.lo) || !std::isfinite(window.hi)) {
    throw std::invalid_argument("lambda window must satisfy lo < hi");
  }
  if (grid_points < 3) throw std::invalid_argument("peak scan needs grid_points >= 3");
  if (N < 2) throw std::invalid_argument("chain length N must be >= 2 (got " + std::to_string(N) + ")");

  const double step = (window.hi - window.lo) / (grid_points - 1);
  auto node = [&](int i) { return i == grid_points - 1 ? window.hi : window.lo + step * i; };

  int best = 0;
  double best_value = -1.0;
  for (int i = 0; i < grid_points; ++i) {
    const double value = abs_derivative(templ, N, node(i), h);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }

  // Golden-section maximization on the bracket around the best node.
  double a = node(std::max(best - 1, 0));
  double b = node(std::min(best + 1, grid_points - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = abs_derivative(templ, N, c, h);
  double fd = abs_derivative(templ, N, d, h);
  while (b - a > kPeakTolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = abs_derivative(templ, N, c, h);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = abs_derivative(templ, N, d, h);
    }
  }
  double lambda_m = 0.5 * (a + b);
  double height = abs_derivative(templ, N, lambda_m, h);
  // Keep the scanned node if refinement could not beat it (flat or edge maxima).
  if (best_value > height) {
    lambda_m = node(best);
    height = best_value;
  }
  return PeakLocation{lambda_m, height, height / N};
}

ScalingFit scaling_study(double J, double gamma, double D, std::vector<int> sizes, LambdaWindow window,
                         const ScalingOptions& options) {
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.size() < 3) throw std::invalid_argument("scaling fit needs at least 3 distinct sizes");

  ModelParams templ;
  templ.J = J;
  templ.gamma = gamma;
  templ.D = D;
  templ.N = sizes.front();
  templ.validate();

  std::vector<PeakLocation> peaks(sizes.size());
  parallel_for(sizes.size(), options.workers, [&](std::size_t i) {
    peaks[i] = locate_peak(templ, window, options.grid_points, sizes[i], options.h);
  });

  ScalingFit fit;
  fit.sizes = sizes;
  for (const auto& peak : peaks) {
    fit.peak_locations.push_back(peak.lambda_m);
    fit.peak_heights.push_back(peak.height_per_site);
  }

  const double n = static_cast<double>(sizes.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    mean_x += std::log(static_cast<double>(sizes[i]));
    mean_y += fit.peak_heights[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double dx = std::log(static_cast<double>(sizes[i])) - mean_x;
    const double dy = fit.peak_heights[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.log_fit_slope = sxy / sxx;
  fit.log_fit_intercept = mean_y - fit.log_fit_slope * mean_x;
  fit.log_fit_r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace xydm
