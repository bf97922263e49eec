#include "xydm/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xydm {

void ModelParams::validate() const {
  if (N < 2) {
    throw std::invalid_argument("chain length N must be >= 2 (got " + std::to_string(N) + ")");
  }
  if (!std::isfinite(J) || !std::isfinite(gamma) || !std::isfinite(D) || !std::isfinite(lambda)) {
    throw std::invalid_argument("couplings J, gamma, D, lambda must be finite");
  }
}

std::string_view to_string(SectorTag sector) {
  switch (sector) {
    case SectorTag::PaperGrid:
      return "paper";
    case SectorTag::EvenParity:
      return "even";
    case SectorTag::OddParity:
      return "odd";
  }
  return "unknown";
}

SectorTag parse_sector(std::string_view text) {
  if (text == "paper" || text == "PaperGrid") return SectorTag::PaperGrid;
  if (text == "even" || text == "EvenParity") return SectorTag::EvenParity;
  if (text == "odd" || text == "OddParity") return SectorTag::OddParity;
  throw std::invalid_argument("unknown sector '" + std::string(text) + "' (expected paper|even|odd)");
}

double momentum(ModeLabel k, int N) {
  return std::numbers::pi * static_cast<double>(k.twice) / static_cast<double>(N);
}

SinCos mode_sincos(ModeLabel k, int N) {
  // Work in units where the full turn is 8N: angle = pi * v / (4N).
  const std::int64_t period = 2 * static_cast<std::int64_t>(N);
  const std::int64_t r = ((k.twice % period) + period) % period;
  const std::int64_t n = N;
  std::int64_t v = 4 * r;
  double sign_s = 1.0;
  double sign_c = 1.0;
  bool swap = false;
  if (v >= 4 * n) {  // angle - pi
    v -= 4 * n;
    sign_s = -sign_s;
    sign_c = -sign_c;
  }
  if (v > 2 * n) {  // pi - angle
    v = 4 * n - v;
    sign_c = -sign_c;
  }
  if (v > n) {  // pi/2 - angle
    v = 2 * n - v;
    swap = true;
  }
  double s0 = 0.0;
  double c0 = 1.0;
  if (v != 0) {
    const double angle = std::numbers::pi * static_cast<double>(v) / static_cast<double>(4 * n);
    s0 = std::sin(angle);
    c0 = std::cos(angle);
  }
  SinCos out;
  out.sin = sign_s * (swap ? c0 : s0) + 0.0;
  out.cos = sign_c * (swap ? s0 : c0) + 0.0;
  return out;
}

bool is_self_conjugate(ModeLabel k, int N) {
  const std::int64_t period = 2 * static_cast<std::int64_t>(N);
  const std::int64_t r = ((k.twice % period) + period) % period;
  return r == 0 || r == N;
}

std::vector<ModeLabel> build_kgrid(int N, SectorTag sector) {
  if (N < 2) {
    throw std::invalid_argument("chain length N must be >= 2 (got " + std::to_string(N) + ")");
  }
  std::vector<ModeLabel> grid;
  grid.reserve(static_cast<std::size_t>(N));
  const std::int64_t n = N;
  switch (sector) {
    case SectorTag::PaperGrid:
      for (std::int64_t t = -(n - 1); t <= n - 1; t += 2) grid.push_back({t});
      break;
    case SectorTag::EvenParity:
    case SectorTag::OddParity: {
      // 2k in (-N, N] with 2k odd (half-odd k) or even (integer k).
      const std::int64_t parity = sector == SectorTag::EvenParity ? 1 : 0;
      for (std::int64_t t = -n + 1; t <= n; ++t) {
        if (((t % 2) + 2) % 2 == parity) grid.push_back({t});
      }
      break;
    }
  }
  return grid;
}

double pairing_radius(const ModelParams& params, ModeLabel k) {
  const SinCos sc = mode_sincos(k, params.N);
  const double field_part = params.lambda - params.J * sc.cos;
  const double pairing_part = params.J * params.gamma * sc.sin;
  return std::hypot(field_part, pairing_part);
}

BogoliubovAngle bogoliubov_angle(const ModelParams& params, ModeLabel k) {
  params.validate();
  const SinCos sc = mode_sincos(k, params.N);
  const double field_part = params.lambda - params.J * sc.cos;
  const double pairing_part = params.J * params.gamma * sc.sin;
  const double radius = std::hypot(field_part, pairing_part);
  if (radius == 0.0) return {1.0, 0.0, true};
  return {field_part / radius, pairing_part / radius, false};
}

double dispersion(const ModelParams& params, ModeLabel k) {
  params.validate();
  const double root_term = 2.0 * pairing_radius(params, k);
  const double dm_term = 2.0 * params.D * mode_sincos(k, params.N).sin;
  return root_term + dm_term;
}

KMode make_mode(const ModelParams& params, ModeLabel k) {
  const BogoliubovAngle angle = bogoliubov_angle(params, k);
  return KMode{k, momentum(k, params.N), angle.cos_theta, angle.sin_theta, dispersion(params, k),
               angle.degenerate};
}

}  // namespace xydm
