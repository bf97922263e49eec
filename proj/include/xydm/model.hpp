#pragma once

// Couplings, momentum grids, Bogoliubov angles and the quasiparticle
// dispersion of the periodic XY chain with a z-axis Dzyaloshinskii-Moriya
// term in a transverse field:
//
//   H = -sum_j [ J(1+g)/2 sx_j sx_{j+1} + J(1-g)/2 sy_j sy_{j+1}
//                + D/2 (sx_j sy_{j+1} - sy_j sx_{j+1}) + lambda sz_j ]
//
// Every function here is pure. Mode labels k are integers or half-odd
// integers and are carried exactly as 2k.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace xydm {

struct ModelParams {
  double J = 1.0;
  double gamma = 1.0;
  double D = 0.0;
  double lambda = 1.0;
  int N = 2;

  /// Throws std::invalid_argument if N < 2 or any coupling is not finite.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

enum class SectorTag {
  PaperGrid,   ///< k = -(N-1)/2, ..., (N-1)/2 for every N
  EvenParity,  ///< antiperiodic fermions, half-odd-integer k
  OddParity,   ///< periodic fermions, integer k
};

std::string_view to_string(SectorTag sector);
/// Accepts "paper", "even", "odd" (and the enumerator names).
SectorTag parse_sector(std::string_view text);

/// Momentum label k stored as the integer 2k.
struct ModeLabel {
  std::int64_t twice = 0;

  constexpr double value() const { return static_cast<double>(twice) / 2.0; }
  constexpr auto operator<=>(const ModeLabel&) const = default;
};

/// x = 2 pi k / N in radians; x(-k) == -x(k) exactly.
double momentum(ModeLabel k, int N);

struct SinCos {
  double sin = 0.0;
  double cos = 1.0;
};

/// sin and cos of 2 pi k / N with the argument reduced to [0, pi/4] by exact
/// integer arithmetic, so quarter points give exact 0 and +-1 and the odd/even
/// symmetries under k -> -k hold bitwise.
SinCos mode_sincos(ModeLabel k, int N);

/// True when k == -k modulo N (x = 0 or x = pi): such a mode has no
/// Bogoliubov partner.
bool is_self_conjugate(ModeLabel k, int N);

/// Ascending list of N labels for the requested sector. Throws for N < 2.
std::vector<ModeLabel> build_kgrid(int N, SectorTag sector);

struct BogoliubovAngle {
  double cos_theta = 1.0;
  double sin_theta = 0.0;
  /// Set when the pairing radius vanishes; the pair is then (1, 0).
  bool degenerate = false;
};

/// sqrt((lambda - J cos x)^2 + J^2 g^2 sin^2 x). Never reads D.
double pairing_radius(const ModelParams& params, ModeLabel k);

/// (cos theta_k, sin theta_k) = ((lambda - J cos x)/R, J g sin x / R).
/// Does not depend on params.D.
BogoliubovAngle bogoliubov_angle(const ModelParams& params, ModeLabel k);

/// Lambda_k = 2 R + 2 D sin x, accumulated in that order. May be negative.
double dispersion(const ModelParams& params, ModeLabel k);

struct KMode {
  ModeLabel k;
  double x = 0.0;
  double cos_theta = 1.0;
  double sin_theta = 0.0;
  double lambda_k = 0.0;
  bool degenerate = false;
};

KMode make_mode(const ModelParams& params, ModeLabel k);

}  // namespace xydm
