#pragma once

// Ground-state assembly of H = sum_k Lambda_k (n_k - 1/2).

#include <vector>

#include "xydm/model.hpp"

namespace xydm {

struct GroundStateSummary {
  /// Quasiparticle occupations, aligned with mode_table(params, sector).
  std::vector<bool> occupations;
  double energy = 0.0;
  double min_abs_lambda = 0.0;
  double min_lambda = 0.0;
  SectorTag sector = SectorTag::PaperGrid;
  int degenerate_modes = 0;
  /// True when the parity constraint forced the cheapest mode to flip.
  bool parity_adjusted = false;
};

/// One KMode per grid label, ascending in k.
std::vector<KMode> mode_table(const ModelParams& params, SectorTag sector);

/// Lowest sum_k Lambda_k (n_k - 1/2) over occupations.
///
/// PaperGrid: unconstrained, n_k = 1 exactly when Lambda_k < 0, so
/// E0 = -1/2 sum |Lambda_k|.
///
/// EvenParity / OddParity: the physical fermion parity of the state must
/// match the sector. Paired modes (k, -k) have an even vacuum; a
/// self-conjugate mode (x = 0 or pi) is unpaired and its vacuum is the
/// occupied c-fermion whenever lambda - J cos x < 0. If the unconstrained
/// filling has the wrong parity the mode with the smallest |Lambda_k| is
/// flipped.
GroundStateSummary ground_state(const ModelParams& params, SectorTag sector);

/// Fermion parity (0 or 1) of the quasiparticle vacuum on a sector grid.
int vacuum_parity(const ModelParams& params, SectorTag sector);

/// sum_k Lambda_k (n_k - 1/2) for an explicit occupation vector.
double occupation_energy(const std::vector<KMode>& modes, const std::vector<bool>& occupations);

/// min_k |Lambda_k| over the PaperGrid.
double excitation_gap(const ModelParams& params);

inline constexpr double kDefaultDerivativeStep = 1e-3;

/// Central second difference of the PaperGrid E0 in lambda. Throws for h <= 0.
double energy_curvature(const ModelParams& params, double h = kDefaultDerivativeStep);

}  // namespace xydm
