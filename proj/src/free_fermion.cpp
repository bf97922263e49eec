#include "xydm/free_fermion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace xydm {

std::vector<KMode> mode_table(const ModelParams& params, SectorTag sector) {
  params.validate();
  std::vector<KMode> modes;
  const auto grid = build_kgrid(params.N, sector);
  modes.reserve(grid.size());
  for (const ModeLabel k : grid) modes.push_back(make_mode(params, k));
  return modes;
}

int vacuum_parity(const ModelParams& params, SectorTag sector) {
  int parity = 0;
  for (const ModeLabel k : build_kgrid(params.N, sector)) {
    if (!is_self_conjugate(k, params.N)) continue;
    if (params.lambda - params.J * mode_sincos(k, params.N).cos < 0.0) parity ^= 1;
  }
  return parity;
}

double occupation_energy(const std::vector<KMode>& modes, const std::vector<bool>& occupations) {
  if (modes.size() != occupations.size()) {
    throw std::invalid_argument("occupation vector length does not match the mode table");
  }
  double energy = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    energy += modes[i].lambda_k * ((occupations[i] ? 1.0 : 0.0) - 0.5);
  }
  return energy;
}

namespace {

// sum_k Lambda_k (n_k - 1/2) with the root and DM parts accumulated
// separately; the DM part is summed over (k, -k) pairs so it cancels
// exactly whenever the pair occupations agree.
double ground_energy(const ModelParams& params, const std::vector<KMode>& modes, const std::vector<bool>& occ) {
  std::unordered_map<std::int64_t, std::size_t> index;
  for (std::size_t i = 0; i < modes.size(); ++i) index.emplace(modes[i].k.twice, i);
  auto weight = [&](std::size_t i) { return occ[i] ? 0.5 : -0.5; };
  auto dm_part = [&](std::size_t i) { return 2.0 * params.D * mode_sincos(modes[i].k, params.N).sin; };

  double root_sum = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) root_sum += 2.0 * pairing_radius(params, modes[i].k) * weight(i);
  double dm_sum = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const ModeLabel k = modes[i].k;
    if (k.twice <= 0 || is_self_conjugate(k, params.N)) continue;
    const std::size_t j = index.at(-k.twice);
    dm_sum += dm_part(i) * weight(i) + dm_part(j) * weight(j);
  }
  return root_sum + dm_sum;
}

}  // namespace

GroundStateSummary ground_state(const ModelParams& params, SectorTag sector) {
  const auto modes = mode_table(params, sector);
  GroundStateSummary summary;
  summary.sector = sector;
  summary.occupations.assign(modes.size(), false);
  summary.min_abs_lambda = std::numeric_limits<double>::infinity();
  summary.min_lambda = std::numeric_limits<double>::infinity();

  std::size_t cheapest = 0;
  int filled = 0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double lk = modes[i].lambda_k;
    if (lk < 0.0) {
      summary.occupations[i] = true;
      ++filled;
    }
    if (std::abs(lk) < summary.min_abs_lambda) {
      summary.min_abs_lambda = std::abs(lk);
      cheapest = i;
    }
    summary.min_lambda = std::min(summary.min_lambda, lk);
    if (modes[i].degenerate) ++summary.degenerate_modes;
  }

  if (sector != SectorTag::PaperGrid) {
    const int wanted = sector == SectorTag::OddParity ? 1 : 0;
    const int parity = (filled + vacuum_parity(params, sector)) % 2;
    if (parity != wanted) {
      summary.occupations[cheapest] = !summary.occupations[cheapest];
      summary.parity_adjusted = true;
    }
  }
  summary.energy = ground_energy(params, modes, summary.occupations);
  return summary;
}

double excitation_gap(const ModelParams& params) {
  return ground_state(params, SectorTag::PaperGrid).min_abs_lambda;
}

double energy_curvature(const ModelParams& params, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("derivative step h must be > 0");
  params.validate();
  auto energy_at = [&](double field) {
    ModelParams shifted = params;
    shifted.lambda = field;
    return ground_state(shifted, SectorTag::PaperGrid).energy;
  };
  const double e_plus = energy_at(params.lambda + h);
  const double e_mid = energy_at(params.lambda);
  const double e_minus = energy_at(params.lambda - h);
  return (e_plus - 2.0 * e_mid + e_minus) / (h * h);
}

}  // namespace xydm
