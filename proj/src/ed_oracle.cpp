#include "xydm/ed_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include "xydm/free_fermion.hpp"

namespace xydm {

namespace {

using cplx = std::complex<double>;
using State = std::uint32_t;

void require_sites(const ModelParams& params, int cap) {
  params.validate();
  if (params.N > cap) {
    throw std::invalid_argument("dense oracle supports N <= " + std::to_string(cap) + " (got " +
                                std::to_string(params.N) + ")");
  }
}

void require_sector(SectorTag sector) {
  if (sector == SectorTag::PaperGrid) {
    throw std::invalid_argument("fermion boundary sector must be even or odd, not paper");
  }
}

double boundary_sign(SectorTag sector) { return sector == SectorTag::EvenParity ? -1.0 : 1.0; }

std::vector<State> basis_states(int N, std::optional<int> parity) {
  std::vector<State> states;
  const State dim = State{1} << N;
  for (State s = 0; s < dim; ++s) {
    if (!parity || std::popcount(s) % 2 == *parity) states.push_back(s);
  }
  return states;
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver did not converge");
  const Eigen::VectorXd& values = solver.eigenvalues();
  std::vector<double> out(values.data(), values.data() + values.size());
  std::sort(out.begin(), out.end());
  return out;
}

double max_hermiticity_error(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Matrix of an operator given by its action on basis states, restricted to
// `states` (which must be closed under the action).
template <class Action>
Eigen::MatrixXcd assemble(int N, const std::vector<State>& states, Action&& action) {
  std::vector<int> index(std::size_t{1} << N, -1);
  for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = static_cast<int>(i);
  const auto dim = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    action(states[static_cast<std::size_t>(col)], [&](State target, cplx amplitude) {
      const int row = index[target];
      if (row < 0) throw std::logic_error("operator leaves the requested basis block");
      m(row, col) += amplitude;
    });
  }
  return m;
}

// Spin chain: H|s> expressed through sigma^z eigenvalues z_j = +-1.
auto spin_action(const ModelParams& p) {
  return [p](State s, auto&& emit) {
    const int N = p.N;
    auto z = [s](int j) { return ((s >> j) & 1U) ? -1.0 : 1.0; };
    double diagonal = 0.0;
    for (int j = 0; j < N; ++j) diagonal -= p.lambda * z(j);
    emit(s, cplx{diagonal, 0.0});
    for (int j = 0; j < N; ++j) {
      const int k = (j + 1) % N;
      const State flipped = s ^ (State{1} << j) ^ (State{1} << k);
      // sx sx -> 1, sy sy -> -z_j z_k, sx_j sy_k -> i z_k, sy_j sx_k -> i z_j.
      const cplx xx{p.J * (1.0 + p.gamma) / 2.0, 0.0};
      const cplx yy{-p.J * (1.0 - p.gamma) / 2.0 * z(j) * z(k), 0.0};
      const cplx dm{0.0, p.D / 2.0 * (z(k) - z(j))};
      emit(flipped, -(xx + yy + dm));
    }
  };
}

// Fermion operators on occupation states with the Jordan-Wigner sign
// (-1)^(number of occupied sites below j).
struct FockTerm {
  double sign = 0.0;
  State state = 0;
};

std::optional<FockTerm> annihilate(FockTerm in, int j) {
  if (!((in.state >> j) & 1U)) return std::nullopt;
  const State below = in.state & ((State{1} << j) - 1U);
  const double sign = (std::popcount(below) % 2) ? -1.0 : 1.0;
  return FockTerm{in.sign * sign, in.state & ~(State{1} << j)};
}

std::optional<FockTerm> create(FockTerm in, int j) {
  if ((in.state >> j) & 1U) return std::nullopt;
  const State below = in.state & ((State{1} << j) - 1U);
  const double sign = (std::popcount(below) % 2) ? -1.0 : 1.0;
  return FockTerm{in.sign * sign, in.state | (State{1} << j)};
}

auto fermion_action(const ModelParams& p, SectorTag sector) {
  const double wrap = boundary_sign(sector);
  return [p, wrap](State s, auto&& emit) {
    const int N = p.N;
    double diagonal = 0.0;
    for (int i = 0; i < N; ++i) diagonal -= p.lambda * (1.0 - 2.0 * static_cast<double>((s >> i) & 1U));
    emit(s, cplx{diagonal, 0.0});
    const FockTerm start{1.0, s};
    for (int i = 0; i < N; ++i) {
      const int next = (i + 1) % N;
      const double bc = (i == N - 1) ? wrap : 1.0;
      // (J + iD) c_i^dag c_next
      if (auto a = annihilate(start, next)) {
        if (auto b = create(*a, i)) emit(b->state, -cplx{p.J, p.D} * (bc * b->sign));
      }
      // (J - iD) c_next^dag c_i
      if (auto a = annihilate(start, i)) {
        if (auto b = create(*a, next)) emit(b->state, -cplx{p.J, -p.D} * (bc * b->sign));
      }
      // J g c_i^dag c_next^dag
      if (auto a = create(start, next)) {
        if (auto b = create(*a, i)) emit(b->state, cplx{-p.J * p.gamma * bc * b->sign, 0.0});
      }
      // J g c_next c_i
      if (auto a = annihilate(start, i)) {
        if (auto b = annihilate(*a, next)) emit(b->state, cplx{-p.J * p.gamma * bc * b->sign, 0.0});
      }
    }
  };
}

}  // namespace

double DenseHamiltonian::hermiticity_error() const { return max_hermiticity_error(entries); }

double BdgMatrix::hermiticity_error() const { return max_hermiticity_error(entries); }

DenseHamiltonian build_spin_hamiltonian(const ModelParams& params) {
  require_sites(params, kMaxSpinSites);
  return DenseHamiltonian{params.N, HamiltonianSource::SpinChain,
                          assemble(params.N, basis_states(params.N, std::nullopt), spin_action(params))};
}

Eigen::MatrixXcd spin_parity_block(const ModelParams& params, int parity) {
  require_sites(params, kMaxSpinSites);
  if (parity != 0 && parity != 1) throw std::invalid_argument("parity must be 0 or 1");
  return assemble(params.N, basis_states(params.N, parity), spin_action(params));
}

std::vector<double> spin_spectrum(const ModelParams& params) {
  std::vector<double> values = hermitian_eigenvalues(spin_parity_block(params, 0));
  const std::vector<double> odd = hermitian_eigenvalues(spin_parity_block(params, 1));
  values.insert(values.end(), odd.begin(), odd.end());
  std::sort(values.begin(), values.end());
  return values;
}

SpinGround spin_ground(const ModelParams& params) {
  const std::vector<double> values = spin_spectrum(params);
  return SpinGround{values[0], values[1] - values[0]};
}

DenseHamiltonian build_fermion_hamiltonian(const ModelParams& params, SectorTag sector) {
  require_sites(params, kMaxFockSites);
  require_sector(sector);
  const auto source =
      sector == SectorTag::EvenParity ? HamiltonianSource::FermionEvenSector : HamiltonianSource::FermionOddSector;
  return DenseHamiltonian{params.N, source,
                          assemble(params.N, basis_states(params.N, std::nullopt), fermion_action(params, sector))};
}

std::vector<double> fermion_sector_spectrum(const ModelParams& params, SectorTag sector) {
  require_sites(params, kMaxFockSites);
  require_sector(sector);
  const int parity = sector == SectorTag::EvenParity ? 0 : 1;
  return hermitian_eigenvalues(assemble(params.N, basis_states(params.N, parity), fermion_action(params, sector)));
}

BdgMatrix build_bdg(const ModelParams& params, SectorTag sector) {
  params.validate();
  require_sector(sector);
  const int N = params.N;
  const double wrap = boundary_sign(sector);
  Eigen::MatrixXcd hopping = Eigen::MatrixXcd::Zero(N, N);
  Eigen::MatrixXcd pairing = Eigen::MatrixXcd::Zero(N, N);
  for (int i = 0; i < N; ++i) hopping(i, i) += 2.0 * params.lambda;
  for (int i = 0; i < N; ++i) {
    const int next = (i + 1) % N;
    const double bc = (i == N - 1) ? wrap : 1.0;
    hopping(i, next) += -cplx{params.J, params.D} * bc;
    hopping(next, i) += -cplx{params.J, -params.D} * bc;
    // 1/2 sum B_ab c_a^dag c_b^dag with B antisymmetric.
    pairing(i, next) += -params.J * params.gamma * bc;
    pairing(next, i) += params.J * params.gamma * bc;
  }
  BdgMatrix bdg;
  bdg.N = N;
  bdg.sector = sector;
  bdg.entries.resize(2 * N, 2 * N);
  bdg.entries.topLeftCorner(N, N) = hopping;
  bdg.entries.topRightCorner(N, N) = pairing;
  bdg.entries.bottomLeftCorner(N, N) = pairing.adjoint();
  bdg.entries.bottomRightCorner(N, N) = -hopping.transpose();
  return bdg;
}

std::vector<double> bdg_eigenvalues(const BdgMatrix& bdg) { return hermitian_eigenvalues(bdg.entries); }

double max_sorted_discrepancy(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("spectra differ in length");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double bdg_multiset_error(const ModelParams& params, SectorTag sector) {
  const std::vector<double> numeric = bdg_eigenvalues(build_bdg(params, sector));
  std::vector<double> analytic;
  for (const ModeLabel k : build_kgrid(params.N, sector)) {
    const double lk = dispersion(params, k);
    analytic.push_back(lk);
    analytic.push_back(-lk);
  }
  std::sort(analytic.begin(), analytic.end());
  return max_sorted_discrepancy(numeric, analytic);
}

OracleReport jw_consistency_check(const ModelParams& params) {
  require_sites(params, kMaxFockSites);
  const std::vector<double> spin = spin_spectrum(params);
  const std::vector<double> even = fermion_sector_spectrum(params, SectorTag::EvenParity);
  const std::vector<double> odd = fermion_sector_spectrum(params, SectorTag::OddParity);
  std::vector<double> fermion = even;
  fermion.insert(fermion.end(), odd.begin(), odd.end());
  std::sort(fermion.begin(), fermion.end());

  OracleReport report;
  report.params = params;
  report.spin_ground_energy = spin[0];
  report.spin_gap = spin[1] - spin[0];
  report.analytic_ground_energy = fermion[0];
  report.abs_error = std::abs(report.spin_ground_energy - report.analytic_ground_energy);
  report.matched_sector = even.front() <= odd.front() ? SectorTag::EvenParity : SectorTag::OddParity;
  report.bdg_multiset_error = max_sorted_discrepancy(spin, fermion);
  return report;
}

OracleReport crosscheck(const ModelParams& params) {
  require_sites(params, kMaxSpinSites);
  const SpinGround spin = spin_ground(params);
  const double even = ground_state(params, SectorTag::EvenParity).energy;
  const double odd = ground_state(params, SectorTag::OddParity).energy;

  OracleReport report;
  report.params = params;
  report.spin_ground_energy = spin.energy;
  report.spin_gap = spin.gap;
  report.matched_sector = even <= odd ? SectorTag::EvenParity : SectorTag::OddParity;
  report.analytic_ground_energy = std::min(even, odd);
  report.abs_error = std::abs(report.spin_ground_energy - report.analytic_ground_energy);
  report.bdg_multiset_error = std::max(bdg_multiset_error(params, SectorTag::EvenParity),
                                       bdg_multiset_error(params, SectorTag::OddParity));
  return report;
}

}  // namespace xydm
