#pragma once

// Brute-force ground truth for the free-fermion solution: dense many-body
// matrices of the spin chain and of its Jordan-Wigner fermion form, plus the
// 2N x 2N Nambu (BdG) single-particle matrix.
//
// Basis conventions: bit j of a basis index is site j. For spins bit = 1
// means sigma^z = -1; for fermions bit = 1 means n_j = 1, with the
// Jordan-Wigner string ordered by site index. Nambu rows are
// (c_1..c_N, c_1^dag..c_N^dag).

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "xydm/model.hpp"

namespace xydm {

inline constexpr int kMaxSpinSites = 14;
inline constexpr int kMaxFockSites = 12;

enum class HamiltonianSource { SpinChain, FermionEvenSector, FermionOddSector };

struct DenseHamiltonian {
  int N = 0;
  HamiltonianSource source = HamiltonianSource::SpinChain;
  Eigen::MatrixXcd entries;

  Eigen::Index dimension() const { return entries.rows(); }
  /// max |H - H^dag| over all entries.
  double hermiticity_error() const;
};

struct BdgMatrix {
  int N = 0;
  SectorTag sector = SectorTag::EvenParity;
  Eigen::MatrixXcd entries;

  double hermiticity_error() const;
};

struct OracleReport {
  ModelParams params;
  double spin_ground_energy = 0.0;
  double analytic_ground_energy = 0.0;
  double abs_error = 0.0;
  double spin_gap = 0.0;
  SectorTag matched_sector = SectorTag::EvenParity;
  double bdg_multiset_error = 0.0;
};

/// Full 2^N matrix of the periodic spin chain. The sum over bonds is taken
/// literally, so at N = 2 the pair (1,2) is bonded twice. Throws unless
/// 2 <= N <= kMaxSpinSites.
DenseHamiltonian build_spin_hamiltonian(const ModelParams& params);

/// The block of the spin matrix with prod_j sigma^z_j = (-1)^parity.
Eigen::MatrixXcd spin_parity_block(const ModelParams& params, int parity);

/// Sorted many-body spectrum of the spin chain (both parity blocks).
std::vector<double> spin_spectrum(const ModelParams& params);

struct SpinGround {
  double energy = 0.0;
  /// Second-lowest minus lowest eigenvalue; 0 when degenerate.
  double gap = 0.0;
};

SpinGround spin_ground(const ModelParams& params);

/// Fock-space matrix of the quadratic fermion Hamiltonian
///   -sum_i [(J+iD) c_i^dag c_{i+1} + (J-iD) c_{i+1}^dag c_i
///           + J g (c_i^dag c_{i+1}^dag + c_{i+1} c_i) + lambda (1 - 2 n_i)]
/// with c_{N+1} = -c_1 (EvenParity) or +c_1 (OddParity). Throws for
/// PaperGrid or N outside [2, kMaxFockSites].
DenseHamiltonian build_fermion_hamiltonian(const ModelParams& params, SectorTag sector);

/// Sorted spectrum of the sector's fermion Hamiltonian restricted to its own
/// fermion parity (even number of fermions for EvenParity, odd for OddParity).
std::vector<double> fermion_sector_spectrum(const ModelParams& params, SectorTag sector);

/// Nambu matrix [[A, B], [B^dag, -A^T]] of the same fermion Hamiltonian with
/// the sector's boundary sign; its spectrum is {+-Lambda_k} over the sector
/// grid. Throws for PaperGrid.
BdgMatrix build_bdg(const ModelParams& params, SectorTag sector);

std::vector<double> bdg_eigenvalues(const BdgMatrix& bdg);

/// max_i |sorted eig(BdG)_i - sorted {+-Lambda_k}_i| on the sector grid.
double bdg_multiset_error(const ModelParams& params, SectorTag sector);

/// Compares the spin spectrum with the union of the two parity-projected
/// fermion spectra. bdg_multiset_error holds the full-spectrum discrepancy;
/// analytic_ground_energy is the fermion-side ground energy. N <= kMaxFockSites.
OracleReport jw_consistency_check(const ModelParams& params);

/// Spin ED ground energy against the lower of the two parity-constrained
/// free-fermion energies; bdg_multiset_error is the larger BdG mismatch of
/// the two sectors.
OracleReport crosscheck(const ModelParams& params);

/// Largest elementwise |a_i - b_i| of two equally long sorted spectra.
double max_sorted_discrepancy(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace xydm
