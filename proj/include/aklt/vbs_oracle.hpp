#pragma once

// Brute-force VBS states in the full physical Hilbert space.
//
// Each spin-1 site carries two virtual spin-1/2s projected onto the triplet,
// |+1> = up up, |0> = (up down + down up)/sqrt(2), |-1> = down down, and
// neighbouring virtual spins form the singlet up down - down up. Amplitudes
// are site-major (site 0 most significant) with local bases (+1, 0, -1) and
// (up, down).

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "aklt/edge_rdm.hpp"
#include "aklt/kernels.hpp"
#include "aklt/spectrum.hpp"

namespace aklt {

inline constexpr int kOracleMaxBulkSites = 10;
inline constexpr int kHamiltonianMaxBulkSites = 6;

struct VbsState {
  std::vector<cplx> amplitudes;
  std::vector<int> site_dims;
  BoundaryMode mode = BoundaryMode::HalfBoundary;

  std::size_t dimension() const { return amplitudes.size(); }
};

/// Open block tensor X[l][P][r] of n spin-1 sites, flat index
/// (l*3^n + P)*2 + r. n = 0 gives X[l][0][r] = delta_lr.
std::vector<cplx> block_tensor(int n, Exec exec = Exec::Parallel);

/// HalfBoundary: spin-1/2 ends in singlets with the dangling virtual spins.
/// Spin1Boundary: dangling spins (l, r) weighted by W = sum_mu w_mu t_mu
/// where t_mu are the boundary matrices of the edge basis.
/// Periodic: the dangling spins form one more bond singlet.
/// Throws std::invalid_argument when bulk_sites exceeds kOracleMaxBulkSites.
VbsState build_vbs(BoundaryMode mode, int bulk_sites, const std::optional<BoundaryWeights>& w = {},
                   Exec exec = Exec::Parallel);
VbsState build_vbs(const BlockGeometry& geometry, const std::optional<BoundaryWeights>& w = {},
                   Exec exec = Exec::Parallel);

/// Operator on A (x) B, row index a*dim_b + b.
struct DenseOperator {
  Eigen::MatrixXcd matrix;
  std::size_t dim_a = 1;
  std::size_t dim_b = 1;
};

/// Tr_rest |psi><psi| over the full local spaces of A and B.
DenseOperator reduce(const VbsState& state, const std::vector<int>& sites_a, const std::vector<int>& sites_b,
                     Exec exec = Exec::Parallel);

/// As reduce(), with A and B each restricted to the support of its own reduced
/// density matrix. Spectra and partial-transpose spectra agree with reduce()
/// up to zero padding.
DenseOperator reduce_compressed(const VbsState& state, const std::vector<int>& sites_a,
                                const std::vector<int>& sites_b, Exec exec = Exec::Parallel);

DenseOperator dense_partial_transpose(const DenseOperator& op, Exec exec = Exec::Parallel);

/// sum_{l,r} t_mu[l][r] X[l][.][r] for an n-site block, unnormalized.
std::vector<cplx> block_edge_state(int n, EdgeIndex mu);

/// <A_mu B_rho| rho |A_alpha B_beta> over normalized block edge states. rho
/// must come from reduce() on spin-1 blocks of la and lb sites. Channels with
/// zero norm give zero rows.
EdgeMatrix edge_projection(const DenseOperator& rho, int la, int lb);

struct GramReport {
  int block_sites = 0;
  Eigen::Matrix4cd gram;            ///< normalized to unit trace
  std::array<double, 4> weights{};  ///< diagonal
  double max_offdiagonal = 0.0;
  double max_error = 0.0;           ///< against lambda_mu(z(block_sites))
  bool passed = false;
};
GramReport gram_check(int block_sites, double tol = 1e-12);

struct HamiltonianReport {
  BoundaryMode mode = BoundaryMode::HalfBoundary;
  int bulk_sites = 0;
  double residual = 0.0;  ///< max ||H psi|| over the checked states
  double min_eigenvalue = 0.0;
  int null_dimension = 0;
  int expected_null_dimension = 0;
  bool passed = false;
};
/// Spin1Boundary checks all four e_beta plus w (when given).
HamiltonianReport hamiltonian_check(BoundaryMode mode, int bulk_sites, const std::optional<BoundaryWeights>& w = {});

/// Dense AKLT Hamiltonian: spin-2 projectors on bonds, spin-3/2 projectors on
/// the spin-1/2 end bonds of HalfBoundary chains.
Eigen::MatrixXd aklt_hamiltonian(BoundaryMode mode, int bulk_sites);

struct OracleComparison {
  double negativity_edge = 0.0;
  double negativity_oracle = 0.0;
  double abs_diff = 0.0;
  double spectrum_diff = 0.0;     ///< max elementwise, padded, untransposed
  double pt_spectrum_diff = 0.0;  ///< same for the partial transposes
  bool passed = false;
};
/// Edge pipeline against reduce_compressed on build_vbs(geometry, w).
OracleComparison compare_with_oracle(const BlockGeometry& geometry, const std::optional<BoundaryWeights>& w = {},
                                     double tol = 1e-10, Exec exec = Exec::Parallel);

/// Elementwise max difference of two spectra after zero padding. The first
/// spectrum is expanded: each eigenvalue e becomes `multiplicity` copies of
/// e / multiplicity.
double padded_spectrum_diff(const Spectrum& oracle, const Spectrum& edge, int multiplicity = 1);

}  // namespace aklt
