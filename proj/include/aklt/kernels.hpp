#pragma once

// Dense kernels behind the brute-force oracle. Each has an OpenMP path and a
// serial reference path selected by Exec; both produce identical results.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "aklt/edge_algebra.hpp"

namespace aklt {

enum class Exec { Serial, Parallel };

/// Open-chain tensor X[l][P][r] (l, r dangling virtual spins, P physical
/// index of size phys_dim), flat index (l*phys_dim + P)*2 + r.
///
/// Returns the tensor with one more spin-1 site appended on the right:
///   Y[l][P*3+p][r'] = sum_{r,a} X[l][P][r] S[r][a] Q[p][a][r']
/// with the bond singlet S = [[0,1],[-1,0]].
std::vector<cplx> append_site(const std::vector<cplx>& x, std::size_t phys_dim, Exec exec = Exec::Parallel);

/// Reorders a site-major amplitude vector into a (dim_A * dim_B) x dim_rest
/// matrix, row a*dim_B + b, with the remaining sites in increasing order as
/// the column index.
Eigen::MatrixXcd gather_blocks(const std::vector<cplx>& psi, const std::vector<int>& site_dims,
                               const std::vector<int>& sites_a, const std::vector<int>& sites_b,
                               Exec exec = Exec::Parallel);

/// T * T^dagger.
Eigen::MatrixXcd gram_rows(const Eigen::MatrixXcd& t, Exec exec = Exec::Parallel);

/// Transpose of the A factor of an operator on A (x) B, row index a*dim_b + b.
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho, std::size_t dim_a, std::size_t dim_b,
                                   Exec exec = Exec::Parallel);

}  // namespace aklt
