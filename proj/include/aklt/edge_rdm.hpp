#pragma once

// Two-block reduced density operators of the AKLT chain in the edge basis.
//
// Block A and block B are each described by their four ground states
// |A_mu>, |B_rho>. These are orthogonal but not normalized: <A_mu|A_mu> is
// proportional to lambda_mu(z(L_A)). An EdgeOperator stores the 16x16
// coefficient matrix C over the composite index 4*mu + rho:
//
//   rho_AB = sum C_{(mu,rho),(alpha,beta)} |A_mu, B_rho><A_alpha, B_beta|
//
// orthonormalize() turns C into an honest Hermitian matrix over the
// normalized basis. The basis |X_mu> is the one created by the boundary
// operators T_mu acting on the two dangling virtual spins of the block.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aklt/edge_algebra.hpp"

namespace aklt {

using EdgeMatrix = Eigen::Matrix<cplx, 16, 16>;

enum class BoundaryMode { HalfBoundary, Spin1Boundary, Periodic };

std::string_view to_string(BoundaryMode mode);
/// Accepts "half", "spin1", "pbc" (and the enumerator names).
BoundaryMode parse_boundary_mode(std::string_view text);

/// Block lengths in sites.
///
/// HalfBoundary: C | A | D | B | E, where C and E contain the spin-1/2 end
/// sites, so N = L_C + L_A + L + L_B + L_E - 2 spin-1 sites. A zero-length C
/// (or E) puts the spin-1/2 end inside A (or B); this is supported and flagged.
///
/// Spin1Boundary: A | C | B, with the chain ends bounding A and B and the
/// traced block of length L between them.
///
/// Periodic: 1 | A | 2 | B around the ring.
struct BlockGeometry {
  BoundaryMode mode = BoundaryMode::HalfBoundary;
  int outer_left = 1;   ///< L_C (half) or L_1 (periodic); unused for spin1
  int la = 1;
  int gap = 0;          ///< L (half, spin1) or L_2 (periodic)
  int lb = 1;
  int outer_right = 1;  ///< L_E (half); unused otherwise

  static BlockGeometry half(int lc, int la, int gap, int lb, int le);
  static BlockGeometry spin1(int la, int gap, int lb);
  /// When ring_length is given it must equal l1 + la + l2 + lb.
  static BlockGeometry periodic(int l1, int la, int l2, int lb, std::optional<int> ring_length = {});

  /// Throws std::invalid_argument on any violated length constraint.
  void validate() const;

  /// Number of spin-1 sites.
  int bulk_sites() const;
  /// Number of physical sites, including spin-1/2 ends.
  int total_sites() const;

  /// Physical site indices of A and B (site 0 is the left end).
  std::vector<int> sites_a() const;
  std::vector<int> sites_b() const;

  /// True when a spin-1/2 end sits inside A or B (L_C = 0 or L_E = 0).
  bool flagged() const;
  /// Each physical eigenvalue of rho_AB appears this many times (scaled by
  /// 1/multiplicity) in the edge spectrum; 2 per spin-1/2 end inside a block.
  int spectral_multiplicity() const;

  /// Gram parameters of the A and B bases. A block holding a spin-1/2 end
  /// has a single exposed virtual spin and is represented with z = 0.
  double z_a() const;
  double z_b() const;

  std::string describe() const;

  friend bool operator==(const BlockGeometry&, const BlockGeometry&) = default;
};

/// Amplitudes w_mu of the boundary operator sum_mu w_mu T_mu^dagger that
/// closes an open spin-1 chain.
class BoundaryWeights {
 public:
  /// Normalizes w; throws std::invalid_argument when |w| = 0.
  explicit BoundaryWeights(const std::array<cplx, 4>& w, std::string label = "custom");

  /// e_beta, label "beta<k>".
  static BoundaryWeights basis(int beta);
  /// End virtual spins in the product state psi^c (x) psi^d, c,d in {1,2}
  /// (1 = up, 2 = down). Labels cc, cd, dc, dd.
  static BoundaryWeights separable(int c, int d);
  /// "beta0".."beta3", "cc", "cd", "dc", "dd", or a comma list of 4 real or
  /// 8 (re,im interleaved) numbers.
  static BoundaryWeights parse(std::string_view text);

  const std::array<cplx, 4>& amplitudes() const { return w_; }
  cplx operator[](int mu) const { return w_[static_cast<std::size_t>(mu)]; }
  const std::string& label() const { return label_; }

 private:
  std::array<cplx, 4> w_;
  std::string label_;
};

struct EdgeOperator {
  EdgeMatrix coeffs = EdgeMatrix::Zero();
  double z_a = 0.0;
  double z_b = 0.0;
  bool gram_applied = false;
  bool transposed = false;
  std::optional<BlockGeometry> geometry;
};

/// Spin-1/2 ends, blocks separated by a block with decay factor z:
///   C = d_mu^alpha d_rho^beta
///     + z [d_mu^rho d_alpha^beta - g^{rho alpha} g^{mu beta}] S~_{mu alpha}
///     + (i z / 2) g^{lambda alpha} g^{sigma beta} eps_{mu rho lambda sigma} (S_{rho beta} - S_{mu alpha})
/// with S~_{mu alpha} = -g_{mu mu} g_{alpha alpha} S_{mu alpha}. Calling with
/// z = 0 gives the z-independent part.
EdgeOperator build_half_boundary(double z_a, double z_b, double z);

/// Spin-1 ends closed by sum_mu w_mu T_mu^dagger, traced block z_gap between A and B.
EdgeOperator build_spin1_boundary(double z_a, double z_b, double z_gap, const BoundaryWeights& w);

/// Periodic ring 1 | A | 2 | B with decay factors z1, z2 of the traced blocks.
EdgeOperator build_pbc(double z_a, double z_b, double z1, double z2);

/// Dispatches on geometry.mode. Boundary weights are required for Spin1Boundary
/// and ignored otherwise.
EdgeOperator build(const BlockGeometry& geometry, const std::optional<BoundaryWeights>& w = {});

/// sum_{nu,sigma} inner_nu outer_sigma M_{mu nu rho sigma} conj(M_{alpha nu beta sigma}),
/// unnormalized.
EdgeMatrix m_contraction(const Weights4& inner, const Weights4& outer);

/// Spin-1 ends: sum_alpha gap_weights_alpha |K_alpha><K_alpha| with K_alpha the
/// A (x) B amplitude when the traced block is in channel alpha, unnormalized.
EdgeMatrix spin1_contraction(const Weights4& gap_weights, const BoundaryWeights& w);

/// The periodic-chain operator assembled directly from pbc_tensors(). It agrees
/// with build_pbc only when both traced blocks are empty.
EdgeMatrix assemble_pbc_tensors(double z1, double z2, double z_total);

/// Reindexes C_{(mu,rho),(alpha,beta)} -> C_{(alpha,rho),(mu,beta)}.
EdgeMatrix partial_transpose_A(const EdgeMatrix& m);
EdgeOperator partial_transpose_A(const EdgeOperator& op);

/// sqrt(lambda_mu(z_a) lambda_rho(z_b)) at composite index 4*mu + rho.
Eigen::Matrix<double, 16, 1> gram_scaling(double z_a, double z_b);

/// H = D C D with D = diag(gram_scaling). Zero-weight channels give zero rows.
EdgeMatrix orthonormalize(const EdgeOperator& op);

/// Trace of D C D.
double weighted_trace(const EdgeMatrix& coeffs, double z_a, double z_b);

}  // namespace aklt
