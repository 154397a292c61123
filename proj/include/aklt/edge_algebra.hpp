#pragma once

// Scalars and small tensors of the AKLT edge-state algebra.
//
// The four degenerate ground states of an open spin-1 block are labelled by
// an EdgeIndex mu in {0,1,2,3}. Everything here is a pure function of its
// arguments.

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

namespace aklt {

using cplx = std::complex<double>;

/// Label of a bulk ground state / boundary operator T_mu.
class EdgeIndex {
 public:
  constexpr explicit EdgeIndex(int value) : value_(checked(value)) {}

  constexpr int value() const { return value_; }

  /// Channel sign s_mu = (-1, -1, 3, -1).
  constexpr double s() const { return value_ == 2 ? 3.0 : -1.0; }

  /// Diagonal metric g = diag(-1, +1, +1, +1); g is its own inverse.
  constexpr double metric() const { return value_ == 0 ? -1.0 : 1.0; }

  friend constexpr bool operator==(EdgeIndex, EdgeIndex) = default;

 private:
  static constexpr int checked(int v) {
    if (v < 0 || v > 3) throw std::out_of_range("EdgeIndex must lie in {0,1,2,3}");
    return v;
  }
  int value_;
};

inline constexpr std::array<EdgeIndex, 4> kEdgeIndices{EdgeIndex{0}, EdgeIndex{1}, EdgeIndex{2},
                                                       EdgeIndex{3}};

/// Transfer-matrix decay factor z. For an integer block length L it is
/// (-1/3)^L, obtained by repeated division.
class DecayFactor {
 public:
  static DecayFactor from_length(int length);
  /// Arbitrary z with |z| <= 1, e.g. the reflected value -z(L).
  static DecayFactor raw(double z);

  double value() const { return z_; }
  std::optional<int> length() const { return length_; }

 private:
  DecayFactor(double z, std::optional<int> length) : z_(z), length_(length) {}
  double z_;
  std::optional<int> length_;
};

/// (-1/3)^L. Throws std::invalid_argument for L < 0.
DecayFactor z_of(int length);

/// Squared norms of the four block ground states.
struct Weights4 {
  std::array<double, 4> values{};

  double operator[](EdgeIndex mu) const { return values[static_cast<std::size_t>(mu.value())]; }
  double operator[](int mu) const { return values[static_cast<std::size_t>(mu)]; }
  double sum() const { return values[0] + values[1] + values[2] + values[3]; }
};

/// lambda_mu = 1/4 + z s_mu / 4.
Weights4 lambda_weights(DecayFactor z);
/// Same, for a raw z; throws std::invalid_argument when |z| > 1.
Weights4 lambda_weights(double z);

/// S_{mu alpha} = (s_mu + s_alpha) / 2.
double s_pair(EdgeIndex mu, EdgeIndex alpha);

/// Sign of the permutation (a,b,c,d) of (0,1,2,3); 0 on a repeated index.
int levi_civita(EdgeIndex a, EdgeIndex b, EdgeIndex c, EdgeIndex d);

/// sigma_0 = identity, sigma_1..3 the Pauli matrices.
Eigen::Matrix2cd pauli_matrix(EdgeIndex mu);

/// Trace(sigma_a sigma_b sigma_c sigma_d), by explicit 2x2 products.
cplx pauli_bracket(EdgeIndex a, EdgeIndex b, EdgeIndex c, EdgeIndex d);

/// Coefficient M_{mu nu rho sigma} of the split of the chain into blocks
/// A (mu), D (nu), B (rho) and the outer pair (sigma):
///   (-1)^nu (d_mu^nu g_{rho sigma} + d_rho^nu g_{mu sigma}
///            - d_sigma^nu g_{mu rho} + i g^{nu alpha} eps_{mu alpha rho sigma}).
cplx m_coeff(EdgeIndex mu, EdgeIndex nu, EdgeIndex rho, EdgeIndex sigma);

/// All 256 M coefficients, flat index ((mu*4 + nu)*4 + rho)*4 + sigma.
const std::array<cplx, 256>& m_tensor();

/// Closed-form ring tensors Lambda, Gamma and T, already evaluated at
/// the argument signs of the ring operator: Lambda(z1,z2), Gamma(-z1,-z2), Gamma(z1,z2),
/// T(z1,z2). The ring builder in edge_rdm does not use them (see
/// assemble_pbc_tensors).
struct PbcTensors {
  Eigen::Matrix4d lambda;
  Eigen::Matrix4d gamma_reflected;
  Eigen::Matrix4d gamma;
  std::array<double, 256> t{};

  double t_at(int a, int b, int ap, int bp) const { return t[static_cast<std::size_t>(((a * 4 + b) * 4 + ap) * 4 + bp)]; }
};

/// Throws std::domain_error when 1 + 3 z_total vanishes.
PbcTensors pbc_tensors(double z1, double z2, double z_total);

}  // namespace aklt
