#pragma once

// Hermitian eigenvalues, negativity, and the closed-form negativities of the
// AKLT chain.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "aklt/edge_rdm.hpp"

namespace aklt {

/// Eigenvalues sorted ascending.
struct Spectrum {
  std::vector<double> eigenvalues;

  double sum() const;
  double min() const;
  std::size_t size() const { return eigenvalues.size(); }
};

/// Rejects input whose largest |H - H^dagger| entry exceeds tol * max(1, |H|_max).
Spectrum hermitian_eigenvalues(const Eigen::MatrixXcd& h, double tol = 1e-10);
Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& h, double tol = 1e-10);

struct Eigensystem {
  Spectrum spectrum;
  Eigen::MatrixXcd vectors;  ///< columns, same order as the eigenvalues
};
Eigensystem hermitian_eigensystem(const Eigen::MatrixXcd& h, double tol = 1e-10);

/// Eigenvalues below -kNegativeThreshold count as negative.
inline constexpr double kNegativeThreshold = 1e-12;

/// Sum of |e| over eigenvalues e < -kNegativeThreshold.
double negativity(const Spectrum& spectrum);

struct NegativityResult {
  double negativity = 0.0;
  Spectrum spectrum;  ///< of the orthonormalized partial transpose
  BlockGeometry geometry;
  std::string weights_label;
};

/// build -> partial_transpose_A -> orthonormalize -> eigenvalues -> negativity.
NegativityResult negativity_of(const BlockGeometry& geometry, const std::optional<BoundaryWeights>& w = {});

/// Spectrum of an orthonormalized edge matrix.
Spectrum edge_spectrum(const EdgeOperator& op);

// Closed-form negativities.
struct HalfAdjacent {
  int la;
  int lb;
};
struct Spin1Limit {
  int gap;
};
/// L_A -> infinity, L_B = 1, separation `gap`.
struct SemiInfinite {
  int gap;
};
/// Spin-1 ends in the product state psi^c psi^d, adjacent blocks.
struct SeparableAdjacent {
  int la;
  int lb;
  int c;
  int d;
};
using ClosedForm = std::variant<HalfAdjacent, Spin1Limit, SemiInfinite, SeparableAdjacent>;

double closed_form(const ClosedForm& kind);

/// (1/24)(3 sqrt(9 - 10z + 17z^2) + 5z - 1).
double semi_infinite_negativity(double z);

/// "half_adjacent", "spin1_limit", "semi_infinite", "separable_adjacent";
/// throws std::invalid_argument for anything else.
std::string_view closed_form_name(const ClosedForm& kind);
ClosedForm make_closed_form(std::string_view name, const BlockGeometry& geometry,
                            const std::optional<BoundaryWeights>& w = {});

}  // namespace aklt
