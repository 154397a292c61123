#include "aklt/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace aklt {
namespace {

template <typename Matrix>
void require_hermitian(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigensolver needs a square matrix");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max |H - H^dagger| = " << asym;
    throw std::invalid_argument(os.str());
  }
}

template <typename Vector>
Spectrum to_spectrum(const Vector& v) {
  Spectrum s;
  s.eigenvalues.assign(v.data(), v.data() + v.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

}  // namespace

double Spectrum::sum() const { return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0); }

double Spectrum::min() const {
  if (eigenvalues.empty()) throw std::logic_error("empty spectrum");
  return eigenvalues.front();
}

Spectrum hermitian_eigenvalues(const Eigen::MatrixXcd& h, double tol) {
  require_hermitian(h, tol);
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  return to_spectrum(solver.eigenvalues());
}

Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& h, double tol) {
  require_hermitian(h, tol);
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  return to_spectrum(solver.eigenvalues());
}

Eigensystem hermitian_eigensystem(const Eigen::MatrixXcd& h, double tol) {
  require_hermitian(h, tol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  // Eigen already returns ascending order
  Eigensystem out;
  out.spectrum.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows());
  out.vectors = solver.eigenvectors();
  return out;
}

double negativity(const Spectrum& spectrum) {
  double n = 0.0;
  for (double e : spectrum.eigenvalues)
    if (e < -kNegativeThreshold) n -= e;
  return n;
}

Spectrum edge_spectrum(const EdgeOperator& op) {
  const Eigen::MatrixXcd h = orthonormalize(op);
  // the fixed-size matrix is exactly Hermitian only up to rounding of D C D
  return hermitian_eigenvalues(0.5 * (h + h.adjoint()));
}

NegativityResult negativity_of(const BlockGeometry& geometry, const std::optional<BoundaryWeights>& w) {
  const EdgeOperator rho = build(geometry, w);
  NegativityResult r;
  r.spectrum = edge_spectrum(partial_transpose_A(rho));
  r.negativity = negativity(r.spectrum);
  r.geometry = geometry;
  if (geometry.mode == BoundaryMode::Spin1Boundary && w) r.weights_label = w->label();
  return r;
}

double semi_infinite_negativity(double z) {
  return (3.0 * std::sqrt(9.0 - 10.0 * z + 17.0 * z * z) + 5.0 * z - 1.0) / 24.0;
}

double closed_form(const ClosedForm& kind) {
  struct Visitor {
    double operator()(const HalfAdjacent& k) const {
      const double za = z_of(k.la).value();
      const double zb = z_of(k.lb).value();
      return 0.5 - 0.75 * (za * za + zb * zb);
    }
    double operator()(const Spin1Limit& k) const {
      if (k.gap < 0) throw std::invalid_argument("separation must be non-negative");
      return k.gap == 0 ? 1.5 : 0.5;
    }
    double operator()(const SemiInfinite& k) const { return semi_infinite_negativity(z_of(k.gap).value()); }
    double operator()(const SeparableAdjacent& k) const {
      if (k.c < 1 || k.c > 2 || k.d < 1 || k.d > 2) throw std::invalid_argument("separable labels must be 1 or 2");
      const double za = z_of(k.la).value();
      const double zb = z_of(k.lb).value();
      const double phi = k.c == k.d ? 1.0 : -1.0;
      return std::sqrt(1.0 + za * za * zb * zb - za * za - zb * zb) / (2.0 - 2.0 * phi * za * zb);
    }
  };
  return std::visit(Visitor{}, kind);
}

std::string_view closed_form_name(const ClosedForm& kind) {
  switch (kind.index()) {
    case 0: return "half_adjacent";
    case 1: return "spin1_limit";
    case 2: return "semi_infinite";
    default: return "separable_adjacent";
  }
}

ClosedForm make_closed_form(std::string_view name, const BlockGeometry& geometry,
                            const std::optional<BoundaryWeights>& w) {
  if (name == "half_adjacent") return HalfAdjacent{geometry.la, geometry.lb};
  if (name == "spin1_limit") return Spin1Limit{geometry.gap};
  if (name == "semi_infinite") return SemiInfinite{geometry.gap};
  if (name == "separable_adjacent") {
    if (!w) throw std::invalid_argument("separable_adjacent needs cc, cd, dc or dd weights");
    const std::string& label = w->label();
    if (label.size() != 2 || (label[0] != 'c' && label[0] != 'd') || (label[1] != 'c' && label[1] != 'd'))
      throw std::invalid_argument("separable_adjacent needs cc, cd, dc or dd weights, got " + label);
    return SeparableAdjacent{geometry.la, geometry.lb, label[0] == 'c' ? 1 : 2, label[1] == 'c' ? 1 : 2};
  }
  throw std::invalid_argument("unknown closed form '" + std::string(name) + "'");
}

}  // namespace aklt
