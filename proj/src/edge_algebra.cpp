#include "aklt/edge_algebra.hpp"

#include <cmath>
#include <string>

namespace aklt {

DecayFactor DecayFactor::from_length(int length) {
  if (length < 0) throw std::invalid_argument("block length must be non-negative, got " + std::to_string(length));
  double z = 1.0;
  for (int i = 0; i < length; ++i) z /= -3.0;
  return DecayFactor(z, length);
}

DecayFactor DecayFactor::raw(double z) {
  if (!(std::abs(z) <= 1.0)) throw std::invalid_argument("decay factor must satisfy |z| <= 1");
  return DecayFactor(z, std::nullopt);
}

DecayFactor z_of(int length) { return DecayFactor::from_length(length); }

Weights4 lambda_weights(DecayFactor z) {
  Weights4 w;
  for (EdgeIndex mu : kEdgeIndices) {
    w.values[static_cast<std::size_t>(mu.value())] = 0.25 + 0.25 * z.value() * mu.s();
  }
  return w;
}

Weights4 lambda_weights(double z) { return lambda_weights(DecayFactor::raw(z)); }

double s_pair(EdgeIndex mu, EdgeIndex alpha) { return 0.5 * (mu.s() + alpha.s()); }

int levi_civita(EdgeIndex a, EdgeIndex b, EdgeIndex c, EdgeIndex d) {
  const std::array<int, 4> p{a.value(), b.value(), c.value(), d.value()};
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  }
  return sign;
}

Eigen::Matrix2cd pauli_matrix(EdgeIndex mu) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (mu.value()) {
    case 0: m << 1.0, 0.0, 0.0, 1.0; break;
    case 1: m << 0.0, 1.0, 1.0, 0.0; break;
    case 2: m << 0.0, -i, i, 0.0; break;
    default: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

cplx pauli_bracket(EdgeIndex a, EdgeIndex b, EdgeIndex c, EdgeIndex d) {
  const Eigen::Matrix2cd product = pauli_matrix(a) * pauli_matrix(b) * pauli_matrix(c) * pauli_matrix(d);
  return product.trace();
}

cplx m_coeff(EdgeIndex mu, EdgeIndex nu, EdgeIndex rho, EdgeIndex sigma) {
  auto delta = [](EdgeIndex x, EdgeIndex y) { return x == y ? 1.0 : 0.0; };
  auto g = [](EdgeIndex x, EdgeIndex y) { return x == y ? x.metric() : 0.0; };

  const double real_part = delta(mu, nu) * g(rho, sigma) + delta(rho, nu) * g(mu, sigma) -
                           delta(sigma, nu) * g(mu, rho);
  // g is diagonal, so only alpha = nu survives in g^{nu alpha} eps_{mu alpha rho sigma}.
  const double imag_part = nu.metric() * levi_civita(mu, nu, rho, sigma);
  const double parity = (nu.value() % 2 == 0) ? 1.0 : -1.0;
  return parity * cplx(real_part, imag_part);
}

const std::array<cplx, 256>& m_tensor() {
  static const std::array<cplx, 256> table = [] {
    std::array<cplx, 256> t{};
    for (EdgeIndex mu : kEdgeIndices)
      for (EdgeIndex nu : kEdgeIndices)
        for (EdgeIndex rho : kEdgeIndices)
          for (EdgeIndex sigma : kEdgeIndices)
            t[static_cast<std::size_t>(((mu.value() * 4 + nu.value()) * 4 + rho.value()) * 4 + sigma.value())] =
                m_coeff(mu, nu, rho, sigma);
    return t;
  }();
  return table;
}

PbcTensors pbc_tensors(double z1, double z2, double z_total) {
  const double norm = 1.0 + 3.0 * z_total;
  if (std::abs(norm) < 1e-300) throw std::domain_error("ring normalization 1 + 3 z_total vanishes");

  auto lambda_at = [norm](double x, double y, EdgeIndex a, EdgeIndex b) {
    return (1.0 + (a.s() * b.s() + a.s() + b.s()) * x * y) / norm;
  };
  auto gamma_at = [norm](double x, double y, EdgeIndex a, EdgeIndex ap) {
    return (a.s() + ap.s()) / norm * (x * y - 0.5 * (x + y));
  };

  PbcTensors out;
  for (EdgeIndex a : kEdgeIndices) {
    for (EdgeIndex b : kEdgeIndices) {
      out.lambda(a.value(), b.value()) = lambda_at(z1, z2, a, b);
      out.gamma_reflected(a.value(), b.value()) = gamma_at(-z1, -z2, a, b);
      out.gamma(a.value(), b.value()) = gamma_at(z1, z2, a, b);
      for (EdgeIndex ap : kEdgeIndices) {
        for (EdgeIndex bp : kEdgeIndices) {
          const double value = (a.s() - b.s() + ap.s() - bp.s()) / (4.0 * norm) * (z1 - z2);
          out.t[static_cast<std::size_t>(((a.value() * 4 + b.value()) * 4 + ap.value()) * 4 + bp.value())] = value;
        }
      }
    }
  }
  return out;
}

}  // namespace aklt
