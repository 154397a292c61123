#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aklt/edge_algebra.hpp"
#include "aklt/edge_rdm.hpp"

using namespace aklt;

namespace {

constexpr double kTol = 1e-14;

// sigma_mu = Q_mu t_mu for the boundary matrices t_mu, written out by hand
Eigen::Matrix2cd t_matrix(int mu) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd t;
  switch (mu) {
    case 0: t << 1.0, 0.0, 0.0, 1.0; break;
    case 1: t << 0.0, 1.0, 1.0, 0.0; break;
    case 2: t << 0.0, i, -i, 0.0; break;
    default: t << 1.0, 0.0, 0.0, -1.0; break;
  }
  return t;
}

}  // namespace

TEST_CASE("EdgeIndex range") {
  for (int v = 0; v < 4; ++v) CHECK(EdgeIndex{v}.value() == v);
  CHECK_THROWS_AS(EdgeIndex{-1}, std::out_of_range);
  CHECK_THROWS_AS(EdgeIndex{4}, std::out_of_range);
  CHECK(EdgeIndex{2}.s() == 3.0);
  CHECK(EdgeIndex{0}.metric() == -1.0);
}

TEST_CASE("z_of") {
  CHECK(z_of(0).value() == 1.0);
  CHECK(std::abs(z_of(1).value() + 1.0 / 3.0) < kTol);
  CHECK(std::abs(z_of(3).value() + 1.0 / 27.0) < kTol);
  CHECK(z_of(3).length() == 3);
  CHECK_THROWS_AS(z_of(-1), std::invalid_argument);
  CHECK_THROWS_AS(DecayFactor::raw(1.5), std::invalid_argument);
  CHECK(!DecayFactor::raw(-0.5).length().has_value());
}

TEST_CASE("lambda_weights examples") {
  const Weights4 w0 = lambda_weights(z_of(0));
  CHECK(w0[0] == 0.0);
  CHECK(w0[1] == 0.0);
  CHECK(w0[2] == 1.0);
  CHECK(w0[3] == 0.0);

  const Weights4 w1 = lambda_weights(z_of(1));
  for (int mu : {0, 1, 3}) CHECK(std::abs(w1[mu] - 1.0 / 3.0) < kTol);
  CHECK(std::abs(w1[2]) < kTol);

  const Weights4 w2 = lambda_weights(z_of(2));
  for (int mu : {0, 1, 3}) CHECK(std::abs(w2[mu] - 2.0 / 9.0) < kTol);
  CHECK(std::abs(w2[2] - 1.0 / 3.0) < kTol);

  CHECK_THROWS_AS(lambda_weights(1.0001), std::invalid_argument);
}

TEST_CASE("lambda_weights invariants") {
  for (double z = -1.0; z <= 1.0; z += 1.0 / 64) {
    const Weights4 w = lambda_weights(z);
    CHECK(std::abs(w.sum() - 1.0) < kTol);
    if (z >= -1.0 / 3.0) {
      for (int mu = 0; mu < 4; ++mu) {
        CHECK(w[mu] >= -kTol);
        CHECK(w[mu] <= 1.0 + kTol);
      }
    }
    if (z > 0) CHECK(w[2] >= w[0]);
    if (z < 0) CHECK(w[2] <= w[0]);
    CHECK(w[0] == w[1]);
    CHECK(w[1] == w[3]);
  }
}

TEST_CASE("lambda_weights at integer lengths") {
  for (int l = 0; l <= 40; ++l) {
    const Weights4 w = lambda_weights(z_of(l));
    for (int mu = 0; mu < 4; ++mu) {
      CHECK(w[mu] >= 0.0);
      CHECK(w[mu] <= 1.0);
    }
  }
}

TEST_CASE("s_pair") {
  CHECK(s_pair(EdgeIndex{0}, EdgeIndex{0}) == -1.0);
  CHECK(s_pair(EdgeIndex{2}, EdgeIndex{2}) == 3.0);
  CHECK(s_pair(EdgeIndex{0}, EdgeIndex{2}) == 1.0);
}

TEST_CASE("levi_civita") {
  CHECK(levi_civita(EdgeIndex{0}, EdgeIndex{1}, EdgeIndex{2}, EdgeIndex{3}) == 1);
  CHECK(levi_civita(EdgeIndex{1}, EdgeIndex{0}, EdgeIndex{2}, EdgeIndex{3}) == -1);
  CHECK(levi_civita(EdgeIndex{0}, EdgeIndex{0}, EdgeIndex{2}, EdgeIndex{3}) == 0);

  for (EdgeIndex a : kEdgeIndices)
    for (EdgeIndex b : kEdgeIndices)
      for (EdgeIndex c : kEdgeIndices)
        for (EdgeIndex d : kEdgeIndices) {
          const int e = levi_civita(a, b, c, d);
          CHECK(levi_civita(b, a, c, d) == -e);
          CHECK(levi_civita(a, c, b, d) == -e);
          CHECK(levi_civita(a, b, d, c) == -e);
          CHECK(levi_civita(d, b, c, a) == -e);
        }
}

TEST_CASE("pauli_bracket examples") {
  const cplx i(0.0, 1.0);
  CHECK(pauli_bracket(EdgeIndex{0}, EdgeIndex{0}, EdgeIndex{0}, EdgeIndex{0}) == cplx(2.0));
  CHECK(pauli_bracket(EdgeIndex{1}, EdgeIndex{1}, EdgeIndex{1}, EdgeIndex{1}) == cplx(2.0));
  CHECK(pauli_bracket(EdgeIndex{1}, EdgeIndex{2}, EdgeIndex{1}, EdgeIndex{2}) == cplx(-2.0));
  CHECK(pauli_bracket(EdgeIndex{0}, EdgeIndex{1}, EdgeIndex{2}, EdgeIndex{3}) == 2.0 * i);
}

TEST_CASE("pauli_bracket symmetries") {
  const cplx allowed[] = {0.0, 2.0, -2.0, cplx(0, 2), cplx(0, -2)};
  for (EdgeIndex a : kEdgeIndices)
    for (EdgeIndex b : kEdgeIndices)
      for (EdgeIndex c : kEdgeIndices)
        for (EdgeIndex d : kEdgeIndices) {
          const cplx v = pauli_bracket(a, b, c, d);
          bool ok = false;
          for (cplx x : allowed) ok = ok || std::abs(v - x) < kTol;
          CHECK(ok);
          CHECK(std::abs(pauli_bracket(b, c, d, a) - v) < kTol);
          CHECK(std::abs(pauli_bracket(d, c, b, a) - std::conj(v)) < kTol);
        }
}

TEST_CASE("m_coeff examples") {
  CHECK(std::abs(m_coeff(EdgeIndex{0}, EdgeIndex{0}, EdgeIndex{0}, EdgeIndex{0}) - cplx(-1.0)) < kTol);
  CHECK(std::abs(m_coeff(EdgeIndex{0}, EdgeIndex{1}, EdgeIndex{2}, EdgeIndex{3}) - cplx(0.0, -1.0)) < kTol);
  const auto& m = m_tensor();
  CHECK(m[((1 * 4 + 2) * 4 + 3) * 4 + 0] == m_coeff(EdgeIndex{1}, EdgeIndex{2}, EdgeIndex{3}, EdgeIndex{0}));
}

TEST_CASE("m_coeff equals the trace of the split") {
  // Splitting a chain into blocks mu, nu, rho joined by singlets and closing
  // with t_sigma gives -2 M_{mu nu rho sigma} = Tr(S tb_mu S tb_nu S tb_rho S tb_sigma^T)
  // with tb = conj(t).
  Eigen::Matrix2cd s;
  s << 0.0, 1.0, -1.0, 0.0;
  for (EdgeIndex mu : kEdgeIndices)
    for (EdgeIndex nu : kEdgeIndices)
      for (EdgeIndex rho : kEdgeIndices)
        for (EdgeIndex sigma : kEdgeIndices) {
          const cplx trace = (s * t_matrix(mu.value()).conjugate() * s * t_matrix(nu.value()).conjugate() * s *
                              t_matrix(rho.value()).conjugate() * s * t_matrix(sigma.value()).adjoint())
                                 .trace();
          CHECK(std::abs(trace + 2.0 * m_coeff(mu, nu, rho, sigma)) < kTol);
        }
}

TEST_CASE("pbc_tensors") {
  SUBCASE("infinite separations") {
    const PbcTensors t = pbc_tensors(0.0, 0.0, 0.0);
    CHECK((t.lambda.array() - 1.0).abs().maxCoeff() < kTol);
    CHECK(t.gamma.cwiseAbs().maxCoeff() < kTol);
    CHECK(t.gamma_reflected.cwiseAbs().maxCoeff() < kTol);
    for (double v : t.t) CHECK(std::abs(v) < kTol);
  }
  SUBCASE("equal separations kill T") {
    const double z = z_of(2).value();
    const PbcTensors t = pbc_tensors(z, z, z_of(6).value());
    for (double v : t.t) CHECK(v == 0.0);
  }
  SUBCASE("literal entries") {
    const double z1 = z_of(1).value(), z2 = z_of(2).value(), zt = z_of(5).value();
    const PbcTensors t = pbc_tensors(z1, z2, zt);
    const double norm = 1.0 + 3.0 * zt;
    CHECK(std::abs(t.lambda(2, 0) - (1.0 + (-3.0 + 3.0 - 1.0) * z1 * z2) / norm) < kTol);
    CHECK(std::abs(t.gamma(2, 2) - 6.0 / norm * (z1 * z2 - 0.5 * (z1 + z2))) < kTol);
    CHECK(std::abs(t.gamma_reflected(2, 2) - 6.0 / norm * (z1 * z2 + 0.5 * (z1 + z2))) < kTol);
    CHECK(std::abs(t.t_at(2, 0, 2, 0) - 8.0 / (4.0 * norm) * (z1 - z2)) < kTol);
  }
  CHECK_THROWS_AS(pbc_tensors(0.0, 0.0, -1.0 / 3.0), std::domain_error);
}

TEST_CASE("tensor ring assembly agrees with the contraction for adjacent outer blocks") {
  for (int la = 1; la <= 3; ++la)
    for (int lb = 1; lb <= 3; ++lb) {
      const double za = z_of(la).value(), zb = z_of(lb).value();
      const EdgeOperator op = build_pbc(za, zb, 1.0, 1.0);
      EdgeMatrix assembled = assemble_pbc_tensors(1.0, 1.0, za * zb);
      assembled /= weighted_trace(assembled, za, zb);
      CHECK((orthonormalize(op) - orthonormalize(EdgeOperator{assembled, za, zb})).cwiseAbs().maxCoeff() < 1e-12);
    }
}
