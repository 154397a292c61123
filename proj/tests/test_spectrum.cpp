#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "aklt/spectrum.hpp"

using namespace aklt;

namespace {

Eigen::MatrixXcd rho02() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 0) = 1.0 / 3.0;
  m(1, 1) = 1.0 / 6.0;
  m(2, 2) = 1.0 / 6.0;
  m(1, 2) = 1.0 / 6.0;
  m(2, 1) = 1.0 / 6.0;
  m(3, 3) = 1.0 / 3.0;
  return m;
}

Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

void check_values(const Spectrum& s, std::vector<double> expected, double tol) {
  std::sort(expected.begin(), expected.end());
  REQUIRE(s.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) CHECK(std::abs(s.eigenvalues[k] - expected[k]) < tol);
}

}  // namespace

TEST_CASE("eigenvalue examples") {
  check_values(hermitian_eigenvalues(Eigen::MatrixXcd::Identity(4, 4)), {1, 1, 1, 1}, 1e-15);
  check_values(hermitian_eigenvalues(rho02()), {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0}, 1e-15);

  Eigen::MatrixXcd pt = rho02();
  // transpose on the first qubit swaps the |01><10| and |00><11| couplings
  pt(1, 2) = pt(2, 1) = 0.0;
  pt(0, 3) = pt(3, 0) = 1.0 / 6.0;
  const Spectrum s = hermitian_eigenvalues(pt);
  check_values(s, {0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6}, 1e-15);
  CHECK(negativity(s) == 0.0);
}

TEST_CASE("non-Hermitian input is rejected") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3);
  m(0, 2) = 0.5;
  CHECK_THROWS_WITH_AS(hermitian_eigenvalues(m), doctest::Contains("max |H - H^dagger|"), std::invalid_argument);
  CHECK_THROWS_AS(hermitian_eigenvalues(Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("residuals, trace and scaling") {
  std::mt19937_64 rng(11);
  for (int n : {1, 4, 16, 81, 243}) {
    const Eigen::MatrixXcd h = random_hermitian(rng, n);
    const Eigensystem es = hermitian_eigensystem(h);
    CHECK(std::is_sorted(es.spectrum.eigenvalues.begin(), es.spectrum.eigenvalues.end()));
    CHECK(std::abs(es.spectrum.sum() - h.trace().real()) < 1e-11 * n);
    const double norm = h.norm();
    for (int k = 0; k < n; ++k) {
      const Eigen::VectorXcd v = es.vectors.col(k);
      CHECK((h * v - es.spectrum.eigenvalues[static_cast<std::size_t>(k)] * v).norm() <= 1e-10 * norm);
    }
    const Spectrum scaled = hermitian_eigenvalues(2.5 * h);
    for (int k = 0; k < n; ++k)
      CHECK(std::abs(scaled.eigenvalues[static_cast<std::size_t>(k)] - 2.5 * es.spectrum.eigenvalues[static_cast<std::size_t>(k)]) <
            1e-10 * norm);
  }
}

TEST_CASE("negativity threshold") {
  Spectrum s{{-0.25, -1e-13, 0.5, 0.75}};
  CHECK(negativity(s) == 0.25);
  CHECK(negativity(Spectrum{{0.0, 1.0}}) == 0.0);

  // maximally entangled pair
  Eigen::MatrixXcd bell = Eigen::MatrixXcd::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  Eigen::MatrixXcd pt = Eigen::MatrixXcd::Zero(4, 4);
  pt(0, 0) = pt(3, 3) = pt(1, 2) = pt(2, 1) = 0.5;
  const Spectrum e = hermitian_eigenvalues(pt);
  check_values(e, {-0.5, 0.5, 0.5, 0.5}, 1e-15);
  CHECK(std::abs(negativity(e) - 0.5) < 1e-15);
}

TEST_CASE("negativity_of: separated blocks with spin-1/2 ends") {
  for (int lc = 1; lc <= 4; ++lc)
    for (int le = 1; le <= 4; ++le)
      for (int la = 1; la <= 4; ++la)
        for (int lb = 1; lb <= 4; ++lb)
          for (int gap = 1; gap <= 6; ++gap) {
            const NegativityResult r = negativity_of(BlockGeometry::half(lc, la, gap, lb, le));
            CHECK(r.negativity <= 1e-12);
            CHECK(std::abs(r.spectrum.sum() - 1.0) < 1e-11);
          }
}

TEST_CASE("negativity_of: spin-1 ends") {
  SUBCASE("large blocks") {
    for (int beta = 0; beta < 4; ++beta) {
      const auto r = negativity_of(BlockGeometry::spin1(20, 0, 20), BoundaryWeights::basis(beta));
      CHECK(std::abs(r.negativity - 1.5) < 1e-10);
      CHECK(r.weights_label == "beta" + std::to_string(beta));
      const auto s = negativity_of(BlockGeometry::spin1(20, 3, 20), BoundaryWeights::basis(beta));
      CHECK(std::abs(s.negativity - 0.5) < 1e-10);
    }
  }
  SUBCASE("beta independence for 0, 1, 3") {
    for (int la = 1; la <= 4; ++la)
      for (int lb = 1; lb <= 4; ++lb)
        for (int gap = 0; gap <= 4; ++gap) {
          const auto g = BlockGeometry::spin1(la, gap, lb);
          const double n0 = negativity_of(g, BoundaryWeights::basis(0)).negativity;
          CHECK(std::abs(negativity_of(g, BoundaryWeights::basis(1)).negativity - n0) < 1e-12);
          CHECK(std::abs(negativity_of(g, BoundaryWeights::basis(3)).negativity - n0) < 1e-12);
        }
  }
  SUBCASE("singlet boundary differs at finite size") {
    const auto g = BlockGeometry::spin1(2, 1, 2);
    CHECK(std::abs(negativity_of(g, BoundaryWeights::basis(0)).negativity - 0.483227) < 1e-6);
    CHECK(std::abs(negativity_of(g, BoundaryWeights::basis(2)).negativity - 0.494702) < 1e-6);
  }
  SUBCASE("separable ends") {
    for (int c = 1; c <= 2; ++c)
      for (int d = 1; d <= 2; ++d) {
        const BoundaryWeights w = BoundaryWeights::separable(c, d);
        for (int gap = 1; gap <= 4; ++gap) CHECK(negativity_of(BlockGeometry::spin1(2, gap, 3), w).negativity <= 1e-12);
        for (int la = 1; la <= 4; ++la)
          for (int lb = 1; lb <= 4; ++lb)
            CHECK(std::abs(negativity_of(BlockGeometry::spin1(la, 0, lb), w).negativity -
                           closed_form(SeparableAdjacent{la, lb, c, d})) < 1e-12);
      }
  }
}

TEST_CASE("negativity_of: ring") {
  for (int l1 = 1; l1 <= 3; ++l1)
    for (int l2 = 1; l2 <= 3; ++l2)
      for (int la = 1; la <= 3; ++la)
        for (int lb = 1; lb <= 3; ++lb) CHECK(negativity_of(BlockGeometry::periodic(l1, la, l2, lb)).negativity <= 1e-12);
  CHECK(negativity_of(BlockGeometry::periodic(0, 2, 1, 2)).negativity > 0.1);
}

TEST_CASE("closed forms") {
  CHECK(std::abs(closed_form(SemiInfinite{30}) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(closed_form(SemiInfinite{0}) - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(semi_infinite_negativity(1.0) - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(closed_form(SeparableAdjacent{1, 1, 1, 1}) - 0.5) < 1e-15);
  CHECK(std::abs(closed_form(SeparableAdjacent{1, 1, 2, 1}) - 0.4) < 1e-15);
  CHECK(std::abs(closed_form(HalfAdjacent{30, 30}) - 0.5) < 1e-15);
  CHECK(closed_form(Spin1Limit{0}) == 1.5);
  CHECK(closed_form(Spin1Limit{4}) == 0.5);
  CHECK_THROWS_AS(closed_form(SeparableAdjacent{1, 1, 3, 1}), std::invalid_argument);

  const auto g = BlockGeometry::spin1(2, 0, 3);
  CHECK(std::holds_alternative<SeparableAdjacent>(make_closed_form("separable_adjacent", g, BoundaryWeights::separable(2, 1))));
  CHECK(closed_form_name(make_closed_form("semi_infinite", g)) == "semi_infinite");
  CHECK_THROWS_AS(make_closed_form("separable_adjacent", g, BoundaryWeights::basis(0)), std::invalid_argument);
  CHECK_THROWS_AS(make_closed_form("eq99", g), std::invalid_argument);
}

TEST_CASE("closed forms against the exact pipeline") {
  SUBCASE("semi-infinite, separated") {
    for (int gap = 1; gap <= 10; ++gap) {
      const double exact = negativity_of(BlockGeometry::spin1(40, gap, 1), BoundaryWeights::basis(0)).negativity;
      CHECK(std::abs(exact - closed_form(SemiInfinite{gap})) < 1e-12);
    }
  }
  SUBCASE("series") {
    const double z = z_of(8).value();
    const double exact = negativity_of(BlockGeometry::spin1(40, 8, 1), BoundaryWeights::basis(0)).negativity;
    CHECK(std::abs(exact - 1.0 / 3.0 - 8.0 / 27.0 * z * z) < 1e-8);
  }
  SUBCASE("adjacent half boundary, second order") {
    for (int la = 2; la <= 8; ++la)
      for (int lb = 2; lb <= 8; ++lb) {
        const double za = z_of(la).value(), zb = z_of(lb).value();
        const double exact = negativity_of(BlockGeometry::half(1, la, 0, lb, 1)).negativity;
        CHECK(std::abs(exact - closed_form(HalfAdjacent{la, lb})) <= 5.0 * (za * za + zb * zb));
      }
  }
}
