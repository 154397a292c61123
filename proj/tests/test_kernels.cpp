#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <random>

#include "aklt/kernels.hpp"
#include "aklt/vbs_oracle.hpp"

using namespace aklt;

namespace {

std::vector<cplx> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (cplx& x : v) x = cplx(g(rng), g(rng));
  return v;
}

}  // namespace

TEST_CASE("serial and parallel kernels agree bit for bit") {
  omp_set_num_threads(4);
  std::mt19937_64 rng(3);

  SUBCASE("append_site") {
    std::size_t phys = 1;
    std::vector<cplx> x = random_vector(rng, 4);
    for (int k = 0; k < 7; ++k) {
      const auto a = append_site(x, phys, Exec::Serial);
      const auto b = append_site(x, phys, Exec::Parallel);
      CHECK(a == b);
      x = a;
      phys *= 3;
    }
    CHECK_THROWS_AS(append_site(x, 5), std::invalid_argument);
  }

  SUBCASE("gather_blocks") {
    const std::vector<int> dims{2, 3, 3, 3, 3, 2};
    const auto psi = random_vector(rng, 2 * 81 * 2);
    const Eigen::MatrixXcd a = gather_blocks(psi, dims, {1, 2}, {4, 5}, Exec::Serial);
    const Eigen::MatrixXcd b = gather_blocks(psi, dims, {1, 2}, {4, 5}, Exec::Parallel);
    CHECK(a.rows() == 9 * 6);
    CHECK(a.cols() == 2 * 3);
    CHECK(a == b);
    // psi[s0,s1,s2,s3,s4,s5] lands at row (s1*3+s2)*6 + s4*2+s5, column s0*3+s3
    const std::size_t flat = ((((1 * 3 + 2) * 3 + 0) * 3 + 1) * 3 + 2) * 2 + 1;
    CHECK(a((2 * 3 + 0) * 6 + 2 * 2 + 1, 1 * 3 + 1) == psi[flat]);
    CHECK_THROWS_AS(gather_blocks(psi, dims, {1, 2}, {2}), std::invalid_argument);
    CHECK_THROWS_AS(gather_blocks(psi, dims, {7}, {}), std::out_of_range);
  }

  SUBCASE("gram_rows") {
    Eigen::MatrixXcd t(27, 40);
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] = random_vector(rng, 1)[0];
    const Eigen::MatrixXcd a = gram_rows(t, Exec::Serial);
    const Eigen::MatrixXcd b = gram_rows(t, Exec::Parallel);
    CHECK(a == b);
    CHECK((a - t * t.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("partial_transpose") {
    Eigen::MatrixXcd rho(12, 12);
    for (Eigen::Index i = 0; i < rho.size(); ++i) rho.data()[i] = random_vector(rng, 1)[0];
    const Eigen::MatrixXcd a = partial_transpose(rho, 3, 4, Exec::Serial);
    CHECK(a == partial_transpose(rho, 3, 4, Exec::Parallel));
    CHECK(partial_transpose(a, 3, 4) == rho);
    CHECK(a(1 * 4 + 2, 2 * 4 + 3) == rho(2 * 4 + 2, 1 * 4 + 3));
    CHECK_THROWS_AS(partial_transpose(rho, 3, 3), std::invalid_argument);
  }

  SUBCASE("whole states") {
    for (BoundaryMode m : {BoundaryMode::HalfBoundary, BoundaryMode::Periodic}) {
      const VbsState a = build_vbs(m, 8, {}, Exec::Serial);
      const VbsState b = build_vbs(m, 8, {}, Exec::Parallel);
      CHECK(a.amplitudes == b.amplitudes);
    }
  }
}
