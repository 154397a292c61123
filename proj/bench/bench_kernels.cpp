#include <benchmark/benchmark.h>

#include <random>

#include "aklt/kernels.hpp"

using namespace aklt;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::Serial : Exec::Parallel; }

std::vector<cplx> chain(int sites) {
  std::vector<cplx> x{1.0, 0.0, 0.0, 1.0};
  std::size_t dim = 1;
  for (int k = 0; k < sites; ++k, dim *= 3) x = append_site(x, dim, Exec::Serial);
  return x;
}

Eigen::MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cplx(n(rng), n(rng));
  return m;
}

void BM_append_site(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const std::vector<cplx> x = chain(sites);
  std::size_t dim = 1;
  for (int k = 0; k < sites; ++k) dim *= 3;
  for (auto _ : state) benchmark::DoNotOptimize(append_site(x, dim, exec_of(state)));
}

void BM_gather_blocks(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const std::vector<cplx> x = chain(sites);
  std::vector<int> dims(static_cast<std::size_t>(sites) + 2, 3);
  dims.front() = dims.back() = 2;
  const std::vector<int> a{1, 2}, b{sites - 1, sites};
  for (auto _ : state) benchmark::DoNotOptimize(gather_blocks(x, dims, a, b, exec_of(state)));
}

void BM_gram_rows(benchmark::State& state) {
  const Eigen::MatrixXcd t = random_matrix(state.range(0), 4 * state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gram_rows(t, exec_of(state)));
}

void BM_partial_transpose(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Eigen::MatrixXcd rho = random_matrix(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
  for (auto _ : state) benchmark::DoNotOptimize(partial_transpose(rho, d, d, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_append_site)->ArgsProduct({{6, 8, 10}, {0, 1}})->ArgNames({"sites", "omp"});
BENCHMARK(BM_gather_blocks)->ArgsProduct({{6, 8, 10}, {0, 1}})->ArgNames({"sites", "omp"});
BENCHMARK(BM_gram_rows)->ArgsProduct({{81, 243}, {0, 1}})->ArgNames({"rows", "omp"});
BENCHMARK(BM_partial_transpose)->ArgsProduct({{9, 27}, {0, 1}})->ArgNames({"dim", "omp"});

BENCHMARK_MAIN();
