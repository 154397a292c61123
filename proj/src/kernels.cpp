#include "aklt/kernels.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace aklt {
namespace {

// Q[p][a][b]: spin-1 state p in (+1, 0, -1) from virtual spins a, b.
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kQ[3][2][2] = {
    {{1.0, 0.0}, {0.0, 0.0}},
    {{0.0, kInvSqrt2}, {kInvSqrt2, 0.0}},
    {{0.0, 0.0}, {0.0, 1.0}},
};

inline void append_one(const std::vector<cplx>& x, std::vector<cplx>& y, std::size_t row) {
  // row = l*phys_dim + P
  const cplx up = x[row * 2 + 0];
  const cplx down = x[row * 2 + 1];
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t rp = 0; rp < 2; ++rp) {
      // S[0][1] = 1, S[1][0] = -1
      y[(row * 3 + p) * 2 + rp] = up * kQ[p][1][rp] - down * kQ[p][0][rp];
    }
  }
}

struct SiteSplit {
  std::vector<std::size_t> stride_of_site;  // stride of each site in psi
  std::vector<int> role;                    // 0 = A, 1 = B, 2 = rest
  std::vector<std::size_t> out_stride;      // stride inside its own group
  std::size_t dim_a = 1, dim_b = 1, dim_rest = 1;
};

SiteSplit split_sites(const std::vector<int>& dims, const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = dims.size();
  SiteSplit s;
  s.stride_of_site.assign(n, 1);
  s.role.assign(n, 2);
  s.out_stride.assign(n, 1);
  for (std::size_t k = n; k-- > 1;) s.stride_of_site[k - 1] = s.stride_of_site[k] * static_cast<std::size_t>(dims[k]);

  auto mark = [&](const std::vector<int>& sites, int role) {
    for (int site : sites) {
      if (site < 0 || static_cast<std::size_t>(site) >= n) throw std::out_of_range("site index out of range");
      if (s.role[static_cast<std::size_t>(site)] != 2) throw std::invalid_argument("site sets overlap");
      s.role[static_cast<std::size_t>(site)] = role;
    }
  };
  mark(a, 0);
  mark(b, 1);

  // group order: A in the given order, B in the given order, rest ascending
  auto assign = [&](const std::vector<int>& sites, std::size_t& dim) {
    for (std::size_t k = sites.size(); k-- > 0;) {
      const auto site = static_cast<std::size_t>(sites[k]);
      s.out_stride[site] = dim;
      dim *= static_cast<std::size_t>(dims[site]);
    }
  };
  assign(a, s.dim_a);
  assign(b, s.dim_b);
  std::vector<int> rest;
  for (std::size_t k = 0; k < n; ++k)
    if (s.role[k] == 2) rest.push_back(static_cast<int>(k));
  assign(rest, s.dim_rest);
  return s;
}

}  // namespace

std::vector<cplx> append_site(const std::vector<cplx>& x, std::size_t phys_dim, Exec exec) {
  if (x.size() != 4 * phys_dim) throw std::invalid_argument("append_site: tensor size does not match phys_dim");
  std::vector<cplx> y(x.size() * 3);
  const auto rows = static_cast<std::ptrdiff_t>(2 * phys_dim);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t row = 0; row < rows; ++row) append_one(x, y, static_cast<std::size_t>(row));
  } else {
    for (std::ptrdiff_t row = 0; row < rows; ++row) append_one(x, y, static_cast<std::size_t>(row));
  }
  return y;
}

Eigen::MatrixXcd gather_blocks(const std::vector<cplx>& psi, const std::vector<int>& site_dims,
                               const std::vector<int>& sites_a, const std::vector<int>& sites_b, Exec exec) {
  const std::size_t total =
      std::accumulate(site_dims.begin(), site_dims.end(), std::size_t{1},
                      [](std::size_t acc, int d) { return acc * static_cast<std::size_t>(d); });
  if (psi.size() != total) throw std::invalid_argument("gather_blocks: amplitude count does not match site dims");

  const SiteSplit s = split_sites(site_dims, sites_a, sites_b);
  const std::size_t n = site_dims.size();
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(s.dim_a * s.dim_b), static_cast<Eigen::Index>(s.dim_rest));

  auto place = [&](std::size_t i) {
    std::size_t idx[3] = {0, 0, 0};
    std::size_t rem = i;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t digit = rem / s.stride_of_site[k];
      rem -= digit * s.stride_of_site[k];
      idx[s.role[k]] += digit * s.out_stride[k];
    }
    out(static_cast<Eigen::Index>(idx[0] * s.dim_b + idx[1]), static_cast<Eigen::Index>(idx[2])) = psi[i];
  };

  const auto count = static_cast<std::ptrdiff_t>(total);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) place(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < count; ++i) place(static_cast<std::size_t>(i));
  }
  return out;
}

Eigen::MatrixXcd gram_rows(const Eigen::MatrixXcd& t, Exec exec) {
  const Eigen::Index rows = t.rows();
  const Eigen::Index cols = t.cols();
  Eigen::MatrixXcd out(rows, rows);
  if (exec == Exec::Parallel) {
    // row-major copy so that each dot product streams contiguous memory
    const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> tr = t;
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        cplx acc = 0.0;
        for (Eigen::Index c = 0; c < cols; ++c) acc += tr(i, c) * std::conj(tr(j, c));
        out(i, j) = acc;
        out(j, i) = std::conj(acc);
      }
    }
  } else {
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < rows; ++j) {
        cplx acc = 0.0;
        for (Eigen::Index c = 0; c < cols; ++c) acc += t(i, c) * std::conj(t(j, c));
        out(i, j) = acc;
      }
    }
  }
  return out;
}

Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho, std::size_t dim_a, std::size_t dim_b, Exec exec) {
  const auto n = static_cast<Eigen::Index>(dim_a * dim_b);
  if (rho.rows() != n || rho.cols() != n) throw std::invalid_argument("partial_transpose: shape does not match dims");
  Eigen::MatrixXcd out(n, n);
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  auto row_block = [&](Eigen::Index a) {
    for (Eigen::Index b = 0; b < db; ++b)
      for (Eigen::Index ap = 0; ap < da; ++ap)
        for (Eigen::Index bp = 0; bp < db; ++bp) out(a * db + b, ap * db + bp) = rho(ap * db + b, a * db + bp);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index a = 0; a < da; ++a) row_block(a);
  } else {
    for (Eigen::Index a = 0; a < da; ++a) row_block(a);
  }
  return out;
}

}  // namespace aklt
