#include "aklt/vbs_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace aklt {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

std::size_t pow3(int n) {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

// Boundary matrices t_mu[l][r] of the edge basis.
Eigen::Matrix2cd boundary_matrix(int mu) {
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

void normalize(std::vector<cplx>& v) {
  double n2 = 0.0;
  for (const cplx& x : v) n2 += std::norm(x);
  if (!(n2 > 1e-300)) throw std::domain_error("VBS state vanishes for these boundary weights");
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& x : v) x *= inv;
}

std::vector<cplx> close_with(const std::vector<cplx>& x, std::size_t phys, const Eigen::Matrix2cd& w) {
  std::vector<cplx> psi(phys, 0.0);
  for (std::size_t l = 0; l < 2; ++l)
    for (std::size_t r = 0; r < 2; ++r) {
      const cplx c = w(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(r));
      if (c == 0.0) continue;
      for (std::size_t p = 0; p < phys; ++p) psi[p] += c * x[(l * phys + p) * 2 + r];
    }
  return psi;
}

// Support of the reduced density matrix of `sites` as an isometry (dim x rank).
Eigen::MatrixXcd support_isometry(const VbsState& state, const std::vector<int>& sites, Exec exec) {
  const Eigen::MatrixXcd m = gather_blocks(state.amplitudes, state.site_dims, sites, {}, exec);
  constexpr double kRankTol = 1e-11;
  if (m.rows() <= m.cols()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram_rows(m, exec));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < m.rows(); ++k)
      if (solver.eigenvalues()(k) > kRankTol) keep.push_back(k);
    Eigen::MatrixXcd u(m.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) u.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(keep[k]);
    return u;
  }
  // smaller side: M^dagger M v = e v gives support vectors M v / sqrt(e)
  const Eigen::MatrixXcd mt = m.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram_rows(mt, exec));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < m.cols(); ++k)
    if (solver.eigenvalues()(k) > kRankTol) keep.push_back(k);
  Eigen::MatrixXcd u(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const Eigen::Index j = keep[k];
    u.col(static_cast<Eigen::Index>(k)) = m * solver.eigenvectors().col(j) / std::sqrt(solver.eigenvalues()(j));
  }
  return u;
}

}  // namespace

std::vector<cplx> block_tensor(int n, Exec exec) {
  if (n < 0) throw std::invalid_argument("block length must be non-negative");
  if (n == 0) return {1.0, 0.0, 0.0, 1.0};
  // first site: X[l][p][r] = Q[p][l][r]
  std::vector<cplx> x(12, 0.0);
  x[(0 * 3 + 0) * 2 + 0] = 1.0;
  x[(0 * 3 + 1) * 2 + 1] = kInvSqrt2;
  x[(1 * 3 + 1) * 2 + 0] = kInvSqrt2;
  x[(1 * 3 + 2) * 2 + 1] = 1.0;
  std::size_t phys = 3;
  for (int k = 1; k < n; ++k) {
    x = append_site(x, phys, exec);
    phys *= 3;
  }
  return x;
}

VbsState build_vbs(BoundaryMode mode, int bulk_sites, const std::optional<BoundaryWeights>& w, Exec exec) {
  if (bulk_sites > kOracleMaxBulkSites) {
    throw std::invalid_argument("oracle is limited to " + std::to_string(kOracleMaxBulkSites) +
                                " spin-1 sites, got " + std::to_string(bulk_sites));
  }
  if (bulk_sites < 1) throw std::invalid_argument("oracle needs at least one spin-1 site");

  const std::vector<cplx> x = block_tensor(bulk_sites, exec);
  const std::size_t phys = pow3(bulk_sites);
  VbsState state;
  state.mode = mode;

  switch (mode) {
    case BoundaryMode::HalfBoundary: {
      state.site_dims.assign(static_cast<std::size_t>(bulk_sites) + 2, 3);
      state.site_dims.front() = 2;
      state.site_dims.back() = 2;
      state.amplitudes.assign(4 * phys, 0.0);
      for (std::size_t p0 = 0; p0 < 2; ++p0)
        for (std::size_t pe = 0; pe < 2; ++pe) {
          const double sign = (p0 == 0 ? 1.0 : -1.0) * (pe == 1 ? 1.0 : -1.0);
          for (std::size_t p = 0; p < phys; ++p)
            state.amplitudes[(p0 * phys + p) * 2 + pe] = sign * x[((1 - p0) * phys + p) * 2 + (1 - pe)];
        }
      break;
    }
    case BoundaryMode::Spin1Boundary: {
      if (!w) throw std::invalid_argument("spin-1 boundary needs boundary weights");
      Eigen::Matrix2cd bw = Eigen::Matrix2cd::Zero();
      for (int mu = 0; mu < 4; ++mu) bw += (*w)[mu] * boundary_matrix(mu);
      state.site_dims.assign(static_cast<std::size_t>(bulk_sites), 3);
      state.amplitudes = close_with(x, phys, bw);
      break;
    }
    case BoundaryMode::Periodic: {
      Eigen::Matrix2cd singlet;
      singlet << 0.0, -1.0, 1.0, 0.0;  // S[r][l] seen as w[l][r]
      state.site_dims.assign(static_cast<std::size_t>(bulk_sites), 3);
      state.amplitudes = close_with(x, phys, singlet);
      break;
    }
  }
  normalize(state.amplitudes);
  return state;
}

VbsState build_vbs(const BlockGeometry& geometry, const std::optional<BoundaryWeights>& w, Exec exec) {
  geometry.validate();
  return build_vbs(geometry.mode, geometry.bulk_sites(), w, exec);
}

DenseOperator reduce(const VbsState& state, const std::vector<int>& sites_a, const std::vector<int>& sites_b,
                     Exec exec) {
  DenseOperator out;
  const Eigen::MatrixXcd t = gather_blocks(state.amplitudes, state.site_dims, sites_a, sites_b, exec);
  out.matrix = gram_rows(t, exec);
  out.dim_a = 1;
  for (int s : sites_a) out.dim_a *= static_cast<std::size_t>(state.site_dims[static_cast<std::size_t>(s)]);
  out.dim_b = static_cast<std::size_t>(t.rows()) / out.dim_a;
  return out;
}

DenseOperator reduce_compressed(const VbsState& state, const std::vector<int>& sites_a,
                                const std::vector<int>& sites_b, Exec exec) {
  const Eigen::MatrixXcd ua = support_isometry(state, sites_a, exec);
  const Eigen::MatrixXcd ub = support_isometry(state, sites_b, exec);
  const Eigen::MatrixXcd t = gather_blocks(state.amplitudes, state.site_dims, sites_a, sites_b, exec);

  const Eigen::Index da = ua.rows(), db = ub.rows();
  const Eigen::Index ra = ua.cols(), rb = ub.cols();
  Eigen::MatrixXcd tc(ra * rb, t.cols());
  const Eigen::MatrixXcd ua_conj = ua.conjugate();
  const Eigen::MatrixXcd ub_adj = ub.adjoint();
  for (Eigen::Index c = 0; c < t.cols(); ++c) {
    // column c as a db x da matrix: element (b, a) = t(a*db + b, c)
    const Eigen::Map<const Eigen::MatrixXcd> block(t.col(c).data(), db, da);
    const Eigen::MatrixXcd reduced = ub_adj * block * ua_conj;  // rb x ra
    for (Eigen::Index a = 0; a < ra; ++a)
      for (Eigen::Index b = 0; b < rb; ++b) tc(a * rb + b, c) = reduced(b, a);
  }

  DenseOperator out;
  out.matrix = gram_rows(tc, exec);
  out.dim_a = static_cast<std::size_t>(ra);
  out.dim_b = static_cast<std::size_t>(rb);
  return out;
}

DenseOperator dense_partial_transpose(const DenseOperator& op, Exec exec) {
  DenseOperator out;
  out.matrix = partial_transpose(op.matrix, op.dim_a, op.dim_b, exec);
  out.dim_a = op.dim_a;
  out.dim_b = op.dim_b;
  return out;
}

std::vector<cplx> block_edge_state(int n, EdgeIndex mu) {
  if (n < 1) throw std::invalid_argument("edge states need at least one site");
  const std::vector<cplx> x = block_tensor(n, Exec::Serial);
  return close_with(x, pow3(n), boundary_matrix(mu.value()));
}

EdgeMatrix edge_projection(const DenseOperator& rho, int la, int lb) {
  if (rho.dim_a != pow3(la) || rho.dim_b != pow3(lb))
    throw std::invalid_argument("edge_projection: operator dims do not match the block lengths");
  const auto da = static_cast<Eigen::Index>(rho.dim_a);
  const auto db = static_cast<Eigen::Index>(rho.dim_b);

  auto unit_states = [](int n) {
    std::array<Eigen::VectorXcd, 4> v;
    for (EdgeIndex mu : kEdgeIndices) {
      const std::vector<cplx> s = block_edge_state(n, mu);
      Eigen::VectorXcd e = Eigen::Map<const Eigen::VectorXcd>(s.data(), static_cast<Eigen::Index>(s.size()));
      const double norm = e.norm();
      v[static_cast<std::size_t>(mu.value())] = norm > 1e-12 ? Eigen::VectorXcd(e / norm) : Eigen::VectorXcd::Zero(e.size()).eval();
    }
    return v;
  };
  const auto va = unit_states(la);
  const auto vb = unit_states(lb);

  Eigen::MatrixXcd basis(da * db, 16);
  for (int mu = 0; mu < 4; ++mu)
    for (int r = 0; r < 4; ++r) {
      const auto& a = va[static_cast<std::size_t>(mu)];
      const auto& b = vb[static_cast<std::size_t>(r)];
      for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < db; ++j) basis(i * db + j, mu * 4 + r) = a(i) * b(j);
    }
  return basis.adjoint() * rho.matrix * basis;
}

GramReport gram_check(int block_sites, double tol) {
  if (block_sites < 1 || block_sites > 8) throw std::invalid_argument("gram_check supports 1..8 block sites");
  std::array<Eigen::VectorXcd, 4> v;
  for (EdgeIndex mu : kEdgeIndices) {
    const std::vector<cplx> s = block_edge_state(block_sites, mu);
    v[static_cast<std::size_t>(mu.value())] = Eigen::Map<const Eigen::VectorXcd>(s.data(), static_cast<Eigen::Index>(s.size()));
  }
  GramReport r;
  r.block_sites = block_sites;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) r.gram(a, b) = v[static_cast<std::size_t>(a)].dot(v[static_cast<std::size_t>(b)]);
  r.gram /= r.gram.trace().real();

  const Weights4 expected = lambda_weights(z_of(block_sites));
  for (int a = 0; a < 4; ++a) {
    r.weights[static_cast<std::size_t>(a)] = r.gram(a, a).real();
    r.max_error = std::max(r.max_error, std::abs(r.gram(a, a) - expected[a]));
    for (int b = 0; b < 4; ++b)
      if (a != b) r.max_offdiagonal = std::max(r.max_offdiagonal, std::abs(r.gram(a, b)));
  }
  r.max_error = std::max(r.max_error, r.max_offdiagonal);
  r.passed = r.max_error <= tol;
  return r;
}

Eigen::MatrixXd aklt_hamiltonian(BoundaryMode mode, int bulk_sites) {
  if (bulk_sites < 1 || bulk_sites > kHamiltonianMaxBulkSites) {
    throw std::invalid_argument("hamiltonian_check supports 1.." + std::to_string(kHamiltonianMaxBulkSites) +
                                " spin-1 sites");
  }
  // Spin operators as (Sz, S+) in the bases (+1,0,-1) and (up, down).
  auto spin_ops = [](int dim) {
    Eigen::MatrixXd sz = Eigen::MatrixXd::Zero(dim, dim), sp = Eigen::MatrixXd::Zero(dim, dim);
    if (dim == 3) {
      sz.diagonal() << 1.0, 0.0, -1.0;
      sp(0, 1) = std::sqrt(2.0);
      sp(1, 2) = std::sqrt(2.0);
    } else {
      sz.diagonal() << 0.5, -0.5;
      sp(0, 1) = 1.0;
    }
    return std::pair{sz, sp};
  };
  std::vector<int> dims;
  if (mode == BoundaryMode::HalfBoundary) dims.push_back(2);
  for (int k = 0; k < bulk_sites; ++k) dims.push_back(3);
  if (mode == BoundaryMode::HalfBoundary) dims.push_back(2);
  const std::size_t n = dims.size();

  std::vector<std::pair<std::size_t, std::size_t>> bonds;
  for (std::size_t k = 0; k + 1 < n; ++k) bonds.emplace_back(k, k + 1);
  if (mode == BoundaryMode::Periodic) bonds.emplace_back(n - 1, 0);

  std::vector<std::size_t> stride(n, 1);
  for (std::size_t k = n; k-- > 1;) stride[k - 1] = stride[k] * static_cast<std::size_t>(dims[k]);
  const std::size_t total = stride[0] * static_cast<std::size_t>(dims[0]);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (const auto& [i, j] : bonds) {
    const int di = dims[i], dj = dims[j];
    const auto [szi, spi] = spin_ops(di);
    const auto [szj, spj] = spin_ops(dj);
    // X = S_i . S_j on the pair space, pair index a*dj + b
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(di * dj, di * dj);
    for (int a = 0; a < di; ++a)
      for (int b = 0; b < dj; ++b)
        for (int ap = 0; ap < di; ++ap)
          for (int bp = 0; bp < dj; ++bp) {
            const double v = szi(ap, a) * szj(bp, b) +
                             0.5 * (spi(ap, a) * spj(b, bp) + spi(a, ap) * spj(bp, b));
            x(ap * dj + bp, a * dj + b) = v;
          }
    Eigen::MatrixXd local;
    if (di == 3 && dj == 3) {
      local = (3.0 * x + x * x + 2.0 * Eigen::MatrixXd::Identity(9, 9)) / 6.0;
    } else {
      local = (2.0 / 3.0) * (Eigen::MatrixXd::Identity(di * dj, di * dj) + x);
    }
    for (std::size_t s = 0; s < total; ++s) {
      const std::size_t a = (s / stride[i]) % static_cast<std::size_t>(di);
      const std::size_t b = (s / stride[j]) % static_cast<std::size_t>(dj);
      const std::size_t base = s - a * stride[i] - b * stride[j];
      for (int ap = 0; ap < di; ++ap)
        for (int bp = 0; bp < dj; ++bp) {
          const double v = local(ap * dj + bp, static_cast<Eigen::Index>(a) * dj + static_cast<Eigen::Index>(b));
          if (v == 0.0) continue;
          const std::size_t t = base + static_cast<std::size_t>(ap) * stride[i] + static_cast<std::size_t>(bp) * stride[j];
          h(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) += v;
        }
    }
  }
  return h;
}

HamiltonianReport hamiltonian_check(BoundaryMode mode, int bulk_sites, const std::optional<BoundaryWeights>& w) {
  HamiltonianReport r;
  r.mode = mode;
  r.bulk_sites = bulk_sites;
  const Eigen::MatrixXd h = aklt_hamiltonian(mode, bulk_sites);

  std::vector<VbsState> states;
  if (mode == BoundaryMode::Spin1Boundary) {
    for (int beta = 0; beta < 4; ++beta) states.push_back(build_vbs(mode, bulk_sites, BoundaryWeights::basis(beta)));
    if (w) states.push_back(build_vbs(mode, bulk_sites, w));
    r.expected_null_dimension = 4;
  } else {
    states.push_back(build_vbs(mode, bulk_sites));
    r.expected_null_dimension = 1;
  }
  for (const VbsState& s : states) {
    const Eigen::Map<const Eigen::VectorXcd> psi(s.amplitudes.data(), static_cast<Eigen::Index>(s.amplitudes.size()));
    r.residual = std::max(r.residual, (h.cast<cplx>() * psi).norm());
  }

  const Spectrum spec = symmetric_eigenvalues(h);
  r.min_eigenvalue = spec.min();
  r.null_dimension = static_cast<int>(
      std::count_if(spec.eigenvalues.begin(), spec.eigenvalues.end(), [](double e) { return e < 1e-8; }));
  r.passed = r.residual <= 1e-10 && r.min_eigenvalue >= -1e-10 && r.null_dimension == r.expected_null_dimension;
  return r;
}

double padded_spectrum_diff(const Spectrum& oracle, const Spectrum& edge, int multiplicity) {
  std::vector<double> a;
  for (double e : oracle.eigenvalues)
    for (int k = 0; k < multiplicity; ++k) a.push_back(e / multiplicity);
  std::vector<double> b = edge.eigenvalues;
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double diff = 0.0;
  for (std::size_t k = 0; k < n; ++k) diff = std::max(diff, std::abs(a[k] - b[k]));
  return diff;
}

OracleComparison compare_with_oracle(const BlockGeometry& geometry, const std::optional<BoundaryWeights>& w,
                                     double tol, Exec exec) {
  const VbsState state = build_vbs(geometry, w, exec);
  const DenseOperator rho = reduce_compressed(state, geometry.sites_a(), geometry.sites_b(), exec);
  const DenseOperator rho_pt = dense_partial_transpose(rho, exec);
  const Spectrum oracle = hermitian_eigenvalues(rho.matrix);
  const Spectrum oracle_pt = hermitian_eigenvalues(rho_pt.matrix);

  const EdgeOperator op = build(geometry, w);
  const Spectrum edge = edge_spectrum(op);
  const Spectrum edge_pt = edge_spectrum(partial_transpose_A(op));

  const int m = geometry.spectral_multiplicity();
  OracleComparison c;
  c.negativity_oracle = negativity(oracle_pt);
  c.negativity_edge = negativity(edge_pt);
  c.abs_diff = std::abs(c.negativity_edge - c.negativity_oracle);
  c.spectrum_diff = padded_spectrum_diff(oracle, edge, m);
  c.pt_spectrum_diff = padded_spectrum_diff(oracle_pt, edge_pt, m);
  c.passed = c.abs_diff <= tol && c.spectrum_diff <= tol && c.pt_spectrum_diff <= tol;
  return c;
}

}  // namespace aklt
