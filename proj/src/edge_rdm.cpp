#include "aklt/edge_rdm.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace aklt {
namespace {

constexpr std::size_t flat4(int a, int b, int c, int d) {
  return static_cast<std::size_t>(((a * 4 + b) * 4 + c) * 4 + d);
}

// sigma_mu^T = transpose_sign(mu) sigma_mu
constexpr double transpose_sign(int mu) { return mu == 2 ? -1.0 : 1.0; }

EdgeMatrix normalized(EdgeMatrix c, double z_a, double z_b) {
  const double trace = weighted_trace(c, z_a, z_b);
  if (!(trace > 1e-300)) throw std::domain_error("edge operator has vanishing weighted trace");
  c /= trace;
  return c;
}

double parse_number(std::string_view token) {
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw std::invalid_argument("cannot parse number '" + std::string(token) + "'");
  return value;
}

}  // namespace

std::string_view to_string(BoundaryMode mode) {
  switch (mode) {
    case BoundaryMode::HalfBoundary: return "half";
    case BoundaryMode::Spin1Boundary: return "spin1";
    case BoundaryMode::Periodic: return "pbc";
  }
  return "?";
}

BoundaryMode parse_boundary_mode(std::string_view text) {
  if (text == "half" || text == "HalfBoundary") return BoundaryMode::HalfBoundary;
  if (text == "spin1" || text == "Spin1Boundary") return BoundaryMode::Spin1Boundary;
  if (text == "pbc" || text == "periodic" || text == "Periodic") return BoundaryMode::Periodic;
  throw std::invalid_argument("unknown boundary mode '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// BlockGeometry

BlockGeometry BlockGeometry::half(int lc, int la, int gap, int lb, int le) {
  BlockGeometry g{BoundaryMode::HalfBoundary, lc, la, gap, lb, le};
  g.validate();
  return g;
}

BlockGeometry BlockGeometry::spin1(int la, int gap, int lb) {
  BlockGeometry g{BoundaryMode::Spin1Boundary, 0, la, gap, lb, 0};
  g.validate();
  return g;
}

BlockGeometry BlockGeometry::periodic(int l1, int la, int l2, int lb, std::optional<int> ring_length) {
  BlockGeometry g{BoundaryMode::Periodic, l1, la, l2, lb, 0};
  g.validate();
  if (ring_length && *ring_length != l1 + la + l2 + lb) {
    throw std::invalid_argument("ring length " + std::to_string(*ring_length) +
                                " does not match L_1 + L_A + L_2 + L_B = " + std::to_string(l1 + la + l2 + lb));
  }
  return g;
}

void BlockGeometry::validate() const {
  if (la < 1 || lb < 1) throw std::invalid_argument("blocks A and B need at least one site (" + describe() + ")");
  if (gap < 0 || outer_left < 0 || outer_right < 0)
    throw std::invalid_argument("block lengths must be non-negative (" + describe() + ")");
  if (mode == BoundaryMode::HalfBoundary && bulk_sites() < 1)
    throw std::invalid_argument("half-boundary chain needs at least one spin-1 site (" + describe() + ")");
}

int BlockGeometry::bulk_sites() const {
  switch (mode) {
    case BoundaryMode::HalfBoundary: return outer_left + la + gap + lb + outer_right - 2;
    case BoundaryMode::Spin1Boundary: return la + gap + lb;
    case BoundaryMode::Periodic: return outer_left + la + gap + lb;
  }
  return 0;
}

int BlockGeometry::total_sites() const {
  return mode == BoundaryMode::HalfBoundary ? bulk_sites() + 2 : bulk_sites();
}

std::vector<int> BlockGeometry::sites_a() const {
  const int first = mode == BoundaryMode::Spin1Boundary ? 0 : outer_left;
  std::vector<int> s(static_cast<std::size_t>(la));
  for (int i = 0; i < la; ++i) s[static_cast<std::size_t>(i)] = first + i;
  return s;
}

std::vector<int> BlockGeometry::sites_b() const {
  const int first = (mode == BoundaryMode::Spin1Boundary ? 0 : outer_left) + la + gap;
  std::vector<int> s(static_cast<std::size_t>(lb));
  for (int i = 0; i < lb; ++i) s[static_cast<std::size_t>(i)] = first + i;
  return s;
}

bool BlockGeometry::flagged() const {
  return mode == BoundaryMode::HalfBoundary && (outer_left == 0 || outer_right == 0);
}

int BlockGeometry::spectral_multiplicity() const {
  if (mode != BoundaryMode::HalfBoundary) return 1;
  return (outer_left == 0 ? 2 : 1) * (outer_right == 0 ? 2 : 1);
}

double BlockGeometry::z_a() const {
  if (mode == BoundaryMode::HalfBoundary && outer_left == 0) return 0.0;
  return z_of(la).value();
}

double BlockGeometry::z_b() const {
  if (mode == BoundaryMode::HalfBoundary && outer_right == 0) return 0.0;
  return z_of(lb).value();
}

std::string BlockGeometry::describe() const {
  std::ostringstream os;
  switch (mode) {
    case BoundaryMode::HalfBoundary:
      os << "half(L_C=" << outer_left << ", L_A=" << la << ", L=" << gap << ", L_B=" << lb << ", L_E=" << outer_right << ")";
      break;
    case BoundaryMode::Spin1Boundary:
      os << "spin1(L_A=" << la << ", L=" << gap << ", L_B=" << lb << ")";
      break;
    case BoundaryMode::Periodic:
      os << "pbc(L_1=" << outer_left << ", L_A=" << la << ", L_2=" << gap << ", L_B=" << lb << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// BoundaryWeights

BoundaryWeights::BoundaryWeights(const std::array<cplx, 4>& w, std::string label) : w_(w), label_(std::move(label)) {
  double norm2 = 0.0;
  for (const cplx& x : w_) norm2 += std::norm(x);
  if (!(norm2 > 1e-300)) throw std::invalid_argument("boundary weights have zero norm");
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& x : w_) x *= inv;
}

BoundaryWeights BoundaryWeights::basis(int beta) {
  std::array<cplx, 4> w{};
  w[static_cast<std::size_t>(EdgeIndex{beta}.value())] = 1.0;
  return BoundaryWeights(w, "beta" + std::to_string(beta));
}

BoundaryWeights BoundaryWeights::separable(int c, int d) {
  if (c < 1 || c > 2 || d < 1 || d > 2) throw std::invalid_argument("separable boundary labels must be 1 or 2");
  const cplx i(0.0, 1.0);
  // a^dag a^dag = (T0+T3)/2, b^dag b^dag = (T0-T3)/2,
  // a^dag b^dag = (T1-iT2)/2, b^dag a^dag = (T1+iT2)/2
  if (c == 1 && d == 1) return BoundaryWeights({1.0, 0.0, 0.0, 1.0}, "cc");
  if (c == 1 && d == 2) return BoundaryWeights({0.0, 1.0, -i, 0.0}, "cd");
  if (c == 2 && d == 1) return BoundaryWeights({0.0, 1.0, i, 0.0}, "dc");
  return BoundaryWeights({1.0, 0.0, 0.0, -1.0}, "dd");
}

BoundaryWeights BoundaryWeights::parse(std::string_view text) {
  for (int beta = 0; beta < 4; ++beta) {
    if (text == "beta" + std::to_string(beta)) return basis(beta);
  }
  if (text == "cc") return separable(1, 1);
  if (text == "cd") return separable(1, 2);
  if (text == "dc") return separable(2, 1);
  if (text == "dd") return separable(2, 2);

  std::vector<double> numbers;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? text.size() : comma;
    numbers.push_back(parse_number(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::array<cplx, 4> w{};
  if (numbers.size() == 4) {
    for (std::size_t k = 0; k < 4; ++k) w[k] = numbers[k];
  } else if (numbers.size() == 8) {
    for (std::size_t k = 0; k < 4; ++k) w[k] = cplx(numbers[2 * k], numbers[2 * k + 1]);
  } else {
    throw std::invalid_argument("boundary weights need a name, 4 reals or 8 (re,im) numbers: '" +
                                std::string(text) + "'");
  }
  return BoundaryWeights(w, "custom");
}

// ---------------------------------------------------------------------------
// Builders

EdgeMatrix m_contraction(const Weights4& inner, const Weights4& outer) {
  const auto& m = m_tensor();
  EdgeMatrix c = EdgeMatrix::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int rho = 0; rho < 4; ++rho)
      for (int alpha = 0; alpha < 4; ++alpha)
        for (int beta = 0; beta < 4; ++beta) {
          cplx acc = 0.0;
          for (int nu = 0; nu < 4; ++nu)
            for (int sigma = 0; sigma < 4; ++sigma)
              acc += inner[nu] * outer[sigma] * m[flat4(mu, nu, rho, sigma)] *
                     std::conj(m[flat4(alpha, nu, beta, sigma)]);
          c(mu * 4 + rho, alpha * 4 + beta) = acc;
        }
  return c;
}

EdgeOperator build_half_boundary(double z_a, double z_b, double z) {
  // validates the three decay factors
  lambda_weights(z_a);
  lambda_weights(z_b);
  lambda_weights(z);

  const cplx i(0.0, 1.0);
  EdgeMatrix c = EdgeMatrix::Zero();
  for (EdgeIndex mu : kEdgeIndices)
    for (EdgeIndex rho : kEdgeIndices)
      for (EdgeIndex alpha : kEdgeIndices)
        for (EdgeIndex beta : kEdgeIndices) {
          const double d_ma = mu == alpha ? 1.0 : 0.0;
          const double d_rb = rho == beta ? 1.0 : 0.0;
          const double d_mr = mu == rho ? 1.0 : 0.0;
          const double d_ab = alpha == beta ? 1.0 : 0.0;
          const double g_ra = rho == alpha ? rho.metric() : 0.0;
          const double g_mb = mu == beta ? mu.metric() : 0.0;
          const double s_tilde = -mu.metric() * alpha.metric() * s_pair(mu, alpha);

          cplx value = d_ma * d_rb + z * (d_mr * d_ab - g_ra * g_mb) * s_tilde;
          // g is diagonal: lambda = alpha, sigma = beta
          const int eps = levi_civita(mu, rho, alpha, beta);
          if (eps != 0) {
            value += 0.5 * i * z * alpha.metric() * beta.metric() * static_cast<double>(eps) *
                     (s_pair(rho, beta) - s_pair(mu, alpha));
          }
          c(mu.value() * 4 + rho.value(), alpha.value() * 4 + beta.value()) = value;
        }

  EdgeOperator op;
  op.coeffs = normalized(c, z_a, z_b);
  op.z_a = z_a;
  op.z_b = z_b;
  return op;
}

EdgeMatrix spin1_contraction(const Weights4& gap_weights, const BoundaryWeights& w) {
  // Amplitude of |A_mu, C_alpha, B_lambda>, in the sigma basis on A and B:
  //   K_{mu alpha lambda} = sum_beta w~_beta [sigma_lambda sigma_alpha sigma_mu sigma_beta]
  // where w~ maps T-basis weights to sigma-basis weights.
  std::array<cplx, 64> k{};
  for (EdgeIndex mu : kEdgeIndices)
    for (EdgeIndex alpha : kEdgeIndices)
      for (EdgeIndex lambda : kEdgeIndices) {
        cplx acc = 0.0;
        for (EdgeIndex beta : kEdgeIndices) {
          acc += transpose_sign(beta.value()) * w[beta.value()] * pauli_bracket(lambda, alpha, mu, beta);
        }
        k[static_cast<std::size_t>((mu.value() * 4 + alpha.value()) * 4 + lambda.value())] = acc;
      }

  EdgeMatrix c = EdgeMatrix::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int lambda = 0; lambda < 4; ++lambda)
      for (int mu2 = 0; mu2 < 4; ++mu2)
        for (int lambda2 = 0; lambda2 < 4; ++lambda2) {
          cplx acc = 0.0;
          for (int alpha = 0; alpha < 4; ++alpha) {
            acc += gap_weights[alpha] * k[static_cast<std::size_t>((mu * 4 + alpha) * 4 + lambda)] *
                   std::conj(k[static_cast<std::size_t>((mu2 * 4 + alpha) * 4 + lambda2)]);
          }
          // back to the T basis: |X_2> carries a relative sign against sigma_2
          const double phase = transpose_sign(mu) * transpose_sign(lambda) * transpose_sign(mu2) * transpose_sign(lambda2);
          c(mu * 4 + lambda, mu2 * 4 + lambda2) = phase * acc;
        }
  return c;
}

EdgeOperator build_spin1_boundary(double z_a, double z_b, double z_gap, const BoundaryWeights& w) {
  lambda_weights(z_a);
  lambda_weights(z_b);
  EdgeOperator op;
  op.coeffs = normalized(spin1_contraction(lambda_weights(z_gap), w), z_a, z_b);
  op.z_a = z_a;
  op.z_b = z_b;
  return op;
}

EdgeOperator build_pbc(double z_a, double z_b, double z1, double z2) {
  lambda_weights(z_a);
  lambda_weights(z_b);
  EdgeOperator op;
  op.coeffs = normalized(m_contraction(lambda_weights(z2), lambda_weights(z1)), z_a, z_b);
  op.z_a = z_a;
  op.z_b = z_b;
  return op;
}

EdgeOperator build(const BlockGeometry& geometry, const std::optional<BoundaryWeights>& w) {
  geometry.validate();
  EdgeOperator op;
  switch (geometry.mode) {
    case BoundaryMode::HalfBoundary:
      op = build_half_boundary(geometry.z_a(), geometry.z_b(), z_of(geometry.gap).value());
      break;
    case BoundaryMode::Spin1Boundary:
      if (!w) throw std::invalid_argument("spin-1 boundary needs boundary weights");
      op = build_spin1_boundary(geometry.z_a(), geometry.z_b(), z_of(geometry.gap).value(), *w);
      break;
    case BoundaryMode::Periodic:
      op = build_pbc(geometry.z_a(), geometry.z_b(), z_of(geometry.outer_left).value(), z_of(geometry.gap).value());
      break;
  }
  op.geometry = geometry;
  return op;
}

EdgeMatrix assemble_pbc_tensors(double z1, double z2, double z_total) {
  const PbcTensors t = pbc_tensors(z1, z2, z_total);
  const cplx i(0.0, 1.0);
  EdgeMatrix c = EdgeMatrix::Zero();
  for (EdgeIndex a : kEdgeIndices)
    for (EdgeIndex b : kEdgeIndices)
      for (EdgeIndex ap : kEdgeIndices)
        for (EdgeIndex bp : kEdgeIndices) {
          const int ia = a.value(), ib = b.value(), iap = ap.value(), ibp = bp.value();
          cplx value = 0.0;
          if (a == ap && b == bp) value += t.lambda(ia, ib);
          if (a == b && ap == bp) value -= a.metric() * ap.metric() * t.gamma_reflected(ia, iap);
          // g diagonal: lambda = beta', mu = alpha'
          const int eps = levi_civita(b, bp, a, ap);
          if (eps != 0) {
            double inner = t.t_at(ia, ib, iap, ibp);
            if (a == bp && b == ap) inner -= t.gamma(ia, iap);
            value += i * bp.metric() * ap.metric() * static_cast<double>(eps) * inner;
          }
          c(ia * 4 + ib, iap * 4 + ibp) = value;
        }
  return c;
}

// ---------------------------------------------------------------------------
// Transforms

EdgeMatrix partial_transpose_A(const EdgeMatrix& m) {
  EdgeMatrix out;
  for (int mu = 0; mu < 4; ++mu)
    for (int rho = 0; rho < 4; ++rho)
      for (int alpha = 0; alpha < 4; ++alpha)
        for (int beta = 0; beta < 4; ++beta) out(mu * 4 + rho, alpha * 4 + beta) = m(alpha * 4 + rho, mu * 4 + beta);
  return out;
}

EdgeOperator partial_transpose_A(const EdgeOperator& op) {
  EdgeOperator out = op;
  out.coeffs = partial_transpose_A(op.coeffs);
  out.transposed = !op.transposed;
  return out;
}

Eigen::Matrix<double, 16, 1> gram_scaling(double z_a, double z_b) {
  const Weights4 la = lambda_weights(z_a);
  const Weights4 lb = lambda_weights(z_b);
  Eigen::Matrix<double, 16, 1> d;
  for (int mu = 0; mu < 4; ++mu)
    for (int rho = 0; rho < 4; ++rho) d(mu * 4 + rho) = std::sqrt(std::max(0.0, la[mu] * lb[rho]));
  return d;
}

EdgeMatrix orthonormalize(const EdgeOperator& op) {
  if (op.gram_applied) return op.coeffs;
  const auto d = gram_scaling(op.z_a, op.z_b);
  return d.asDiagonal() * op.coeffs * d.asDiagonal();
}

double weighted_trace(const EdgeMatrix& coeffs, double z_a, double z_b) {
  const auto d = gram_scaling(z_a, z_b);
  double trace = 0.0;
  for (int k = 0; k < 16; ++k) trace += d(k) * d(k) * coeffs(k, k).real();
  return trace;
}

}  // namespace aklt
