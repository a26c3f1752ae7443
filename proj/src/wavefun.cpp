#include "swanson2d/wavefun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "swanson2d/specfun.hpp"

namespace swanson2d {

namespace {

constexpr cplx kI{0.0, 1.0};
const double kInvSqrtPi = 1.0 / std::sqrt(kPi);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

CoeffTable single(MultiIndex idx) {
  if (idx.n1 < 0 || idx.n2 < 0) throw std::invalid_argument("MultiIndex entries must be >= 0");
  CoeffTable c = CoeffTable::Zero(idx.n1 + 1, idx.n2 + 1);
  c(idx.n1, idx.n2) = 1.0;
  return c;
}

}  // namespace

WaveField::WaveField(Kind kind, cplx scale, CoeffTable coeffs)
    : kind_(kind), scale_(scale), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() < 1 || coeffs_.cols() < 1) {
    throw std::invalid_argument("WaveField: coefficient table must be non-empty");
  }
  if (!coeffs_.allFinite()) throw std::invalid_argument("WaveField: coefficients must be finite");
  if (scale_ == cplx{0.0, 0.0}) throw std::invalid_argument("WaveField: scale must be nonzero");
}

WaveField WaveField::phi(const ModelParams& params, MultiIndex idx) {
  // N1 = pi^{-1/2} is already carried by the basis functions.
  return {Kind::phi, params.phi_scale(), single(idx)};
}

WaveField WaveField::psi(const ModelParams& params, MultiIndex idx) {
  return {Kind::psi, params.psi_scale(), single(idx) * (params.n2() * std::sqrt(kPi))};
}

WaveField WaveField::oscillator(MultiIndex idx) { return {Kind::oscillator, cplx{1.0, 0.0}, single(idx)}; }

WaveField WaveField::oscillator_span(CoeffTable coeffs) {
  return {Kind::oscillator, cplx{1.0, 0.0}, std::move(coeffs)};
}

Eigen::MatrixXcd mode_table(cplx scale, int n_max, const std::vector<double>& xs) {
  Eigen::MatrixXcd t(static_cast<Eigen::Index>(xs.size()), n_max + 1);
  std::vector<cplx> h(n_max + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const cplx sx = scale * xs[i];
    hermite_normalized(n_max, sx, h);
    const cplx g = std::exp(-0.5 * sx * sx);
    for (int n = 0; n <= n_max; ++n) t(static_cast<Eigen::Index>(i), n) = h[n] * g;
  }
  return t;
}

cplx WaveField::operator()(cplx x1, cplx x2) const {
  std::vector<cplx> h1(coeffs_.rows()), h2(coeffs_.cols());
  const cplx s1 = scale_ * x1, s2 = scale_ * x2;
  hermite_normalized(max_n1(), s1, h1);
  hermite_normalized(max_n2(), s2, h2);
  cplx acc = 0.0;
  for (Eigen::Index a = 0; a < coeffs_.rows(); ++a) {
    cplx row = 0.0;
    for (Eigen::Index b = 0; b < coeffs_.cols(); ++b) row += coeffs_(a, b) * h2[b];
    acc += row * h1[a];
  }
  return kInvSqrtPi * acc * std::exp(-0.5 * (s1 * s1 + s2 * s2));
}

Eigen::MatrixXcd WaveField::on_grid(const std::vector<double>& xs1, const std::vector<double>& xs2) const {
  const Eigen::MatrixXcd t1 = mode_table(scale_, max_n1(), xs1);
  const Eigen::MatrixXcd t2 = mode_table(scale_, max_n2(), xs2);
  return kInvSqrtPi * (t1 * coeffs_ * t2.transpose());
}

WaveField WaveField::scaled(cplx factor) const {
  return {kind_ == Kind::oscillator ? Kind::oscillator : Kind::superposition, scale_, coeffs_ * factor};
}

WaveField WaveField::plus(const WaveField& other, cplx factor) const {
  if (std::abs(other.scale_ - scale_) > 1e-15 * std::abs(scale_)) {
    throw std::invalid_argument("WaveField::plus: fields belong to different families");
  }
  const Eigen::Index r = std::max(coeffs_.rows(), other.coeffs_.rows());
  const Eigen::Index c = std::max(coeffs_.cols(), other.coeffs_.cols());
  CoeffTable out = CoeffTable::Zero(r, c);
  out.topLeftCorner(coeffs_.rows(), coeffs_.cols()) = coeffs_;
  out.topLeftCorner(other.coeffs_.rows(), other.coeffs_.cols()) += factor * other.coeffs_;
  const Kind k = (kind_ == Kind::oscillator && other.kind_ == Kind::oscillator) ? Kind::oscillator
                                                                                 : Kind::superposition;
  return {k, scale_, std::move(out)};
}

cplx eval_phi(const ModelParams& params, MultiIndex idx, cplx x1, cplx x2) {
  return WaveField::phi(params, idx)(x1, x2);
}

cplx eval_psi(const ModelParams& params, MultiIndex idx, cplx x1, cplx x2) {
  return WaveField::psi(params, idx)(x1, x2);
}

std::string to_string(Ladder which) {
  switch (which) {
    case Ladder::A1: return "A1";
    case Ladder::A2: return "A2";
    case Ladder::B1: return "B1";
    case Ladder::B2: return "B2";
    case Ladder::A1dag: return "A1dag";
    case Ladder::A2dag: return "A2dag";
    case Ladder::B1dag: return "B1dag";
    case Ladder::B2dag: return "B2dag";
    case Ladder::a1: return "a1";
    case Ladder::a2: return "a2";
    case Ladder::a1dag: return "a1dag";
    case Ladder::a2dag: return "a2dag";
  }
  return "?";
}

int ladder_mode(Ladder which) {
  switch (which) {
    case Ladder::A1:
    case Ladder::B1:
    case Ladder::A1dag:
    case Ladder::B1dag:
    case Ladder::a1:
    case Ladder::a1dag: return 1;
    default: return 2;
  }
}

LinearOp ladder_op(Ladder which, const ModelParams& params) {
  const cplx e = std::exp(kI * params.nu());                  // e^{i nu}
  const cplx ed = std::exp(-kI * std::conj(params.nu()));     // e^{-i nu*}
  const int mode = ladder_mode(which);
  switch (which) {
    case Ladder::A1:
    case Ladder::A2: return {mode, e * kInvSqrt2, kInvSqrt2 / e};
    case Ladder::B1:
    case Ladder::B2: return {mode, e * kInvSqrt2, -kInvSqrt2 / e};
    case Ladder::A1dag:
    case Ladder::A2dag: return {mode, ed * kInvSqrt2, -kInvSqrt2 / ed};
    case Ladder::B1dag:
    case Ladder::B2dag: return {mode, ed * kInvSqrt2, kInvSqrt2 / ed};
    case Ladder::a1:
    case Ladder::a2: return {mode, kInvSqrt2, kInvSqrt2};
    case Ladder::a1dag:
    case Ladder::a2dag: return {mode, kInvSqrt2, -kInvSqrt2};
  }
  throw std::invalid_argument("ladder_op: unknown operator");
}

WaveField apply_linear(const LinearOp& op, const WaveField& field) {
  if (op.mode != 1 && op.mode != 2) throw std::invalid_argument("apply_linear: mode must be 1 or 2");
  // x b_n = (1/s) [sqrt((n+1)/2) b_{n+1} + sqrt(n/2) b_{n-1}]
  // d b_n = s [sqrt(n/2) b_{n-1} - sqrt((n+1)/2) b_{n+1}]
  const cplx s = field.scale();
  const cplx u = op.x_coeff / s;
  const cplx v = op.d_coeff * s;
  cplx up = u - v;
  cplx down = u + v;
  // Exact cancellations (e.g. A_j on the phi family) are snapped to zero.
  const double snap = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(u) + std::abs(v));
  if (std::abs(up) <= snap) up = 0.0;
  if (std::abs(down) <= snap) down = 0.0;

  CoeffTable c = field.coeffs();
  if (op.mode == 2) c.transposeInPlace();
  const Eigen::Index n_rows = c.rows();
  CoeffTable out = CoeffTable::Zero(n_rows + 1, c.cols());
  for (Eigen::Index n = 0; n < n_rows; ++n) {
    const double dn = static_cast<double>(n);
    if (up != cplx{0.0, 0.0}) out.row(n + 1) += std::sqrt((dn + 1.0) / 2.0) * up * c.row(n);
    if (n > 0 && down != cplx{0.0, 0.0}) out.row(n - 1) += std::sqrt(dn / 2.0) * down * c.row(n);
  }
  // Drop an all-zero top row so exact ladder steps keep tables compact.
  Eigen::Index keep = out.rows();
  while (keep > 1 && out.row(keep - 1).cwiseAbs().maxCoeff() == 0.0) --keep;
  CoeffTable trimmed = out.topRows(keep);
  if (op.mode == 2) trimmed.transposeInPlace();
  const auto kind = field.kind() == WaveField::Kind::oscillator ? WaveField::Kind::oscillator
                                                               : WaveField::Kind::superposition;
  return {kind, s, std::move(trimmed)};
}

WaveField apply_ladder_analytic(Ladder which, const ModelParams& params, const WaveField& field) {
  return apply_linear(ladder_op(which, params), field);
}

WaveField apply_hamiltonian_analytic(const ModelParams& params, const WaveField& field) {
  const WaveField ba1 = apply_ladder_analytic(Ladder::B1, params, apply_ladder_analytic(Ladder::A1, params, field));
  const WaveField ba2 = apply_ladder_analytic(Ladder::B2, params, apply_ladder_analytic(Ladder::A2, params, field));
  return ba1.plus(ba2).plus(field).scaled(params.energy_quantum());
}

void GridSpec::validate() const {
  if (!(half_width > 0.0) || !(spacing > 0.0)) {
    throw std::invalid_argument("GridSpec: half_width and spacing must be positive");
  }
  const double ratio = half_width / spacing;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("GridSpec: half_width / spacing must be an integer");
  }
  if (stencil_order != 2 && stencil_order != 4) {
    throw std::invalid_argument("GridSpec: stencil_order must be 2 or 4");
  }
  if (!(decay_tolerance > 0.0)) throw std::invalid_argument("GridSpec: decay_tolerance must be positive");
}

int GridSpec::points_per_side() const { return static_cast<int>(std::lround(half_width / spacing)); }

std::vector<double> GridSpec::axis() const {
  const int m = points_per_side();
  std::vector<double> xs(2 * m + 1);
  for (int i = -m; i <= m; ++i) xs[i + m] = i * spacing;
  return xs;
}

GridField sample(const WaveField& field, const GridSpec& grid) {
  grid.validate();
  auto xs = grid.axis();
  return {grid, xs, field.on_grid(xs, xs)};
}

namespace {

struct Derivatives {
  Eigen::MatrixXcd f, d1, d2, d11, d22;
};

// Samples the field on the grid padded with closed-form ghost points and
// applies central stencils along each axis.
Derivatives fd_derivatives(const WaveField& field, const GridSpec& grid) {
  grid.validate();
  const int m = grid.points_per_side();
  const int pad = grid.stencil_order / 2;
  const double h = grid.spacing;
  std::vector<double> ext(2 * (m + pad) + 1);
  for (int i = -(m + pad); i <= m + pad; ++i) ext[i + m + pad] = i * h;
  const Eigen::MatrixXcd e = field.on_grid(ext, ext);
  const Eigen::Index n = 2 * m + 1;

  Derivatives d;
  d.f = e.block(pad, pad, n, n);
  if (grid.stencil_order == 2) {
    d.d1 = (e.block(pad + 1, pad, n, n) - e.block(pad - 1, pad, n, n)) / (2.0 * h);
    d.d2 = (e.block(pad, pad + 1, n, n) - e.block(pad, pad - 1, n, n)) / (2.0 * h);
    d.d11 = (e.block(pad + 1, pad, n, n) - 2.0 * d.f + e.block(pad - 1, pad, n, n)) / (h * h);
    d.d22 = (e.block(pad, pad + 1, n, n) - 2.0 * d.f + e.block(pad, pad - 1, n, n)) / (h * h);
  } else {
    d.d1 = (-e.block(pad + 2, pad, n, n) + 8.0 * e.block(pad + 1, pad, n, n) -
            8.0 * e.block(pad - 1, pad, n, n) + e.block(pad - 2, pad, n, n)) /
           (12.0 * h);
    d.d2 = (-e.block(pad, pad + 2, n, n) + 8.0 * e.block(pad, pad + 1, n, n) -
            8.0 * e.block(pad, pad - 1, n, n) + e.block(pad, pad - 2, n, n)) /
           (12.0 * h);
    d.d11 = (-e.block(pad + 2, pad, n, n) + 16.0 * e.block(pad + 1, pad, n, n) - 30.0 * d.f +
             16.0 * e.block(pad - 1, pad, n, n) - e.block(pad - 2, pad, n, n)) /
            (12.0 * h * h);
    d.d22 = (-e.block(pad, pad + 2, n, n) + 16.0 * e.block(pad, pad + 1, n, n) - 30.0 * d.f +
             16.0 * e.block(pad, pad - 1, n, n) - e.block(pad, pad - 2, n, n)) /
            (12.0 * h * h);
  }
  return d;
}

void check_decay(const Eigen::MatrixXcd& f, const GridSpec& grid) {
  const Eigen::Index n = f.rows();
  const double peak = f.cwiseAbs().maxCoeff();
  double edge = 0.0;
  edge = std::max(edge, f.row(0).cwiseAbs().maxCoeff());
  edge = std::max(edge, f.row(n - 1).cwiseAbs().maxCoeff());
  edge = std::max(edge, f.col(0).cwiseAbs().maxCoeff());
  edge = std::max(edge, f.col(n - 1).cwiseAbs().maxCoeff());
  if (peak == 0.0) return;
  if (edge > grid.decay_tolerance * peak) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "field has not decayed at the grid boundary (edge/peak = %.3g > %.3g); "
                  "increase the grid half-width L (currently %g)",
                  edge / peak, grid.decay_tolerance, grid.half_width);
    throw DomainError(buf);
  }
}

}  // namespace

GridField apply_hamiltonian_fd(const ModelParams& params, const WaveField& field, const GridSpec& grid,
                               MixedTerm form) {
  const Derivatives d = fd_derivatives(field, grid);
  check_decay(d.f, grid);
  const auto xs = grid.axis();
  const Eigen::Index n = d.f.rows();
  const double theta = params.theta();
  const cplx e2 = std::exp(2.0 * kI * params.nu());
  const cplx em2 = 1.0 / e2;

  // Canonical pieces on the grid: P = p1^2 + p2^2, X = x1^2 + x2^2 and the
  // angular term L = x1 p2 - x2 p1.
  Eigen::MatrixXcd p_sq = -(d.d11 + d.d22);
  Eigen::MatrixXcd x_sq(n, n), ang(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double x1 = xs[i], x2 = xs[j];
      x_sq(i, j) = (x1 * x1 + x2 * x2) * d.f(i, j);
      ang(i, j) = -kI * (x1 * d.d2(i, j) - x2 * d.d1(i, j));
    }
  }
  // Bopp shift: x1^2 + x2^2 (hatted) = X - theta L + theta^2/4 P and
  // x1^ p2 - x2^ p1 = L - theta/2 P.
  const Eigen::MatrixXcd xhat_sq = x_sq - theta * ang + (theta * theta / 4.0) * p_sq;
  const Eigen::MatrixXcd mixed = ang - (theta / 2.0) * p_sq;
  const cplx kappa = form == MixedTerm::consistent ? theta * e2 : cplx{2.0 * theta, 0.0};
  const cplx p_coeff = em2 + (theta * theta / 4.0) * e2;
  const cplx pref = 1.0 / (2.0 * std::cos(2.0 * params.nu()));

  GridField out{grid, xs, pref * (p_coeff * p_sq + e2 * xhat_sq + kappa * mixed)};
  return out;
}

GridField apply_ladder_fd(Ladder which, const ModelParams& params, const WaveField& field, const GridSpec& grid) {
  const Derivatives d = fd_derivatives(field, grid);
  const LinearOp op = ladder_op(which, params);
  const auto xs = grid.axis();
  const Eigen::Index n = d.f.rows();
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double x = op.mode == 1 ? xs[i] : xs[j];
      const cplx deriv = op.mode == 1 ? d.d1(i, j) : d.d2(i, j);
      out(i, j) = op.x_coeff * x * d.f(i, j) + op.d_coeff * deriv;
    }
  }
  return {grid, xs, std::move(out)};
}

cplx grid_inner(const GridField& f, const GridField& g) {
  if (f.values.rows() != g.values.rows() || f.values.cols() != g.values.cols()) {
    throw std::invalid_argument("grid_inner: grids differ");
  }
  const double h = f.grid.spacing;
  return h * h * (f.values.conjugate().cwiseProduct(g.values)).sum();
}

double grid_norm(const GridField& f) { return f.grid.spacing * f.values.norm(); }

double grid_distance(const GridField& f, const GridField& g, cplx factor) {
  if (f.values.rows() != g.values.rows() || f.values.cols() != g.values.cols()) {
    throw std::invalid_argument("grid_distance: grids differ");
  }
  return f.grid.spacing * (f.values - factor * g.values).norm();
}

double eigen_residual_fd(const ModelParams& params, MultiIndex idx, const GridSpec& grid, MixedTerm form) {
  const WaveField phi = WaveField::phi(params, idx);
  const GridField image = apply_hamiltonian_fd(params, phi, grid, form);
  const GridField base = sample(phi, grid);
  const cplx energy = static_cast<double>(idx.n1 + idx.n2 + 1) * params.energy_quantum();
  return grid_distance(image, base, energy) / grid_norm(base);
}

void write_csv(std::ostream& os, const GridField& field) {
  os << "x1,x2,re,im\n";
  char buf[128];
  for (std::size_t i = 0; i < field.axis.size(); ++i) {
    for (std::size_t j = 0; j < field.axis.size(); ++j) {
      const cplx v = field.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", field.axis[i], field.axis[j], v.real(), v.imag());
      os << buf;
    }
  }
}

}  // namespace swanson2d
