#include "swanson2d/fockmatrix.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "swanson2d/specfun.hpp"

namespace swanson2d {

TruncatedOperator::TruncatedOperator(int n_max, DenseMatrix entries)
    : n_max_(n_max), entries_(std::move(entries)) {
  const Eigen::Index d = static_cast<Eigen::Index>(n_max + 1) * (n_max + 1);
  if (n_max < 0 || entries_.rows() != d || entries_.cols() != d) {
    throw std::invalid_argument("TruncatedOperator: matrix must be (n_max+1)^2 square");
  }
}

std::vector<Eigen::Index> interior_indices(int n_max, int limit) {
  std::vector<Eigen::Index> idx;
  limit = std::min(limit, n_max);
  for (int n1 = 0; n1 <= limit; ++n1) {
    for (int n2 = 0; n2 <= limit; ++n2) {
      idx.push_back(static_cast<Eigen::Index>(flat_index({n1, n2}, n_max)));
    }
  }
  return idx;
}

DenseMatrix TruncatedOperator::sub_block(int limit) const {
  const auto idx = interior_indices(n_max_, limit);
  return entries_(idx, idx);
}

DenseMatrix mode_lowering(int n_max) {
  DenseMatrix a = DenseMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

DenseMatrix mode_raising(int n_max) {
  DenseMatrix b = DenseMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n < n_max; ++n) b(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
  return b;
}

DenseMatrix kron(const DenseMatrix& x, const DenseMatrix& y) {
  const Eigen::Index m = y.rows();
  const Eigen::Index n = y.cols();
  DenseMatrix out(x.rows() * m, x.cols() * n);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * m, j * n, m, n) = x(i, j) * y;
    }
  }
  return out;
}

DenseMatrix embed_mode(const DenseMatrix& single, int mode) {
  const DenseMatrix id = DenseMatrix::Identity(single.rows(), single.cols());
  if (mode == 1) return kron(single, id);
  if (mode == 2) return kron(id, single);
  throw std::invalid_argument("embed_mode: mode must be 1 or 2");
}

namespace {

// Sparse ladder operators: one nonzero per column.
struct SparseLadders {
  SparseMatrix a1, a2, b1, b2;
};

SparseLadders sparse_ladders(int n_max) {
  const int dim = (n_max + 1) * (n_max + 1);
  using Trip = Eigen::Triplet<cplx>;
  std::vector<Trip> ta1, ta2, tb1, tb2;
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) {
      const auto col = static_cast<int>(flat_index({n1, n2}, n_max));
      if (n1 > 0) ta1.emplace_back(static_cast<int>(flat_index({n1 - 1, n2}, n_max)), col, std::sqrt(double(n1)));
      if (n2 > 0) ta2.emplace_back(static_cast<int>(flat_index({n1, n2 - 1}, n_max)), col, std::sqrt(double(n2)));
      if (n1 < n_max) tb1.emplace_back(static_cast<int>(flat_index({n1 + 1, n2}, n_max)), col, std::sqrt(double(n1 + 1)));
      if (n2 < n_max) tb2.emplace_back(static_cast<int>(flat_index({n1, n2 + 1}, n_max)), col, std::sqrt(double(n2 + 1)));
    }
  }
  SparseLadders s{SparseMatrix(dim, dim), SparseMatrix(dim, dim), SparseMatrix(dim, dim), SparseMatrix(dim, dim)};
  s.a1.setFromTriplets(ta1.begin(), ta1.end());
  s.a2.setFromTriplets(ta2.begin(), ta2.end());
  s.b1.setFromTriplets(tb1.begin(), tb1.end());
  s.b2.setFromTriplets(tb2.begin(), tb2.end());
  return s;
}

double max_abs_on(const SparseMatrix& m, const std::vector<char>& keep) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    if (!keep[k]) continue;
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (keep[it.row()]) worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

}  // namespace

LadderSet ladder_matrices(int n_max) {
  if (n_max < 1) throw std::invalid_argument("ladder_matrices: n_max must be >= 1");
  const auto s = sparse_ladders(n_max);
  return {TruncatedOperator(n_max, DenseMatrix(s.a1)), TruncatedOperator(n_max, DenseMatrix(s.a2)),
          TruncatedOperator(n_max, DenseMatrix(s.b1)), TruncatedOperator(n_max, DenseMatrix(s.b2))};
}

double commutator_defect(int n_max, bool interior_only) {
  if (n_max < 1) throw std::invalid_argument("commutator_defect: n_max must be >= 1");
  const auto s = sparse_ladders(n_max);
  const int dim = (n_max + 1) * (n_max + 1);
  std::vector<char> keep(dim, 1);
  if (interior_only) {
    for (int n1 = 0; n1 <= n_max; ++n1) {
      for (int n2 = 0; n2 <= n_max; ++n2) {
        keep[flat_index({n1, n2}, n_max)] = (n1 <= n_max - 1 && n2 <= n_max - 1) ? 1 : 0;
      }
    }
  }
  SparseMatrix id(dim, dim);
  id.setIdentity();

  const SparseMatrix* as[2] = {&s.a1, &s.a2};
  const SparseMatrix* bs[2] = {&s.b1, &s.b2};
  double worst = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      SparseMatrix ab = SparseMatrix(*as[j] * *bs[k]) - SparseMatrix(*bs[k] * *as[j]);
      if (j == k) ab -= id;
      worst = std::max(worst, max_abs_on(ab, keep));
      SparseMatrix aa = SparseMatrix(*as[j] * *as[k]) - SparseMatrix(*as[k] * *as[j]);
      SparseMatrix bb = SparseMatrix(*bs[j] * *bs[k]) - SparseMatrix(*bs[k] * *bs[j]);
      worst = std::max({worst, max_abs_on(aa, keep), max_abs_on(bb, keep)});
    }
  }
  return worst;
}

TruncatedOperator hamiltonian_matrix(const ModelParams& params, int n_max) {
  if (n_max < 0) throw std::invalid_argument("hamiltonian_matrix: n_max must be >= 0");
  const int dim = (n_max + 1) * (n_max + 1);
  if (n_max == 0) {
    return TruncatedOperator(0, DenseMatrix::Constant(1, 1, params.energy_quantum()));
  }
  const auto s = sparse_ladders(n_max);
  SparseMatrix id(dim, dim);
  id.setIdentity();
  const SparseMatrix h = (SparseMatrix(s.b1 * s.a1) + SparseMatrix(s.b2 * s.a2) + id) * params.energy_quantum();
  return TruncatedOperator(n_max, DenseMatrix(h));
}

TruncatedOperator adjoint_hamiltonian_matrix(const ModelParams& params, int n_max) {
  // On the Psi basis A_j^+ raises and B_j^+ lowers, so (A^+ B^+) has the same
  // matrix as (B A) on the phi basis; the prefactor is conjugated.
  if (n_max == 0) {
    return TruncatedOperator(0, DenseMatrix::Constant(1, 1, 1.0 / std::cos(2.0 * std::conj(params.nu()))));
  }
  const int dim = (n_max + 1) * (n_max + 1);
  const auto s = sparse_ladders(n_max);
  // Matrices of A^+ and B^+ on the Psi basis.
  const SparseMatrix a1d = s.b1, a2d = s.b2, b1d = s.a1, b2d = s.a2;
  SparseMatrix id(dim, dim);
  id.setIdentity();
  const cplx pref = 1.0 / std::cos(2.0 * std::conj(params.nu()));
  const SparseMatrix h = (SparseMatrix(a1d * b1d) + SparseMatrix(a2d * b2d) + id) * pref;
  return TruncatedOperator(n_max, DenseMatrix(h));
}

DenseMatrix expm(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  if (a.isZero(0.0)) return DenseMatrix::Identity(a.rows(), a.cols());
  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;
  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const DenseMatrix as = a / std::ldexp(1.0, s);
  const DenseMatrix id = DenseMatrix::Identity(n, n);
  const DenseMatrix a2 = as * as;
  const DenseMatrix a4 = a2 * a2;
  const DenseMatrix a6 = a4 * a2;
  const DenseMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  const DenseMatrix u = as * u_inner;
  const DenseMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  DenseMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

namespace {

// Single-mode factors of the displacement operators.
DenseMatrix mode_displacement(cplx z, int n_max) {
  return expm(z * mode_raising(n_max) - std::conj(z) * mode_lowering(n_max));
}

DenseMatrix mode_displacement_adj(cplx z, int n_max) {
  const DenseMatrix ad = mode_lowering(n_max).adjoint();
  const DenseMatrix bd = mode_raising(n_max).adjoint();
  return expm(z * ad - std::conj(z) * bd);
}

}  // namespace

Displacement displacement_matrix(cplx z, cplx w, int n_max) {
  if (n_max < 1) throw std::invalid_argument("displacement_matrix: n_max must be >= 1");
  Displacement d{TruncatedOperator(n_max, kron(mode_displacement(z, n_max), mode_displacement(w, n_max))),
                 TruncatedOperator(n_max, kron(mode_displacement_adj(z, n_max), mode_displacement_adj(w, n_max))),
                 false};
  d.truncation_warning = std::norm(z) + std::norm(w) > n_max / 4.0;
  return d;
}

double bch_defect(cplx z, cplx w, int n_max) {
  if (n_max < 1) throw std::invalid_argument("bch_defect: n_max must be >= 1");
  const Displacement ref = displacement_matrix(z, w, n_max);
  const DenseMatrix a = mode_lowering(n_max);
  const DenseMatrix b = mode_raising(n_max);
  const DenseMatrix ad = a.adjoint();
  const DenseMatrix bd = b.adjoint();
  const double r = std::norm(z) + std::norm(w);

  // e^{-r/2} e^{zB1} e^{-z*A1} e^{wB2} e^{-w*A2} and
  // e^{+r/2} e^{-z*A1} e^{zB1} e^{-w*A2} e^{wB2}; the mode-1 and mode-2
  // factors commute, so each ordering is a Kronecker product.
  const DenseMatrix u_normal = std::exp(-r / 2.0) * kron(expm(z * b) * expm(-std::conj(z) * a),
                                                         expm(w * b) * expm(-std::conj(w) * a));
  const DenseMatrix u_anti = std::exp(r / 2.0) * kron(expm(-std::conj(z) * a) * expm(z * b),
                                                      expm(-std::conj(w) * a) * expm(w * b));
  const DenseMatrix v_normal = std::exp(-r / 2.0) * kron(expm(z * ad) * expm(-std::conj(z) * bd),
                                                         expm(w * ad) * expm(-std::conj(w) * bd));
  const DenseMatrix v_anti = std::exp(r / 2.0) * kron(expm(-std::conj(z) * bd) * expm(z * ad),
                                                      expm(-std::conj(w) * bd) * expm(w * ad));

  const auto idx = interior_indices(n_max, n_max / 2);
  const DenseMatrix u0 = ref.u.matrix()(idx, idx);
  const DenseMatrix v0 = ref.v.matrix()(idx, idx);
  double worst = 0.0;
  worst = std::max(worst, (u0 - u_normal(idx, idx)).cwiseAbs().maxCoeff());
  worst = std::max(worst, (u0 - u_anti(idx, idx)).cwiseAbs().maxCoeff());
  worst = std::max(worst, (v0 - v_normal(idx, idx)).cwiseAbs().maxCoeff());
  worst = std::max(worst, (v0 - v_anti(idx, idx)).cwiseAbs().maxCoeff());
  return worst;
}

double interior_identity_defect(const TruncatedOperator& x, const TruncatedOperator& y, int limit) {
  if (x.n_max() != y.n_max()) throw std::invalid_argument("interior_identity_defect: size mismatch");
  const auto idx = interior_indices(x.n_max(), limit);
  const DenseMatrix prod = x.matrix()(idx, Eigen::all) * y.matrix()(Eigen::all, idx);
  return (prod - DenseMatrix::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd coherent_coefficients(cplx z, cplx w, int n_max) {
  Eigen::VectorXcd c((n_max + 1) * (n_max + 1));
  const double pref = std::exp(-(std::norm(z) + std::norm(w)) / 2.0);
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) {
      const double norm = std::exp(-0.5 * (log_factorial(n1) + log_factorial(n2)));
      c[static_cast<Eigen::Index>(flat_index({n1, n2}, n_max))] =
          pref * ipow(z, n1) * ipow(w, n2) * norm;
    }
  }
  return c;
}

void write_csv(std::ostream& os, const TruncatedOperator& op) {
  const DenseMatrix& m = op.matrix();
  char buf[64];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(i, j).real(), m(i, j).imag());
      if (j) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace swanson2d
