#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <iosfwd>

#include "swanson2d/params.hpp"

namespace swanson2d {

using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

/// Dense matrix over the tensor basis {(n1, n2) : 0 <= n_j <= n_max}, indexed
/// row-major in (n1, n2) with n2 fastest.
class TruncatedOperator {
 public:
  TruncatedOperator(int n_max, DenseMatrix entries);

  int n_max() const noexcept { return n_max_; }
  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const DenseMatrix& matrix() const noexcept { return entries_; }

  cplx entry(MultiIndex row, MultiIndex col) const {
    return entries_(flat_index(row, n_max_), flat_index(col, n_max_));
  }

  /// Image of the basis vector |idx>.
  Eigen::VectorXcd apply_to_basis(MultiIndex idx) const {
    return entries_.col(static_cast<Eigen::Index>(flat_index(idx, n_max_)));
  }

  /// Rows and columns with n1, n2 <= limit, in basis order.
  DenseMatrix sub_block(int limit) const;

  TruncatedOperator adjoint() const { return {n_max_, entries_.adjoint()}; }

 private:
  int n_max_;
  DenseMatrix entries_;
};

/// Positions of the basis vectors with n1, n2 <= limit.
std::vector<Eigen::Index> interior_indices(int n_max, int limit);

/// Single-mode lowering matrix a with a|n> = sqrt(n)|n-1>, size n_max+1.
DenseMatrix mode_lowering(int n_max);
/// Single-mode raising matrix b with b|n> = sqrt(n+1)|n+1>, zero at the top level.
DenseMatrix mode_raising(int n_max);

/// X (x) Y with the first factor on mode 1 (slow index).
DenseMatrix kron(const DenseMatrix& x, const DenseMatrix& y);

/// Embeds a single-mode matrix into the two-mode space on mode 1 or 2.
DenseMatrix embed_mode(const DenseMatrix& single, int mode);

struct LadderSet {
  TruncatedOperator a1, a2, b1, b2;
};

/// Matrix realizations of A_j, B_j acting on the phi basis.
LadderSet ladder_matrices(int n_max);

/// Max-norm of [A_j, B_k] - delta_jk 1, [A_j, A_k] and [B_j, B_k]. With
/// interior_only the check is restricted to n1, n2 <= n_max - 1; otherwise the
/// truncation edge is included and the defect equals n_max + 1.
double commutator_defect(int n_max, bool interior_only = true);

/// (B1 A1 + B2 A2 + 1) / cos(2 nu), which is diagonal in the phi basis.
TruncatedOperator hamiltonian_matrix(const ModelParams& params, int n_max);

/// Matrix of H^dagger on the Psi basis, (A1^+ B1^+ + A2^+ B2^+ + 1) / cos(2 conj(nu)).
TruncatedOperator adjoint_hamiltonian_matrix(const ModelParams& params, int n_max);

/// Dense exponential by scaling and squaring with the degree-13 Pade
/// approximant.
DenseMatrix expm(const DenseMatrix& a);

struct Displacement {
  TruncatedOperator u;
  TruncatedOperator v;
  /// Set when |z|^2 + |w|^2 > n_max / 4: truncation error may dominate.
  bool truncation_warning = false;
};

/// U(z,w) = exp(z B1 - conj(z) A1) exp(w B2 - conj(w) A2) and
/// V(z,w) = exp(z A1^+ - conj(z) B1^+) exp(w A2^+ - conj(w) B2^+).
/// Each exponential acts on one mode, so it is computed on that mode and
/// the product is assembled as a Kronecker product.
Displacement displacement_matrix(cplx z, cplx w, int n_max);

/// Max difference on the n1, n2 <= n_max/2 block between U (V) from
/// displacement_matrix and the two normal/antinormal-ordered factorizations.
double bch_defect(cplx z, cplx w, int n_max);

/// Max |(X Y - 1)_{ij}| over the interior block n1, n2 <= limit.
double interior_identity_defect(const TruncatedOperator& x, const TruncatedOperator& y, int limit);

/// Coefficients of exp(-(|z|^2+|w|^2)/2) z^n1 w^n2 / sqrt(n1! n2!) in basis order.
Eigen::VectorXcd coherent_coefficients(cplx z, cplx w, int n_max);

/// Row-major CSV, each entry written as "re,im" with 17 significant digits.
void write_csv(std::ostream& os, const TruncatedOperator& op);

}  // namespace swanson2d
