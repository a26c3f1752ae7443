#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swanson2d/params.hpp"

namespace swanson2d {

/// Coefficient table over MultiIndex: rows n1, columns n2.
using CoeffTable = Eigen::MatrixXcd;

/// A finite superposition of Hermite-Gaussian functions sharing one complex
/// argument scale s:
///
///   f(x1, x2) = sum_{n1,n2} c_{n1,n2} b^s_{n1,n2}(x1, x2),
///   b^s_{n1,n2}(x) = pi^{-1/2} h_{n1}(s x1) h_{n2}(s x2) exp(-s^2 (x1^2 + x2^2) / 2),
///
/// with h_n = H_n / sqrt(2^n n!). The phi family is s = e^{i nu}, the Psi
/// family s = e^{-i conj(nu)}, the oscillator basis s = 1. Entire in (x1, x2),
/// so evaluation at complex points is allowed.
class WaveField {
 public:
  enum class Kind { phi, psi, oscillator, superposition };

  WaveField(Kind kind, cplx scale, CoeffTable coeffs);

  static WaveField phi(const ModelParams& params, MultiIndex idx);
  static WaveField psi(const ModelParams& params, MultiIndex idx);
  static WaveField oscillator(MultiIndex idx);
  /// Oscillator-span element sum_n coeffs(n1, n2) e_{n1,n2}.
  static WaveField oscillator_span(CoeffTable coeffs);

  Kind kind() const noexcept { return kind_; }
  cplx scale() const noexcept { return scale_; }
  const CoeffTable& coeffs() const noexcept { return coeffs_; }
  int max_n1() const noexcept { return static_cast<int>(coeffs_.rows()) - 1; }
  int max_n2() const noexcept { return static_cast<int>(coeffs_.cols()) - 1; }
  int max_index() const noexcept { return std::max(max_n1(), max_n2()); }
  bool is_zero() const { return coeffs_.cwiseAbs().maxCoeff() == 0.0; }

  cplx operator()(cplx x1, cplx x2) const;

  /// Values on the tensor grid xs1 x xs2 (rows follow xs1).
  Eigen::MatrixXcd on_grid(const std::vector<double>& xs1, const std::vector<double>& xs2) const;

  WaveField scaled(cplx factor) const;
  /// Sum of two fields of the same family.
  WaveField plus(const WaveField& other, cplx factor = 1.0) const;

 private:
  Kind kind_;
  cplx scale_;
  CoeffTable coeffs_;
};

/// phi_{n1,n2}(x1, x2) with N1 = pi^{-1/2}.
cplx eval_phi(const ModelParams& params, MultiIndex idx, cplx x1, cplx x2);

/// Psi_{n1,n2}(x1, x2): phi with nu -> -conj(nu) and N1 -> N2.
cplx eval_psi(const ModelParams& params, MultiIndex idx, cplx x1, cplx x2);

/// Per-axis table of h_n(s x) exp(-s^2 x^2 / 2), rows over points, columns n.
Eigen::MatrixXcd mode_table(cplx scale, int n_max, const std::vector<double>& xs);

/// First-order differential operator x_coeff * x_j + d_coeff * d/dx_j on one mode.
struct LinearOp {
  int mode;
  cplx x_coeff;
  cplx d_coeff;
};

enum class Ladder { A1, A2, B1, B2, A1dag, A2dag, B1dag, B2dag, a1, a2, a1dag, a2dag };

std::string to_string(Ladder which);
int ladder_mode(Ladder which);

/// Differential form of the ladder operators in the Bopp-shifted variables:
///   A_j = (e^{i nu} x_j + e^{-i nu} d_j) / sqrt 2,   B_j = (e^{i nu} x_j - e^{-i nu} d_j) / sqrt 2,
///   A_j^+ = (e^{-i nu*} x_j - e^{i nu*} d_j) / sqrt 2, B_j^+ = (e^{-i nu*} x_j + e^{i nu*} d_j) / sqrt 2,
/// and the oscillator a_j = (x_j + d_j) / sqrt 2, a_j^+ = (x_j - d_j) / sqrt 2.
LinearOp ladder_op(Ladder which, const ModelParams& params);

/// Applies a first-order operator in closed form using x b_n and d b_n
/// three-term relations; the result stays in the same family.
WaveField apply_linear(const LinearOp& op, const WaveField& field);

WaveField apply_ladder_analytic(Ladder which, const ModelParams& params, const WaveField& field);

/// (B1 A1 + B2 A2 + 1) / cos(2 nu) applied in closed form.
WaveField apply_hamiltonian_analytic(const ModelParams& params, const WaveField& field);

/// Uniform grid on [-L, L]^2 with spacing h and central stencils of order 2 or 4.
struct GridSpec {
  double half_width = 8.0;
  double spacing = 0.05;
  int stencil_order = 4;
  /// Largest allowed ratio of the boundary magnitude to the grid peak.
  double decay_tolerance = 1e-4;

  /// Throws std::invalid_argument unless L/h is an integer and the order is 2 or 4.
  void validate() const;
  int points_per_side() const;  // L / h
  std::vector<double> axis() const;
};

/// Values of a field on a GridSpec.
struct GridField {
  GridSpec grid;
  std::vector<double> axis;
  Eigen::MatrixXcd values;  // rows x1, cols x2
};

GridField sample(const WaveField& field, const GridSpec& grid);

/// How the angular-momentum-like term of the Hamiltonian is weighted.
///   consistent: theta e^{2 i nu} (x1^ p2^ - x2^ p1^), which makes the
///               Hamiltonian equal to (B1 A1 + B2 A2 + 1) / cos(2 nu);
///   literal:    2 theta (x1^ p2^ - x2^ p1^).
enum class MixedTerm { consistent, literal };

/// Applies the noncommutative Hamiltonian
///   H = [ (e^{-2i nu} + theta^2/4 e^{2i nu}) (p1^2 + p2^2) + e^{2i nu} (x1^2 + x2^2)^
///         + kappa (x1^ p2 - x2^ p1) ] / (2 cos 2 nu)
/// with the Bopp shift x1^ = x1 - (theta/2) p2, x2^ = x2 + (theta/2) p1,
/// p_j = -i d_j, by central finite differences. Ghost values outside the grid
/// come from the closed form. Throws DomainError when the field has not
/// decayed at the boundary.
GridField apply_hamiltonian_fd(const ModelParams& params, const WaveField& field, const GridSpec& grid,
                               MixedTerm form = MixedTerm::consistent);

/// Finite-difference application of a ladder operator.
GridField apply_ladder_fd(Ladder which, const ModelParams& params, const WaveField& field, const GridSpec& grid);

/// h^2 sum conj(f) g.
cplx grid_inner(const GridField& f, const GridField& g);
double grid_norm(const GridField& f);
/// ||f - factor g||_grid.
double grid_distance(const GridField& f, const GridField& g, cplx factor = 1.0);

/// ||H_fd phi - E phi|| / ||phi|| with E = (n1 + n2 + 1) / cos 2 nu.
double eigen_residual_fd(const ModelParams& params, MultiIndex idx, const GridSpec& grid,
                         MixedTerm form = MixedTerm::consistent);

/// CSV rows "x1,x2,re,im".
void write_csv(std::ostream& os, const GridField& field);

}  // namespace swanson2d
