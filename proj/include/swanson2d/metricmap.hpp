#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "swanson2d/innerprod.hpp"
#include "swanson2d/wavefun.hpp"

namespace swanson2d {

enum class Direction { forward, inverse };

/// T_nu^{power} (forward) or T_nu^{-power} (inverse), where
///   (T_mu f)(x1, x2) = e^{i mu} f(e^{i mu} x1, e^{i mu} x2).
/// Each one-dimensional factor contributes e^{i mu / 2}.
struct DilationMap {
  cplx nu = 0.0;
  Direction direction = Direction::forward;
  int power = 1;

  /// Net dilation angle mu.
  cplx angle() const { return (direction == Direction::forward ? 1.0 : -1.0) * static_cast<double>(power) * nu; }
};

/// The formal adjoint: T_mu^+ = T_{conj(mu)}.
DilationMap adjoint(const DilationMap& map);

/// Exact on closed-form fields: scale s -> s e^{i mu}, coefficients times e^{i mu}.
WaveField dilation_apply(const DilationMap& map, const WaveField& field);

/// Gridded samples cannot be continued off the real plane: always throws
/// UnsupportedError.
GridField dilation_apply(const DilationMap& map, const GridField& field);

/// Theta = (1 / (pi |N1|^2)) T_nu^{-1+} T_nu^{-1} = (1 / (pi |N1|^2)) T_{-(nu + conj nu)},
/// which is T_nu^{-2} up to the constant for real nu.
WaveField metric_apply(const ModelParams& params, const WaveField& field);

/// Fixed pseudo-random sample points in [-2.5, 2.5]^2. The generator is
/// mt19937_64 with a hand-written map to doubles, so the set is identical on
/// every platform. Bump kProbeSetVersion whenever the recipe changes.
inline constexpr int kProbeSetVersion = 1;
std::vector<std::array<double, 2>> probe_points(int count = 25, std::uint64_t seed = 20240601);

struct MetricReport {
  /// (Theta phi_n)(x) / Psi_n(x) at the first probe point for n = (0, 0).
  cplx constant = 0.0;
  /// max |ratio - constant| / |constant| over indices and probe points.
  double spread = 0.0;
};

/// Compares Theta phi_n with Psi_n pointwise for n1, n2 <= n_max.
MetricReport metric_constant(const ModelParams& params, int n_max, int probe_count = 25);

/// h = T_nu^{-1} H T_nu = (a1^+ a1 + a2^+ a2 + 1) / cos 2nu checked on e_n,
/// n1, n2 <= n_max: max over probe points of |T^{-1} H T e_n - E_n e_n|,
/// divided by the largest |E_n e_n| on the probe set. Real nu only.
double similarity_check(const ModelParams& params, int n_max, int probe_count = 25);

/// Max difference between the sorted diagonals of hamiltonian_matrix and of h.
double spectrum_defect(const ModelParams& params, int n_max);

/// T_nu a_j T_nu^{-1} = A_j and T_nu a_j^+ T_nu^{-1} = B_j on phi_n, n1, n2 <= n_max,
/// compared pointwise; relative as in similarity_check.
double intertwining_defect(const ModelParams& params, int n_max, int probe_count = 25);

struct QuasiBasisResult {
  cplx partial = 0.0;          // sum_{n <= c} <f, phi_n> <Psi_n, g>
  cplx swapped_partial = 0.0;  // sum_{n <= c} <f, Psi_n> <phi_n, g>
  cplx target = 0.0;
  cplx defect = 0.0;
  cplx swapped_defect = 0.0;
};

/// Truncated quasi-basis resolution of <f, g>. f and g must lie in the
/// oscillator span; otherwise DomainError.
QuasiBasisResult quasi_basis_residual(const WaveField& f, const WaveField& g, const ModelParams& params, int cutoff,
                                      const QuadratureRule& rule);

/// ||T_nu e_{n,0}|| / ||e_{n,0}|| for n = 0..n_max.
std::vector<double> dilation_growth(const ModelParams& params, int n_max, const QuadratureRule& rule);

}  // namespace swanson2d
