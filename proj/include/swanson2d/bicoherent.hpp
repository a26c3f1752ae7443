#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "swanson2d/innerprod.hpp"
#include "swanson2d/specfun.hpp"
#include "swanson2d/wavefun.hpp"

namespace swanson2d {

/// Norm bound ||phi_n|| <= A r^n M_n with lim M_n / M_{n+1} = M (possibly inf).
struct BoundSpec {
  double amplitude = 1.0;
  double ratio = 1.0;
  std::function<double(int)> m = [](int) { return 1.0; };
  double m_limit = 1.0;

  /// A r^n with M_n = 1.
  static BoundSpec geometric(double amplitude, double ratio);

  /// Positivity, plus M_n / M_{n+1} approaching m_limit on the tail of the
  /// probe range. Throws std::invalid_argument.
  void validate(int probe = 200) const;
};

/// alpha_bar min(1, M(phi) / r_phi, M(Psi) / r_Psi), with inf * positive = inf.
double radius(const SequenceSpec& seq, const BoundSpec& bphi, const BoundSpec& bpsi);

struct CoherentLabel {
  cplx z = 0.0;
  cplx w = 0.0;
};

struct Normalization {
  /// (sum_{k<=c} |z|^{2k} / (alpha_k!)^2)^{-1/2} (sum_{l<=c} |w|^{2l} / (beta_l!)^2)^{-1/2}.
  double value = 1.0;
  /// Bound on |value - N(z, w)| from the omitted terms; +inf when the ratio
  /// test has not kicked in at the cutoff.
  double tail = 0.0;
};

/// Truncated N(z, w). Throws DomainError when |z| or |w| reaches the limit
/// of its sequence (the series diverges).
Normalization normalization(const SequenceSpec& seq_a, const SequenceSpec& seq_b, const CoherentLabel& label,
                            int cutoff);

/// N(z, w) z^{n1} w^{n2} / (alpha_{n1}! beta_{n2}!) for n1, n2 <= cutoff.
CoeffTable coherent_coefficients(const SequenceSpec& seq_a, const SequenceSpec& seq_b, const CoherentLabel& label,
                                 int cutoff);

enum class Family { phi, psi };

/// Norm bound A r^n for the Swanson families: A = ||phi_{0,0}|| (or
/// ||Psi_{0,0}||) and r = r_nu from Re nu, which dominates the Legendre
/// growth because P_n(x) <= (x + sqrt(x^2 - 1))^n.
BoundSpec swanson_bound(const ModelParams& params, Family family);

/// Bound on the norm of the omitted part of the series when both indices are
/// cut at cutoff: N A (S(r|z|) S(r|w|) - S_c(r|z|) S_c(r|w|)) with
/// S(y) = sum y^k / sqrt(k!).
double coherent_tail(const ModelParams& params, Family family, const CoherentLabel& label, int cutoff);

/// Truncated bicoherent state with alpha = beta = sqrt(n):
///   N(z, w) sum_{n1, n2 <= c} z^{n1} w^{n2} / sqrt(n1! n2!) phi_{n1,n2} (or Psi).
/// Throws TruncationError carrying the achievable tail when the tail bound
/// exceeds tail_tol.
WaveField coherent_state(Family family, const ModelParams& params, const CoherentLabel& label, int cutoff,
                         double tail_tol = 1e-8);

/// ||Op s - lambda s|| / ||s|| with s = phi(z, w) for A1, A2 and Psi(z, w) for
/// B1dag, B2dag; lambda = z on mode 1 and w on mode 2. rule_order 0 picks
/// default_rule_order(cutoff + 1).
double eigen_residual(Ladder which, const ModelParams& params, const CoherentLabel& label, int cutoff,
                      int rule_order = 0);

/// Density r -> lambda'(r) on [0, rho) and how to integrate against it.
struct RadialMeasure {
  enum class Strategy {
    /// t = r^2 onto Gauss-Laguerre: exact for r e^{-r^2}-type densities.
    laguerre_squared,
    /// r = e^u and the trapezoid rule in u.
    log_trapezoid,
  };

  std::string name;
  std::function<double(double)> density;
  double rho = std::numeric_limits<double>::infinity();
  Strategy strategy = Strategy::laguerre_squared;

  /// int_0^rho r^{2k} lambda'(r) dr.
  double moment(int k, int order = 60) const;

  /// Nodes r_i and weights v_i with sum v_i f(r_i) ~ int f(r) lambda'(r) dr.
  void radial_rule(int order, std::vector<double>& r, std::vector<double>& v) const;
};

/// For alpha_k = sqrt(k) the density (1/pi) r e^{-r^2} on [0, inf). Other
/// sequences throw UnsupportedError: pass the density explicitly instead.
RadialMeasure moment_measure(const SequenceSpec& seq);

/// User-supplied density for an arbitrary sequence.
RadialMeasure moment_measure(const SequenceSpec& seq, std::function<double(double)> density,
                             RadialMeasure::Strategy strategy, double rho = std::numeric_limits<double>::infinity());

/// max_k |moment(k) - (alpha_k!)^2 / (2 pi)| / ((alpha_k!)^2 / (2 pi)) for k <= k_max.
double moment_defect(const RadialMeasure& measure, const SequenceSpec& seq, int k_max, int order = 60);

struct ResolutionResult {
  /// int N^{-2} <f, Psi(z,w)> <phi(z,w), g>.
  cplx integral = 0.0;
  /// int N^{-2} <f, phi(z,w)> <Psi(z,w), g>.
  cplx swapped_integral = 0.0;
  cplx target = 0.0;  // <f, g>
  cplx defect = 0.0;
  cplx swapped_defect = 0.0;
};

/// Resolution of the identity by bicoherent states for the Swanson case.
///
/// Inserting the truncated series, N^{-2} cancels against the two N factors
/// and the integral factorizes into
///   sum_{n, m} <f, Psi_n> K_{n1 m1} K_{n2 m2} <phi_m, g>,
///   K_{ab} = int z^a conj(z)^b / sqrt(a! b!) dlambda(r) dtheta,
/// where K is evaluated with the same radial and angular rules the direct
/// integral would use. f and g must be oscillator-span fields with indices
/// <= cutoff / 2; otherwise DomainError.
ResolutionResult resolution_residual(const WaveField& f, const WaveField& g, const ModelParams& params,
                                     int radial_order, int angular_order, int cutoff);

/// The same integral evaluated point by point over the tensor grid of
/// (r1, a1, r2, a2) nodes, building the two bicoherent states at every node.
/// Only practical at small orders; used to cross-check the factorized route.
ResolutionResult resolution_residual_direct(const WaveField& f, const WaveField& g, const ModelParams& params,
                                            int radial_order, int angular_order, int cutoff);

/// One-mode kernel K_{ab} = int z^a conj(z)^b / (alpha_a! alpha_b!) dlambda(r) dtheta
/// for a, b <= cutoff.
Eigen::MatrixXcd resolution_kernel(const RadialMeasure& measure, const SequenceSpec& seq, int radial_order,
                                   int angular_order, int cutoff);

}  // namespace swanson2d
