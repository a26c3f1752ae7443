#pragma once

#include <Eigen/Dense>

#include "swanson2d/params.hpp"
#include "swanson2d/specfun.hpp"
#include "swanson2d/wavefun.hpp"

namespace swanson2d {

/// max(80, 4 n_max + 20).
int default_rule_order(int n_max);

/// One-dimensional overlaps O_{ab} = int conj(u_a(x)) v_b(x) dx with
/// u_a = h_a(sf x) exp(-sf^2 x^2 / 2) and v_b likewise with sg, a <= nf, b <= ng.
///
/// The Gauss-Hermite rule is applied with weight compensation after the
/// real dilation x = y / sqrt(kappa), kappa = |c|^2 / Re c, where
/// c = (conj(sf^2) + sg^2) / 2 is the combined Gaussian exponent. Throws
/// DomainError when Re c <= 0 (the integrand does not decay).
Eigen::MatrixXcd overlap_1d(cplx sf, int nf, cplx sg, int ng, const QuadratureRule& rule);

/// <f, g> = int conj(f) g over R^2, conjugate-linear in f.
cplx inner(const WaveField& f, const WaveField& g, const QuadratureRule& rule);

/// Table of <f, X_n> for n1, n2 <= cutoff, where X is the phi family
/// (family = Kind::phi) or the Psi family (family = Kind::psi).
CoeffTable project_onto(const WaveField& f, const ModelParams& params, WaveField::Kind family, int cutoff,
                        const QuadratureRule& rule);

/// <phi_n, Psi_m> for all n, m with entries <= n_max, in basis order.
Eigen::MatrixXcd gram_matrix(const ModelParams& params, int n_max, const QuadratureRule& rule);

struct GramReport {
  int n_max = 0;
  double max_offdiag = 0.0;
  double max_diag_defect = 0.0;
  int rule_order = 0;
  /// Rule order below 4 n_max: results may be unreliable.
  bool under_resolved = false;
};

GramReport gram_biorthogonality(const ModelParams& params, int n_max, const QuadratureRule& rule);

/// ||phi_n||^2 = pi |N1|^2 / (e^{-2 nu_i} cos 2nu_r) P_{n1}(1/cos 2nu_r) P_{n2}(1/cos 2nu_r).
double norm_closed_form(const ModelParams& params, MultiIndex idx);

/// ||Psi_n||^2: the same expression with N1 replaced by N2.
double norm_closed_form_psi(const ModelParams& params, MultiIndex idx);

/// Right-hand side of
///   int_0^inf int_0^inf e^{-p(x^2+y^2)} H_{n1}(ax) H_{n1}(bx) H_{n2}(cy) H_{n2}(fy) dx dy
///     = 2^{n1+n2-2} n1! n2! pi / p^{(n1+n2+2)/2} Q_{n1}(ab/sqrt p, a^2+b^2-p) Q_{n2}(cf/sqrt p, c^2+f^2-p),
/// where Q_n(u, q) = q^{n/2} P_n(u / sqrt q) is evaluated by the homogeneous
/// Bonnet recurrence, so no branch of sqrt q is needed. Throws DomainError
/// when Re p <= 0.
cplx prudnikov_oracle(cplx p, cplx a, cplx b, cplx c, cplx f, int n1, int n2);

/// ||phi_n||^2 through the quarter-plane formula: a = s, b = conj(s),
/// p = Re s^2 with s = e^{i nu}, times 4 for the full plane.
double norm_via_prudnikov(const ModelParams& params, MultiIndex idx);

/// sqrt(x + sqrt(x^2 - 1)) with x = 1 / cos 2nu.
double growth_ratio(double nu);

struct GrowthBound {
  double bound = 0.0;
  double r_nu = 1.0;
  double a_nu = 0.0;
  /// nu = 0: r_nu = 1 and the bound is trivial.
  bool degenerate = false;
};

/// ||phi_n|| <= A_nu r_nu^{n1 + n2}. A_nu is the largest ||phi_m|| / r_nu^{m1+m2}
/// over the reference grid m1, m2 <= reference_n. Real nu only; complex nu
/// throws UnsupportedError.
GrowthBound norm_growth_bound(const ModelParams& params, MultiIndex idx, int reference_n = 20);

}  // namespace swanson2d
