#include "swanson2d/innerprod.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace swanson2d {

int default_rule_order(int n_max) { return std::max(80, 4 * n_max + 20); }

Eigen::MatrixXcd overlap_1d(cplx sf, int nf, cplx sg, int ng, const QuadratureRule& rule) {
  if (rule.kind() != RuleKind::gauss_hermite) throw std::invalid_argument("overlap_1d: need a Gauss-Hermite rule");
  if (nf < 0 || ng < 0) throw std::invalid_argument("overlap_1d: negative index bound");
  const cplx c = 0.5 * (std::conj(sf * sf) + sg * sg);
  if (!(c.real() > 0.0)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "integrand does not decay: combined Gaussian exponent has Re = %.3g <= 0", c.real());
    throw DomainError(buf);
  }
  const double kappa = std::norm(c) / c.real();
  const double root = std::sqrt(kappa);
  const auto& y = rule.nodes();
  const auto& w = rule.weights();
  std::vector<double> xs(y.size()), wc(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    xs[i] = y[i] / root;
    wc[i] = std::exp(y[i] * y[i] + std::log(w[i])) / root;
  }
  const Eigen::MatrixXcd u = mode_table(sf, nf, xs);
  const Eigen::MatrixXcd v = mode_table(sg, ng, xs);
  const Eigen::VectorXd weights = Eigen::Map<const Eigen::VectorXd>(wc.data(), static_cast<Eigen::Index>(wc.size()));
  return u.adjoint() * weights.asDiagonal() * v;
}

cplx inner(const WaveField& f, const WaveField& g, const QuadratureRule& rule) {
  const Eigen::MatrixXcd o1 = overlap_1d(f.scale(), f.max_n1(), g.scale(), g.max_n1(), rule);
  const Eigen::MatrixXcd o2 =
      f.max_n2() == f.max_n1() && g.max_n2() == g.max_n1() ? o1
                                                            : overlap_1d(f.scale(), f.max_n2(), g.scale(), g.max_n2(), rule);
  const Eigen::MatrixXcd mixed = o1 * g.coeffs() * o2.transpose();
  return (f.coeffs().conjugate().cwiseProduct(mixed)).sum() / kPi;
}

CoeffTable project_onto(const WaveField& f, const ModelParams& params, WaveField::Kind family, int cutoff,
                        const QuadratureRule& rule) {
  if (cutoff < 0) throw std::invalid_argument("project_onto: cutoff must be >= 0");
  cplx scale, weight;
  if (family == WaveField::Kind::phi) {
    scale = params.phi_scale();
    weight = 1.0;
  } else if (family == WaveField::Kind::psi) {
    scale = params.psi_scale();
    weight = params.n2() * std::sqrt(kPi);
  } else {
    throw std::invalid_argument("project_onto: family must be phi or psi");
  }
  const Eigen::MatrixXcd o1 = overlap_1d(f.scale(), f.max_n1(), scale, cutoff, rule);
  const Eigen::MatrixXcd o2 = overlap_1d(f.scale(), f.max_n2(), scale, cutoff, rule);
  return (weight / kPi) * (o1.transpose() * f.coeffs().conjugate() * o2);
}

Eigen::MatrixXcd gram_matrix(const ModelParams& params, int n_max, const QuadratureRule& rule) {
  if (n_max < 0) throw std::invalid_argument("gram_matrix: n_max must be >= 0");
  const Eigen::MatrixXcd o = overlap_1d(params.phi_scale(), n_max, params.psi_scale(), n_max, rule);
  // phi carries N1 = pi^{-1/2}; Psi carries N2.
  const cplx pref = params.n2() / std::sqrt(kPi);
  const Eigen::Index m = n_max + 1;
  Eigen::MatrixXcd g(m * m, m * m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) g.block(a * m, b * m, m, m) = pref * o(a, b) * o;
  return g;
}

GramReport gram_biorthogonality(const ModelParams& params, int n_max, const QuadratureRule& rule) {
  const Eigen::MatrixXcd g = gram_matrix(params, n_max, rule);
  GramReport r;
  r.n_max = n_max;
  r.rule_order = rule.order();
  r.under_resolved = rule.order() < 4 * n_max;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      if (i == j) {
        r.max_diag_defect = std::max(r.max_diag_defect, std::abs(g(i, j) - 1.0));
      } else {
        r.max_offdiag = std::max(r.max_offdiag, std::abs(g(i, j)));
      }
    }
  }
  return r;
}

namespace {

double legendre_factor(const ModelParams& params, MultiIndex idx) {
  const double x = 1.0 / std::cos(2.0 * params.nu_re());
  return legendre_eval(idx.n1, x) * legendre_eval(idx.n2, x);
}

double gaussian_scale(const ModelParams& params) {
  return std::exp(-2.0 * params.nu_im()) * std::cos(2.0 * params.nu_re());
}

}  // namespace

double norm_closed_form(const ModelParams& params, MultiIndex idx) {
  return kPi * std::norm(params.n1()) / gaussian_scale(params) * legendre_factor(params, idx);
}

double norm_closed_form_psi(const ModelParams& params, MultiIndex idx) {
  return kPi * std::norm(params.n2()) / gaussian_scale(params) * legendre_factor(params, idx);
}

namespace {

// q^{n/2} P_n(u / sqrt q) via (k+1) Q_{k+1} = (2k+1) u Q_k - k q Q_{k-1}.
cplx homogeneous_legendre(int n, cplx u, cplx q) {
  cplx prev = 1.0;
  if (n == 0) return prev;
  cplx cur = u;
  for (int k = 1; k < n; ++k) {
    const cplx next = ((2.0 * k + 1.0) * u * cur - static_cast<double>(k) * q * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

cplx prudnikov_oracle(cplx p, cplx a, cplx b, cplx c, cplx f, int n1, int n2) {
  if (!(p.real() > 0.0)) throw DomainError("prudnikov_oracle: Re(p) must be positive");
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("prudnikov_oracle: negative index");
  const cplx sp = std::sqrt(p);
  const double log_pref = (n1 + n2 - 2) * std::log(2.0) + log_factorial(n1) + log_factorial(n2);
  const cplx q1 = homogeneous_legendre(n1, a * b / sp, a * a + b * b - p);
  const cplx q2 = homogeneous_legendre(n2, c * f / sp, c * c + f * f - p);
  return std::exp(log_pref) * kPi / std::pow(sp, n1 + n2 + 2) * q1 * q2;
}

double norm_via_prudnikov(const ModelParams& params, MultiIndex idx) {
  const cplx s = params.phi_scale();
  const cplx p = (s * s).real();
  const cplx quarter = prudnikov_oracle(p, s, std::conj(s), s, std::conj(s), idx.n1, idx.n2);
  const double log_h = (idx.n1 + idx.n2) * std::log(2.0) + log_factorial(idx.n1) + log_factorial(idx.n2);
  return 4.0 * std::norm(params.n1()) * quarter.real() * std::exp(-log_h);
}

double growth_ratio(double nu) {
  const double x = 1.0 / std::cos(2.0 * nu);
  return std::sqrt(x + std::sqrt(std::max(0.0, x * x - 1.0)));
}

GrowthBound norm_growth_bound(const ModelParams& params, MultiIndex idx, int reference_n) {
  if (!params.real_nu()) throw UnsupportedError("norm_growth_bound: real nu only; use norm_closed_form for complex nu");
  GrowthBound g;
  g.r_nu = growth_ratio(params.nu_re());
  g.degenerate = params.nu_re() == 0.0;
  const double log_r = std::log(g.r_nu);
  for (int m1 = 0; m1 <= reference_n; ++m1) {
    for (int m2 = 0; m2 <= reference_n; ++m2) {
      const double ratio = std::sqrt(norm_closed_form(params, {m1, m2})) * std::exp(-(m1 + m2) * log_r);
      g.a_nu = std::max(g.a_nu, ratio);
    }
  }
  g.bound = g.a_nu * std::exp((idx.n1 + idx.n2) * log_r);
  return g;
}

}  // namespace swanson2d
