#include "swanson2d/specfun.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swanson2d {

cplx hermite_eval(int n, cplx z) {
  if (n < 0) throw std::invalid_argument("hermite_eval: n must be >= 0");
  cplx prev{1.0, 0.0};
  if (n == 0) return prev;
  cplx cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    cplx next = 2.0 * z * cur - 2.0 * static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_normalized(int n_max, cplx z, std::span<cplx> out) {
  if (n_max < 0 || out.size() < static_cast<std::size_t>(n_max + 1)) {
    throw std::invalid_argument("hermite_normalized: bad output size");
  }
  out[0] = 1.0;
  if (n_max == 0) return;
  out[1] = std::sqrt(2.0) * z;
  for (int k = 1; k < n_max; ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * z * out[k] - std::sqrt(kk / (kk + 1.0)) * out[k - 1];
  }
}

double legendre_eval(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre_eval: n must be >= 0");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    double next = ((2.0 * kk + 1.0) * x * cur - kk * prev) / (kk + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::string to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::gauss_hermite: return "gauss_hermite";
    case RuleKind::gauss_laguerre: return "gauss_laguerre";
    case RuleKind::uniform_angle: return "uniform_angle";
  }
  return "unknown";
}

QuadratureRule::QuadratureRule(RuleKind kind, std::vector<double> nodes, std::vector<double> weights)
    : kind_(kind), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size()) {
    throw std::invalid_argument("QuadratureRule: nodes and weights must be non-empty and equal length");
  }
}

namespace {

// Orthonormal three-term recurrence
//   beta_{k+1} p_{k+1} = (x - a_k) p_k - beta_k p_{k-1}
// whose coefficients fill the symmetric Jacobi matrix.
struct Jacobi {
  RuleKind kind;
  double mu0;  // total mass of the weight function

  double diag(int k) const { return kind == RuleKind::gauss_hermite ? 0.0 : 2.0 * k + 1.0; }
  double offdiag(int k) const {  // beta_k, k >= 1
    return kind == RuleKind::gauss_hermite ? std::sqrt(0.5 * k) : static_cast<double>(k);
  }
};

Jacobi jacobi_for(RuleKind kind) {
  return {kind, kind == RuleKind::gauss_hermite ? std::sqrt(kPi) : 1.0};
}

// p_order(x), its derivative, and the Christoffel sum sum_{k<order} p_k(x)^2,
// carried in a rescaled frame so that large-order tails never overflow.
struct RecurrenceEval {
  double p;
  double dp;
  double sum;
  double log_scale;
};

RecurrenceEval eval_orthonormal(const Jacobi& j, int order, double x) {
  double p_prev = 0.0, dp_prev = 0.0;
  double p = 1.0 / std::sqrt(j.mu0), dp = 0.0;
  double sum = 0.0;
  double log_scale = 0.0;
  for (int k = 0; k < order; ++k) {
    sum += p * p;
    const double beta_cur = (k >= 1) ? j.offdiag(k) : 0.0;
    const double beta_next = j.offdiag(k + 1);
    const double p_next = ((x - j.diag(k)) * p - beta_cur * p_prev) / beta_next;
    const double dp_next = (p + (x - j.diag(k)) * dp - beta_cur * dp_prev) / beta_next;
    p_prev = p;
    dp_prev = dp;
    p = p_next;
    dp = dp_next;
    const double mag = std::max(std::abs(p), std::abs(p_prev));
    if (mag > 1e100) {
      const double f = 1.0 / mag;
      p *= f;
      dp *= f;
      p_prev *= f;
      dp_prev *= f;
      sum *= f * f;
      log_scale -= std::log(f);
    }
  }
  return {p, dp, sum, log_scale};
}

}  // namespace

QuadratureRule make_rule(RuleKind kind, int order) {
  if (order < 1) throw std::invalid_argument("make_rule: order must be >= 1");
  std::vector<double> nodes(order), weights(order);
  if (kind == RuleKind::uniform_angle) {
    for (int k = 0; k < order; ++k) {
      nodes[k] = 2.0 * kPi * k / order;
      weights[k] = 2.0 * kPi / order;
    }
    return QuadratureRule(kind, std::move(nodes), std::move(weights));
  }

  const Jacobi j = jacobi_for(kind);
  if (order == 1) {
    nodes[0] = j.diag(0);
  } else {
    Eigen::VectorXd d(order);
    Eigen::VectorXd e(order - 1);
    for (int k = 0; k < order; ++k) d[k] = j.diag(k);
    for (int k = 1; k < order; ++k) e[k - 1] = j.offdiag(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("make_rule: Jacobi eigenvalue iteration failed");
    }
    for (int k = 0; k < order; ++k) nodes[k] = solver.eigenvalues()[k];
  }

  for (int k = 0; k < order; ++k) {
    double x = nodes[k];
    // Newton polish to the 1e-14 node tolerance.
    for (int it = 0; it < 8 && order > 1; ++it) {
      const RecurrenceEval r = eval_orthonormal(j, order, x);
      if (r.dp == 0.0) break;
      const double step = r.p / r.dp;
      x -= step;
      if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(x))) break;
    }
    nodes[k] = x;
    const RecurrenceEval r = eval_orthonormal(j, order, x);
    weights[k] = std::exp(-2.0 * r.log_scale) / r.sum;
  }
  if (kind == RuleKind::gauss_hermite) {
    // Exact symmetry of the Hermite rule.
    for (int k = 0; k < order / 2; ++k) {
      const double xs = 0.5 * (nodes[order - 1 - k] - nodes[k]);
      const double ws = 0.5 * (weights[order - 1 - k] + weights[k]);
      nodes[k] = -xs;
      nodes[order - 1 - k] = xs;
      weights[k] = weights[order - 1 - k] = ws;
    }
    if (order % 2 == 1) nodes[order / 2] = 0.0;
  }
  return QuadratureRule(kind, std::move(nodes), std::move(weights));
}

SequenceSpec SequenceSpec::sqrt_n() {
  return {"sqrt_n", [](int n) { return std::sqrt(static_cast<double>(n)); },
          std::numeric_limits<double>::infinity()};
}

SequenceSpec SequenceSpec::linear() {
  return {"linear", [](int n) { return static_cast<double>(n); },
          std::numeric_limits<double>::infinity()};
}

SequenceSpec SequenceSpec::saturating() {
  return {"saturating", [](int n) { return static_cast<double>(n) / (n + 1.0); }, 1.0};
}

void SequenceSpec::validate(int probe) const {
  if (!alpha) throw std::invalid_argument("sequence '" + name + "' has no evaluator");
  if (alpha(0) != 0.0) throw std::invalid_argument("sequence '" + name + "' must have alpha_0 = 0");
  if (!(limit > 0.0)) throw std::invalid_argument("sequence '" + name + "' must have a positive limit");
  double prev = 0.0;
  for (int n = 1; n <= probe; ++n) {
    const double a = alpha(n);
    if (!(a > prev)) {
      throw std::invalid_argument("sequence '" + name + "' is not strictly increasing at n = " +
                                  std::to_string(n));
    }
    if (a > limit) {
      throw std::invalid_argument("sequence '" + name + "' exceeds its declared limit at n = " +
                                  std::to_string(n));
    }
    prev = a;
  }
}

double log_alpha_factorial(const SequenceSpec& seq, int k) {
  if (k < 0) throw std::invalid_argument("alpha_factorial: k must be >= 0");
  double acc = 0.0;
  for (int j = 1; j <= k; ++j) acc += std::log(seq.alpha(j));
  return acc;
}

double alpha_factorial(const SequenceSpec& seq, int k) {
  return std::exp(log_alpha_factorial(seq, k));
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace swanson2d
