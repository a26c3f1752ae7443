#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "swanson2d/params.hpp"

namespace swanson2d {

/// Physicists' Hermite polynomial H_n(z) by three-term recurrence.
cplx hermite_eval(int n, cplx z);

/// Normalized Hermite values h_k(z) = H_k(z) / sqrt(2^k k!) for k = 0..n_max,
/// written into out (size n_max+1). The normalized recurrence never forms
/// 2^k k! explicitly.
void hermite_normalized(int n_max, cplx z, std::span<cplx> out);

/// Legendre polynomial P_n(x) by Bonnet's recurrence; x may exceed 1.
double legendre_eval(int n, double x);

enum class RuleKind { gauss_hermite, gauss_laguerre, uniform_angle };

std::string to_string(RuleKind kind);

/// Immutable one-dimensional quadrature rule.
///   gauss_hermite:  int f(x) e^{-x^2} dx over R
///   gauss_laguerre: int f(t) e^{-t} dt over [0, inf)
///   uniform_angle:  int f(a) da over [0, 2 pi)
class QuadratureRule {
 public:
  QuadratureRule(RuleKind kind, std::vector<double> nodes, std::vector<double> weights);

  RuleKind kind() const noexcept { return kind_; }
  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  RuleKind kind_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Gauss rules come from the eigenvalues of the symmetric Jacobi matrix
/// (Golub-Welsch), polished by Newton steps on the orthonormal recurrence;
/// weights are the Christoffel numbers 1 / sum_k p_k(x)^2, which keeps full
/// relative accuracy for the tiny tail weights.
QuadratureRule make_rule(RuleKind kind, int order);

/// The increasing sequence 0 = alpha_0 < alpha_1 < ... of the generalized
/// factorial alpha_k! = alpha_1 ... alpha_k.
struct SequenceSpec {
  std::string name;
  std::function<double(int)> alpha;
  /// sup_n alpha_n, possibly +infinity.
  double limit = std::numeric_limits<double>::infinity();

  /// alpha_n = sqrt(n): the pseudo-bosonic case.
  static SequenceSpec sqrt_n();
  /// alpha_n = n.
  static SequenceSpec linear();
  /// alpha_n = n / (n + 1), bounded by 1.
  static SequenceSpec saturating();

  /// Checks alpha_0 = 0, strict increase and consistency with the declared
  /// limit on probe indices 0..probe. Throws std::invalid_argument.
  void validate(int probe = 64) const;
};

/// log(alpha_k!) accumulated in log space.
double log_alpha_factorial(const SequenceSpec& seq, int k);

/// alpha_k! with alpha_0! = 1.
double alpha_factorial(const SequenceSpec& seq, int k);

/// log(n!) via lgamma.
double log_factorial(int n);

}  // namespace swanson2d
