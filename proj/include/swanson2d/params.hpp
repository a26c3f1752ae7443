#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace swanson2d {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Raised when an input lies outside the mathematical domain of an operation
/// (non-decaying integrand, divergent series, grid too small, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for inputs the implementation deliberately does not handle.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a truncated series cannot reach the requested tolerance.
/// Carries the tolerance that is achievable at the given cutoff.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double achievable)
      : std::runtime_error(what), achievable_(achievable) {}
  double achievable() const noexcept { return achievable_; }

 private:
  double achievable_;
};

/// The pair (nu, theta). nu is complex in general; its real part must lie in
/// (-pi/4, pi/4) so that cos(2 Re nu) > 0. theta is unrestricted.
class ModelParams {
 public:
  ModelParams(cplx nu, double theta);
  ModelParams(double nu, double theta) : ModelParams(cplx{nu, 0.0}, theta) {}

  cplx nu() const noexcept { return nu_; }
  double nu_re() const noexcept { return nu_.real(); }
  double nu_im() const noexcept { return nu_.imag(); }
  double theta() const noexcept { return theta_; }
  bool real_nu() const noexcept { return nu_.imag() == 0.0; }

  /// e^{i nu}: the argument scale of the phi family.
  cplx phi_scale() const { return std::exp(cplx{0.0, 1.0} * nu_); }
  /// e^{-i conj(nu)}: the argument scale of the Psi family.
  cplx psi_scale() const { return std::exp(cplx{0.0, -1.0} * std::conj(nu_)); }

  /// 1 / cos(2 nu): the energy quantum of H.
  cplx energy_quantum() const { return 1.0 / std::cos(2.0 * nu_); }

  /// Normalization of phi_{0,0}: pi^{-1/2}.
  cplx n1() const;
  /// Normalization of Psi_{0,0}: e^{-2 i conj(nu)} pi^{-1/2}, so that
  /// <phi_{0,0}, Psi_{0,0}> = 1.
  cplx n2() const;

  /// Parameters of the adjoint family (nu -> -conj(nu)).
  ModelParams adjoint() const { return ModelParams(-std::conj(nu_), theta_); }

 private:
  cplx nu_;
  double theta_;
};

/// z^n by repeated multiplication; ipow(0, 0) = 1.
inline cplx ipow(cplx z, int n) {
  cplx r{1.0, 0.0};
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

struct MultiIndex {
  int n1 = 0;
  int n2 = 0;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// Row-major position of (n1, n2) in a tensor basis with n_max+1 levels per
/// mode; n2 runs fastest.
inline std::size_t flat_index(MultiIndex idx, int n_max) {
  return static_cast<std::size_t>(idx.n1) * static_cast<std::size_t>(n_max + 1) +
         static_cast<std::size_t>(idx.n2);
}

}  // namespace swanson2d
