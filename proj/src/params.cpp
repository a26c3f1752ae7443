#include "swanson2d/params.hpp"

#include <cmath>
#include <string>

namespace swanson2d {

cplx ModelParams::n1() const { return cplx{1.0 / std::sqrt(kPi), 0.0}; }

cplx ModelParams::n2() const {
  return std::exp(cplx{0.0, -2.0} * std::conj(nu_)) / std::sqrt(kPi);
}

ModelParams::ModelParams(cplx nu, double theta) : nu_(nu), theta_(theta) {
  if (!(std::abs(nu.real()) < kPi / 4.0)) {
    throw std::invalid_argument("nu_re must lie in (-pi/4, pi/4), got " +
                                std::to_string(nu.real()));
  }
  if (!std::isfinite(nu.imag()) || !std::isfinite(theta)) {
    throw std::invalid_argument("nu_im and theta must be finite");
  }
}

}  // namespace swanson2d
