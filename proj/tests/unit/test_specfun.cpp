#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "swanson2d/specfun.hpp"

using namespace swanson2d;

TEST_CASE("hermite_eval examples") {
  CHECK(hermite_eval(0, {3.7, -1.2}) == cplx{1.0, 0.0});
  const cplx h2 = hermite_eval(2, {1.0, 1.0});
  CHECK(std::abs(h2 - cplx{-2.0, 8.0}) < 1e-14);
  CHECK(std::abs(hermite_eval(3, 0.5) - cplx{-5.0, 0.0}) < 1e-14);
}

TEST_CASE("hermite derivative matches 2n H_{n-1}") {
  // Fourth-order central difference along the real direction; H_n is entire.
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-3.0 / std::sqrt(2.0), 3.0 / std::sqrt(2.0));
  const double h = 1e-3;
  for (int trial = 0; trial < 40; ++trial) {
    const cplx z{u(gen), u(gen)};
    for (int n = 1; n <= 20; ++n) {
      const cplx d = (-hermite_eval(n, z + 2.0 * h) + 8.0 * hermite_eval(n, z + h) - 8.0 * hermite_eval(n, z - h) +
                      hermite_eval(n, z - 2.0 * h)) /
                     (12.0 * h);
      const cplx ref = 2.0 * n * hermite_eval(n - 1, z);
      CHECK(std::abs(d - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("normalized hermite agrees with the plain recurrence") {
  std::vector<cplx> out(31);
  for (cplx z : {cplx{0.3, -0.7}, cplx{2.5, 0.1}, cplx{-1.0, 1.5}}) {
    hermite_normalized(30, z, out);
    for (int n = 0; n <= 30; ++n) {
      const double scale = std::exp(0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0)));
      const cplx ref = hermite_eval(n, z) / scale;
      CHECK(std::abs(out[n] - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("legendre_eval examples and properties") {
  CHECK(legendre_eval(0, 2.0) == 1.0);
  CHECK(legendre_eval(2, 2.0) == doctest::Approx(5.5).epsilon(1e-15));
  CHECK(legendre_eval(10, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  for (int n = 0; n <= 50; ++n) CHECK(std::abs(legendre_eval(n, 1.0) - 1.0) < 1e-13);
  for (double x : {-3.0, -1.5, -1.0, 1.2, 2.0}) {
    for (int n = 0; n <= 30; ++n) CHECK(std::abs(legendre_eval(n, x)) <= legendre_eval(n, std::abs(x)) * (1 + 1e-14));
  }
}

TEST_CASE("make_rule examples") {
  const auto one = make_rule(RuleKind::gauss_hermite, 1);
  REQUIRE(one.order() == 1);
  CHECK(std::abs(one.nodes()[0]) < 1e-15);
  CHECK(one.weights()[0] == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));

  const auto two = make_rule(RuleKind::gauss_hermite, 2);
  CHECK(two.nodes()[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(two.nodes()[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  for (double w : two.weights()) CHECK(w == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-14));

  const auto ang = make_rule(RuleKind::uniform_angle, 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(ang.nodes()[k] == doctest::Approx(k * kPi / 2).epsilon(1e-15));
    CHECK(ang.weights()[k] == doctest::Approx(kPi / 2).epsilon(1e-15));
  }
  CHECK_THROWS_AS(make_rule(RuleKind::gauss_laguerre, 0), std::invalid_argument);
}

TEST_CASE("rule invariants") {
  for (int m : {1, 2, 5, 20, 60, 120}) {
    for (RuleKind kind : {RuleKind::gauss_hermite, RuleKind::gauss_laguerre}) {
      const auto rule = make_rule(kind, m);
      double sum = 0.0;
      for (int i = 0; i < m; ++i) {
        CHECK(rule.weights()[i] > 0.0);
        if (i > 0) CHECK(rule.nodes()[i] > rule.nodes()[i - 1]);
        sum += rule.weights()[i];
      }
      const double expect = kind == RuleKind::gauss_hermite ? std::sqrt(kPi) : 1.0;
      CHECK(std::abs(sum - expect) < 1e-12 * expect);
    }
  }
}

TEST_CASE("gauss-hermite exactness on even monomials") {
  for (int m : {1, 3, 8, 16, 30}) {
    const auto rule = make_rule(RuleKind::gauss_hermite, m);
    for (int j = 0; 2 * j <= 2 * m - 1; ++j) {
      long double q = 0.0L;
      for (int i = 0; i < m; ++i) q += rule.weights()[i] * std::pow(static_cast<long double>(rule.nodes()[i]), 2 * j);
      const double exact = std::tgamma(j + 0.5);
      CHECK(std::abs(static_cast<double>(q) - exact) < 1e-12 * exact);
    }
  }
}

TEST_CASE("gauss-laguerre exactness on monomials") {
  for (int m : {1, 3, 8, 16, 30}) {
    const auto rule = make_rule(RuleKind::gauss_laguerre, m);
    for (int j = 0; j <= 2 * m - 1; ++j) {
      long double q = 0.0L;
      for (int i = 0; i < m; ++i) q += rule.weights()[i] * std::pow(static_cast<long double>(rule.nodes()[i]), j);
      const double exact = std::tgamma(j + 1.0);
      CHECK(std::abs(static_cast<double>(q) - exact) < 1e-12 * exact);
    }
  }
}

TEST_CASE("generalized factorials") {
  const auto sq = SequenceSpec::sqrt_n();
  CHECK(alpha_factorial(sq, 0) == 1.0);
  CHECK(alpha_factorial(sq, 3) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-15));
  CHECK(alpha_factorial(SequenceSpec::linear(), 4) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK_THROWS_AS(alpha_factorial(sq, -1), std::invalid_argument);
  // Far past the overflow point of n!, the log form stays finite.
  CHECK(log_alpha_factorial(SequenceSpec::linear(), 300) == doctest::Approx(log_factorial(300)).epsilon(1e-14));
  CHECK(std::isfinite(log_alpha_factorial(sq, 1000)));
}

TEST_CASE("sequence validation") {
  CHECK_NOTHROW(SequenceSpec::sqrt_n().validate());
  CHECK_NOTHROW(SequenceSpec::linear().validate());
  CHECK_NOTHROW(SequenceSpec::saturating().validate());
  SequenceSpec shifted{"shifted", [](int n) { return n + 1.0; }};
  CHECK_THROWS_AS(shifted.validate(), std::invalid_argument);
  SequenceSpec flat{"flat", [](int n) { return n == 0 ? 0.0 : 1.0; }, 1.0};
  CHECK_THROWS_AS(flat.validate(), std::invalid_argument);
  SequenceSpec wrong_limit{"wrong_limit", [](int n) { return n / (n + 1.0); }, 0.5};
  CHECK_THROWS_AS(wrong_limit.validate(), std::invalid_argument);
}
