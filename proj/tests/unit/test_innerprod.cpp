#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "swanson2d/innerprod.hpp"

using namespace swanson2d;

namespace {

// Composite trapezoid on [0, X] for an even integrand; Euler-Maclaurin end
// corrections vanish at 0 by parity and at X by decay.
cplx half_line(const std::function<cplx(double)>& f, double x_max = 12.0, double h = 0.01) {
  const int n = static_cast<int>(std::lround(x_max / h));
  cplx acc = 0.5 * f(0.0);
  for (int i = 1; i <= n; ++i) acc += f(i * h);
  return acc * h;
}

}  // namespace

TEST_CASE("inner examples") {
  const auto rule = make_rule(RuleKind::gauss_hermite, 80);
  const auto e0 = WaveField::oscillator({0, 0});
  CHECK(std::abs(inner(e0, e0, rule) - 1.0) < 1e-12);
  const ModelParams p(kPi / 6, 0.5);
  CHECK(std::abs(inner(WaveField::phi(p, {0, 0}), WaveField::psi(p, {0, 0}), rule) - 1.0) < 1e-12);
  CHECK(std::abs(inner(WaveField::phi(p, {1, 0}), WaveField::psi(p, {0, 1}), rule)) < 1e-10);
}

TEST_CASE("inner is conjugate-linear in the first slot") {
  const auto rule = make_rule(RuleKind::gauss_hermite, 80);
  const ModelParams p(0.3, 0.5);
  const auto f = WaveField::phi(p, {1, 2}), g = WaveField::psi(p, {1, 2});
  const cplx c{0.4, -1.3};
  CHECK(std::abs(inner(f.scaled(c), g, rule) - std::conj(c) * inner(f, g, rule)) < 1e-13);
  CHECK(std::abs(inner(f, g.scaled(c), rule) - c * inner(f, g, rule)) < 1e-13);
  CHECK(std::abs(inner(g, f, rule) - std::conj(inner(f, g, rule))) < 1e-13);
}

TEST_CASE("non-decaying integrand is rejected") {
  const auto rule = make_rule(RuleKind::gauss_hermite, 40);
  const WaveField bad(WaveField::Kind::superposition, std::exp(cplx{0, 1.0}), CoeffTable::Ones(1, 1));
  CHECK_THROWS_AS(inner(bad, bad, rule), DomainError);
}

TEST_CASE("gram biorthogonality") {
  const auto r80 = make_rule(RuleKind::gauss_hermite, 80);
  const auto a = gram_biorthogonality(ModelParams(0.3, 0.5), 6, r80);
  CHECK(a.max_offdiag < 1e-8);
  CHECK(a.max_diag_defect < 1e-8);
  CHECK_FALSE(a.under_resolved);
  for (int n : {2, 6, 10}) {
    const auto b = gram_biorthogonality(ModelParams(0.0, 0.5), n, r80);
    CHECK(b.max_offdiag < 1e-12);
    CHECK(b.max_diag_defect < 1e-12);
  }
  const auto c = gram_biorthogonality(ModelParams(cplx{0.3, 0.1}, 0.5), 4, r80);
  CHECK(c.max_offdiag < 1e-8);
  CHECK(c.max_diag_defect < 1e-8);
  CHECK(gram_biorthogonality(ModelParams(0.3, 0.5), 6, make_rule(RuleKind::gauss_hermite, 10)).under_resolved);
}

TEST_CASE("closed-form norm examples") {
  const ModelParams p(kPi / 6, 0.5);
  CHECK(norm_closed_form(p, {0, 0}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(norm_closed_form(p, {1, 1}) == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(norm_closed_form(ModelParams(cplx{0.3, 0.1}, 0.5), {0, 0}) ==
        doctest::Approx(std::exp(0.2) / std::cos(0.6)).epsilon(1e-14));
  const auto rule = make_rule(RuleKind::gauss_hermite, 80);
  const auto phi = WaveField::phi(p, {0, 0});
  CHECK(std::abs(inner(phi, phi, rule).real() - 2.0) < 1e-10);
}

TEST_CASE("quadrature norms match the closed forms") {
  const auto rule = make_rule(RuleKind::gauss_hermite, 120);
  for (cplx nu : {cplx{0.1, 0}, cplx{0.3, 0}, cplx{0.7, 0}, cplx{0.3, 0.1}}) {
    const ModelParams p(nu, 0.5);
    for (int a = 0; a <= 10; ++a)
      for (int b = 0; b <= 10; ++b) {
        const auto phi = WaveField::phi(p, {a, b});
        const auto psi = WaveField::psi(p, {a, b});
        const double cf = norm_closed_form(p, {a, b});
        const double cp = norm_closed_form_psi(p, {a, b});
        CHECK(std::abs(inner(phi, phi, rule).real() - cf) < 1e-8 * cf);
        CHECK(std::abs(inner(psi, psi, rule).real() - cp) < 1e-8 * cp);
        CHECK(norm_closed_form(p, {a, b}) == norm_closed_form(p, {b, a}));
      }
  }
}

TEST_CASE("prudnikov formula") {
  CHECK(std::abs(prudnikov_oracle(1.0, 1.0, 1.0, 1.0, 1.0, 0, 0) - kPi / 4) < 1e-15);
  CHECK_THROWS_AS(prudnikov_oracle(cplx{-0.1, 1.0}, 1.0, 1.0, 1.0, 1.0, 1, 1), DomainError);
  CHECK_THROWS_AS(prudnikov_oracle(0.0, 1.0, 1.0, 1.0, 1.0, 0, 0), DomainError);

  for (double nu : {0.1, 0.3, kPi / 6, 0.7})
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b) {
        const ModelParams p(nu, 0.0);
        const double cf = norm_closed_form(p, {a, b});
        CHECK(std::abs(norm_via_prudnikov(p, {a, b}) - cf) < 1e-12 * cf);
      }

  // Brute-force oracle: the integral factorizes into two half-line integrals.
  const cplx choices[] = {1.0, std::exp(cplx{0, 0.3}), std::exp(cplx{0, -0.3})};
  const double pp = 1.2;
  for (int n1 = 0; n1 <= 4; ++n1)
    for (int n2 = 0; n2 <= 4; n2 += 2)
      for (const cplx& a : choices)
        for (const cplx& b : choices)
          for (const cplx& c : {choices[0], choices[1]})
            for (const cplx& f : {choices[0], choices[2]}) {
              const cplx ix = half_line([&](double x) {
                return std::exp(-pp * x * x) * hermite_eval(n1, a * x) * hermite_eval(n1, b * x);
              });
              const cplx iy = half_line([&](double y) {
                return std::exp(-pp * y * y) * hermite_eval(n2, c * y) * hermite_eval(n2, f * y);
              });
              const cplx ref = ix * iy;
              const cplx got = prudnikov_oracle(pp, a, b, c, f, n1, n2);
              CHECK(std::abs(got - ref) < 1e-8 * std::max(1.0, std::abs(ref)));
            }
}

TEST_CASE("growth ratio and bound") {
  CHECK(growth_ratio(kPi / 6) == doctest::Approx(std::sqrt(2 + std::sqrt(3.0))).epsilon(1e-14));
  CHECK(growth_ratio(0.0) == 1.0);
  CHECK(std::abs(growth_ratio(1e-6) - 1.0) < 1e-5);

  const ModelParams p(0.3, 0.5);
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; b <= 10; ++b) {
      const auto g = norm_growth_bound(p, {a, b});
      CHECK(std::sqrt(norm_closed_form(p, {a, b})) <= g.bound * (1 + 1e-14));
      CHECK_FALSE(g.degenerate);
    }
  CHECK(norm_growth_bound(ModelParams(0.0, 0.5), {2, 3}).degenerate);
  CHECK(norm_growth_bound(ModelParams(0.0, 0.5), {2, 3}).r_nu == 1.0);
  CHECK_THROWS_AS(norm_growth_bound(ModelParams(cplx{0.3, 0.1}, 0.5), {0, 0}), UnsupportedError);
}

TEST_CASE("norm divergence") {
  const ModelParams p(kPi / 6, 0.5);
  double prev = 0.0;
  for (int n = 0; n <= 15; ++n) {
    const double cur = std::sqrt(norm_closed_form(p, {n, 0}));
    CHECK(cur > prev);
    if (n > 0) CHECK(cur / prev <= std::pow(growth_ratio(kPi / 6), 2));
    prev = cur;
  }
  CHECK(std::sqrt(norm_closed_form(p, {10, 0}) / norm_closed_form(p, {0, 0})) > 10.0);
}

TEST_CASE("default rule order") {
  CHECK(default_rule_order(6) == 80);
  CHECK(default_rule_order(40) == 180);
}
