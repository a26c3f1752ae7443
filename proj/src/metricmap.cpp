#include "swanson2d/metricmap.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "swanson2d/fockmatrix.hpp"

namespace swanson2d {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

DilationMap adjoint(const DilationMap& map) { return {std::conj(map.nu), map.direction, map.power}; }

WaveField dilation_apply(const DilationMap& map, const WaveField& field) {
  const cplx phase = std::exp(kI * map.angle());
  return {WaveField::Kind::superposition, field.scale() * phase, field.coeffs() * phase};
}

GridField dilation_apply(const DilationMap&, const GridField&) {
  throw UnsupportedError("dilation_apply: gridded fields cannot be evaluated at complex points");
}

WaveField metric_apply(const ModelParams& params, const WaveField& field) {
  const DilationMap inv{params.nu(), Direction::inverse, 1};
  const WaveField once = dilation_apply(inv, field);
  return dilation_apply(adjoint(inv), once).scaled(1.0 / (kPi * std::norm(params.n1())));
}

std::vector<std::array<double, 2>> probe_points(int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<std::array<double, 2>> pts(static_cast<std::size_t>(count));
  for (auto& p : pts) {
    p[0] = -2.5 + 5.0 * unit();
    p[1] = -2.5 + 5.0 * unit();
  }
  return pts;
}

MetricReport metric_constant(const ModelParams& params, int n_max, int probe_count) {
  const auto pts = probe_points(probe_count);
  MetricReport r;
  bool have = false;
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) {
      const WaveField image = metric_apply(params, WaveField::phi(params, {n1, n2}));
      const WaveField psi = WaveField::psi(params, {n1, n2});
      for (const auto& p : pts) {
        const cplx den = psi(p[0], p[1]);
        if (std::abs(den) < 1e-250) continue;
        const cplx ratio = image(p[0], p[1]) / den;
        if (!have) {
          r.constant = ratio;
          have = true;
        }
        r.spread = std::max(r.spread, std::abs(ratio - r.constant) / std::abs(r.constant));
      }
    }
  }
  return r;
}

namespace {

double relative_pointwise(const std::vector<std::pair<WaveField, WaveField>>& pairs,
                          const std::vector<std::array<double, 2>>& pts) {
  double worst = 0.0;
  for (const auto& [lhs, rhs] : pairs) {
    double peak = 0.0, diff = 0.0;
    for (const auto& p : pts) {
      const cplx b = rhs(p[0], p[1]);
      peak = std::max(peak, std::abs(b));
      diff = std::max(diff, std::abs(lhs(p[0], p[1]) - b));
    }
    worst = std::max(worst, peak > 0.0 ? diff / peak : diff);
  }
  return worst;
}

}  // namespace

double similarity_check(const ModelParams& params, int n_max, int probe_count) {
  if (!params.real_nu()) throw UnsupportedError("similarity_check: real nu only");
  const DilationMap t{params.nu(), Direction::forward, 1};
  const DilationMap t_inv{params.nu(), Direction::inverse, 1};
  std::vector<std::pair<WaveField, WaveField>> pairs;
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) {
      const WaveField e = WaveField::oscillator({n1, n2});
      const WaveField lhs = dilation_apply(t_inv, apply_hamiltonian_analytic(params, dilation_apply(t, e)));
      const cplx energy = static_cast<double>(n1 + n2 + 1) * params.energy_quantum();
      pairs.emplace_back(lhs, e.scaled(energy));
    }
  }
  return relative_pointwise(pairs, probe_points(probe_count));
}

double spectrum_defect(const ModelParams& params, int n_max) {
  const TruncatedOperator hm = hamiltonian_matrix(params, n_max);
  std::vector<cplx> a, b;
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) {
      a.push_back(hm.entry({n1, n2}, {n1, n2}));
      b.push_back(static_cast<double>(n1 + n2 + 1) / std::cos(2.0 * params.nu()));
    }
  }
  auto order = [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); };
  std::sort(a.begin(), a.end(), order);
  std::sort(b.begin(), b.end(), order);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double intertwining_defect(const ModelParams& params, int n_max, int probe_count) {
  const DilationMap t{params.nu(), Direction::forward, 1};
  const DilationMap t_inv{params.nu(), Direction::inverse, 1};
  struct Pair {
    Ladder oscillator, pseudo;
  };
  const Pair pairs_of_ops[] = {{Ladder::a1, Ladder::A1},
                               {Ladder::a2, Ladder::A2},
                               {Ladder::a1dag, Ladder::B1},
                               {Ladder::a2dag, Ladder::B2}};
  std::vector<std::pair<WaveField, WaveField>> pairs;
  for (int n1 = 0; n1 <= n_max; ++n1) {
    for (int n2 = 0; n2 <= n_max; ++n2) {
      const WaveField phi = WaveField::phi(params, {n1, n2});
      for (const auto& op : pairs_of_ops) {
        const WaveField lhs =
            dilation_apply(t, apply_ladder_analytic(op.oscillator, params, dilation_apply(t_inv, phi)));
        pairs.emplace_back(lhs, apply_ladder_analytic(op.pseudo, params, phi));
      }
    }
  }
  return relative_pointwise(pairs, probe_points(probe_count));
}

QuasiBasisResult quasi_basis_residual(const WaveField& f, const WaveField& g, const ModelParams& params, int cutoff,
                                      const QuadratureRule& rule) {
  for (const WaveField* x : {&f, &g}) {
    if (x->kind() != WaveField::Kind::oscillator) {
      throw DomainError("quasi_basis_residual: arguments must lie in the oscillator span");
    }
  }
  const CoeffTable f_phi = project_onto(f, params, WaveField::Kind::phi, cutoff, rule);
  const CoeffTable f_psi = project_onto(f, params, WaveField::Kind::psi, cutoff, rule);
  const CoeffTable psi_g = project_onto(g, params, WaveField::Kind::psi, cutoff, rule).conjugate();
  const CoeffTable phi_g = project_onto(g, params, WaveField::Kind::phi, cutoff, rule).conjugate();
  QuasiBasisResult r;
  r.partial = f_phi.cwiseProduct(psi_g).sum();
  r.swapped_partial = f_psi.cwiseProduct(phi_g).sum();
  r.target = inner(f, g, rule);
  r.defect = r.partial - r.target;
  r.swapped_defect = r.swapped_partial - r.target;
  return r;
}

std::vector<double> dilation_growth(const ModelParams& params, int n_max, const QuadratureRule& rule) {
  const DilationMap t{params.nu(), Direction::forward, 1};
  std::vector<double> out;
  for (int n = 0; n <= n_max; ++n) {
    const WaveField e = WaveField::oscillator({n, 0});
    const WaveField te = dilation_apply(t, e);
    out.push_back(std::sqrt(inner(te, te, rule).real() / inner(e, e, rule).real()));
  }
  return out;
}

}  // namespace swanson2d
