#include "swanson2d/bicoherent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace swanson2d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

}  // namespace

BoundSpec BoundSpec::geometric(double amplitude, double ratio) {
  BoundSpec b;
  b.amplitude = amplitude;
  b.ratio = ratio;
  return b;
}

void BoundSpec::validate(int probe) const {
  if (!(amplitude > 0.0) || !(ratio > 0.0)) throw std::invalid_argument("BoundSpec: A and r must be positive");
  if (!m) throw std::invalid_argument("BoundSpec: missing M_n evaluator");
  if (!(m_limit > 0.0)) throw std::invalid_argument("BoundSpec: the limit of M_n / M_{n+1} must be positive");
  for (int n = 0; n <= probe; ++n) {
    if (!(m(n) > 0.0)) throw std::invalid_argument("BoundSpec: M_n must be positive (n = " + std::to_string(n) + ")");
  }
  // The tail ratio must be heading toward the declared limit.
  const double late = m(probe - 1) / m(probe);
  if (std::isinf(m_limit)) {
    if (late < m(probe / 2 - 1) / m(probe / 2)) {
      throw std::invalid_argument("BoundSpec: M_n / M_{n+1} is not growing toward the declared infinite limit");
    }
  } else if (std::abs(late - m_limit) > 0.05 * m_limit) {
    throw std::invalid_argument(fmt("BoundSpec: M_n / M_{n+1} = %.6g on the probe tail, declared limit %.6g", late, m_limit));
  }
}

double radius(const SequenceSpec& seq, const BoundSpec& bphi, const BoundSpec& bpsi) {
  const double factor = std::min({1.0, bphi.m_limit / bphi.ratio, bpsi.m_limit / bpsi.ratio});
  if (std::isinf(seq.limit)) return kInf;
  return seq.limit * factor;
}

namespace {

struct PartialSum {
  double sum = 1.0;
  double tail = 0.0;
};

// sum_{k<=c} |z|^{2k} / (alpha_k!)^2 with a ratio-test bound on the rest.
PartialSum squared_series(const SequenceSpec& seq, double modulus, int cutoff) {
  if (modulus >= seq.limit) {
    throw DomainError("the normalization series diverges: |label| = " + fmt("%.6g", modulus) +
                      " reaches the sequence limit " + fmt("%.6g", seq.limit) + " of '" + seq.name + "'");
  }
  PartialSum out;
  if (modulus == 0.0) return out;
  const double log_m = std::log(modulus);
  double log_fact = 0.0;
  double last = 1.0;
  for (int k = 1; k <= cutoff; ++k) {
    log_fact += std::log(seq.alpha(k));
    last = std::exp(2.0 * (k * log_m - log_fact));
    out.sum += last;
  }
  const double next_alpha = seq.alpha(cutoff + 1);
  const double q = modulus * modulus / (next_alpha * next_alpha);
  out.tail = q < 1.0 ? last * q / (1.0 - q) : kInf;
  return out;
}

cplx label_power(cplx z, int n) {
  if (n == 0) return 1.0;
  if (z == cplx{0.0, 0.0}) return 0.0;
  return std::polar(std::exp(n * std::log(std::abs(z))), n * std::arg(z));
}

}  // namespace

Normalization normalization(const SequenceSpec& seq_a, const SequenceSpec& seq_b, const CoherentLabel& label,
                            int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("normalization: cutoff must be >= 1");
  const PartialSum a = squared_series(seq_a, std::abs(label.z), cutoff);
  const PartialSum b = squared_series(seq_b, std::abs(label.w), cutoff);
  Normalization n;
  n.value = 1.0 / std::sqrt(a.sum * b.sum);
  if (std::isinf(a.tail) || std::isinf(b.tail)) {
    n.tail = kInf;
  } else {
    const double grow = (1.0 + a.tail / a.sum) * (1.0 + b.tail / b.sum);
    n.tail = n.value * (1.0 - 1.0 / std::sqrt(grow));
  }
  return n;
}

CoeffTable coherent_coefficients(const SequenceSpec& seq_a, const SequenceSpec& seq_b, const CoherentLabel& label,
                                 int cutoff) {
  const double n = normalization(seq_a, seq_b, label, cutoff).value;
  CoeffTable c(cutoff + 1, cutoff + 1);
  for (int n1 = 0; n1 <= cutoff; ++n1) {
    const cplx left = label_power(label.z, n1) * std::exp(-log_alpha_factorial(seq_a, n1));
    for (int n2 = 0; n2 <= cutoff; ++n2) {
      c(n1, n2) = n * left * label_power(label.w, n2) * std::exp(-log_alpha_factorial(seq_b, n2));
    }
  }
  return c;
}

BoundSpec swanson_bound(const ModelParams& params, Family family) {
  const double sq = family == Family::phi ? norm_closed_form(params, {0, 0}) : norm_closed_form_psi(params, {0, 0});
  return BoundSpec::geometric(std::sqrt(sq), growth_ratio(params.nu_re()));
}

namespace {

// Head (k <= c) and tail (k > c) of sum y^k / sqrt(k!).
std::pair<double, double> root_factorial_series(double y, int cutoff) {
  if (y == 0.0) return {1.0, 0.0};
  const double log_y = std::log(y);
  double head = 0.0, tail = 0.0;
  for (int k = 0;; ++k) {
    const double term = std::exp(k * log_y - 0.5 * log_factorial(k));
    if (k <= cutoff) {
      head += term;
    } else {
      tail += term;
      if (k > y * y && term < 1e-18 * (head + tail)) break;
    }
  }
  return {head, tail};
}

}  // namespace

double coherent_tail(const ModelParams& params, Family family, const CoherentLabel& label, int cutoff) {
  const BoundSpec b = swanson_bound(params, family);
  const SequenceSpec seq = SequenceSpec::sqrt_n();
  const double n = normalization(seq, seq, label, cutoff).value;
  const auto [h1, t1] = root_factorial_series(b.ratio * std::abs(label.z), cutoff);
  const auto [h2, t2] = root_factorial_series(b.ratio * std::abs(label.w), cutoff);
  // S1 S2 - S1c S2c without the cancellation.
  return n * b.amplitude * (t1 * (h2 + t2) + h1 * t2);
}

WaveField coherent_state(Family family, const ModelParams& params, const CoherentLabel& label, int cutoff,
                         double tail_tol) {
  if (cutoff < 1) throw std::invalid_argument("coherent_state: cutoff must be >= 1");
  const double tail = coherent_tail(params, family, label, cutoff);
  if (tail > tail_tol) {
    throw TruncationError(fmt("bicoherent series is truncation-dominated: tail bound %.3g exceeds tolerance %.3g",
                              tail, tail_tol),
                          tail);
  }
  const SequenceSpec seq = SequenceSpec::sqrt_n();
  CoeffTable c = coherent_coefficients(seq, seq, label, cutoff);
  if (family == Family::phi) return {WaveField::Kind::superposition, params.phi_scale(), std::move(c)};
  c *= params.n2() * std::sqrt(kPi);
  return {WaveField::Kind::superposition, params.psi_scale(), std::move(c)};
}

double eigen_residual(Ladder which, const ModelParams& params, const CoherentLabel& label, int cutoff,
                      int rule_order) {
  Family family;
  switch (which) {
    case Ladder::A1:
    case Ladder::A2: family = Family::phi; break;
    case Ladder::B1dag:
    case Ladder::B2dag: family = Family::psi; break;
    default: throw std::invalid_argument("eigen_residual: operator must be A1, A2, B1dag or B2dag");
  }
  const cplx lambda = ladder_mode(which) == 1 ? label.z : label.w;
  const WaveField state = coherent_state(family, params, label, cutoff, kInf);
  const WaveField diff = apply_ladder_analytic(which, params, state).plus(state, -lambda);
  if (diff.is_zero()) return 0.0;
  const QuadratureRule rule = make_rule(RuleKind::gauss_hermite, rule_order > 0 ? rule_order : default_rule_order(cutoff + 1));
  const double num = std::max(0.0, inner(diff, diff, rule).real());
  const double den = inner(state, state, rule).real();
  return std::sqrt(num / den);
}

void RadialMeasure::radial_rule(int order, std::vector<double>& r, std::vector<double>& v) const {
  if (!density) throw std::invalid_argument("RadialMeasure: missing density");
  r.clear();
  v.clear();
  if (strategy == Strategy::laguerre_squared) {
    const QuadratureRule rule = make_rule(RuleKind::gauss_laguerre, order);
    for (int i = 0; i < rule.order(); ++i) {
      const double t = rule.nodes()[i];
      const double radius = std::sqrt(t);
      if (radius >= rho) continue;
      // dr = dt / (2 sqrt t); e^t undoes the Laguerre weight.
      r.push_back(radius);
      v.push_back(std::exp(t + std::log(rule.weights()[i])) * density(radius) / (2.0 * radius));
    }
    return;
  }
  if (order < 2) throw std::invalid_argument("RadialMeasure: log_trapezoid needs at least 2 points");
  const double u_lo = -30.0;
  const double u_hi = std::isinf(rho) ? 5.0 : std::log(rho);
  const double h = (u_hi - u_lo) / (order - 1);
  for (int i = 0; i < order; ++i) {
    const double radius = std::exp(u_lo + i * h);
    const double end = (i == 0 || i == order - 1) ? 0.5 : 1.0;
    r.push_back(radius);
    v.push_back(end * h * radius * density(radius));
  }
}

double RadialMeasure::moment(int k, int order) const {
  std::vector<double> r, v;
  radial_rule(order, r, v);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) acc += v[i] * std::pow(r[i], 2 * k);
  return acc;
}

RadialMeasure moment_measure(const SequenceSpec& seq) {
  if (seq.name != "sqrt_n") {
    throw UnsupportedError("moment_measure: no built-in density for sequence '" + seq.name +
                           "'; supply the density explicitly");
  }
  RadialMeasure m;
  m.name = "sqrt_n";
  m.density = [](double r) { return r * std::exp(-r * r) / kPi; };
  m.strategy = RadialMeasure::Strategy::laguerre_squared;
  return m;
}

RadialMeasure moment_measure(const SequenceSpec& seq, std::function<double(double)> density,
                             RadialMeasure::Strategy strategy, double rho) {
  if (!density) throw std::invalid_argument("moment_measure: missing density");
  RadialMeasure m;
  m.name = seq.name;
  m.density = std::move(density);
  m.strategy = strategy;
  m.rho = rho;
  return m;
}

double moment_defect(const RadialMeasure& measure, const SequenceSpec& seq, int k_max, int order) {
  double worst = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    const double target = std::exp(2.0 * log_alpha_factorial(seq, k)) / (2.0 * kPi);
    worst = std::max(worst, std::abs(measure.moment(k, order) - target) / target);
  }
  return worst;
}

Eigen::MatrixXcd resolution_kernel(const RadialMeasure& measure, const SequenceSpec& seq, int radial_order,
                                   int angular_order, int cutoff) {
  std::vector<double> r, v;
  measure.radial_rule(radial_order, r, v);
  const QuadratureRule angle = make_rule(RuleKind::uniform_angle, angular_order);

  // Angular sums over e^{i d a} for d = a - b in [-cutoff, cutoff].
  std::vector<cplx> ang(2 * cutoff + 1);
  for (int d = -cutoff; d <= cutoff; ++d) {
    cplx acc = 0.0;
    for (int j = 0; j < angle.order(); ++j) acc += angle.weights()[j] * std::polar(1.0, d * angle.nodes()[j]);
    ang[d + cutoff] = acc;
  }
  std::vector<double> log_fact(cutoff + 1);
  for (int a = 0; a <= cutoff; ++a) log_fact[a] = log_alpha_factorial(seq, a);
  // Radial sums of r^s / ... for s = a + b, with the factorials folded in per entry.
  Eigen::MatrixXcd k(cutoff + 1, cutoff + 1);
  for (int a = 0; a <= cutoff; ++a) {
    for (int b = 0; b <= cutoff; ++b) {
      const double shift = log_fact[a] + log_fact[b];
      double radial = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) radial += v[i] * std::exp((a + b) * std::log(r[i]) - shift);
      k(a, b) = radial * ang[a - b + cutoff];
    }
  }
  return k;
}

namespace {

void require_span(const WaveField& f, int cutoff, const char* which) {
  if (f.kind() != WaveField::Kind::oscillator) {
    throw DomainError(std::string("resolution_residual: ") + which + " must lie in the oscillator span");
  }
  if (2 * f.max_index() > cutoff) {
    throw DomainError(std::string("resolution_residual: ") + which + " uses index " + std::to_string(f.max_index()) +
                      " above cutoff / 2 = " + std::to_string(cutoff / 2));
  }
}

cplx bilinear(const Eigen::MatrixXcd& left, const Eigen::MatrixXcd& kernel, const Eigen::MatrixXcd& right) {
  return left.cwiseProduct(kernel * right * kernel.transpose()).sum();
}

}  // namespace

ResolutionResult resolution_residual(const WaveField& f, const WaveField& g, const ModelParams& params,
                                     int radial_order, int angular_order, int cutoff) {
  require_span(f, cutoff, "f");
  require_span(g, cutoff, "g");
  const QuadratureRule rule = make_rule(RuleKind::gauss_hermite, default_rule_order(cutoff));
  const SequenceSpec seq = SequenceSpec::sqrt_n();
  const Eigen::MatrixXcd k = resolution_kernel(moment_measure(seq), seq, radial_order, angular_order, cutoff);

  const CoeffTable f_psi = project_onto(f, params, WaveField::Kind::psi, cutoff, rule);
  const CoeffTable f_phi = project_onto(f, params, WaveField::Kind::phi, cutoff, rule);
  const CoeffTable phi_g = project_onto(g, params, WaveField::Kind::phi, cutoff, rule).conjugate();
  const CoeffTable psi_g = project_onto(g, params, WaveField::Kind::psi, cutoff, rule).conjugate();

  ResolutionResult out;
  out.integral = bilinear(f_psi, k, phi_g);
  out.swapped_integral = bilinear(f_phi, k, psi_g);
  out.target = inner(f, g, rule);
  out.defect = out.integral - out.target;
  out.swapped_defect = out.swapped_integral - out.target;
  return out;
}

ResolutionResult resolution_residual_direct(const WaveField& f, const WaveField& g, const ModelParams& params,
                                            int radial_order, int angular_order, int cutoff) {
  require_span(f, cutoff, "f");
  require_span(g, cutoff, "g");
  const QuadratureRule rule = make_rule(RuleKind::gauss_hermite, default_rule_order(cutoff));
  const SequenceSpec seq = SequenceSpec::sqrt_n();
  std::vector<double> r, v;
  moment_measure(seq).radial_rule(radial_order, r, v);
  const QuadratureRule angle = make_rule(RuleKind::uniform_angle, angular_order);

  ResolutionResult out;
  for (std::size_t i1 = 0; i1 < r.size(); ++i1) {
    for (int j1 = 0; j1 < angle.order(); ++j1) {
      const cplx z = std::polar(r[i1], angle.nodes()[j1]);
      for (std::size_t i2 = 0; i2 < r.size(); ++i2) {
        for (int j2 = 0; j2 < angle.order(); ++j2) {
          const CoherentLabel label{z, std::polar(r[i2], angle.nodes()[j2])};
          const double weight = v[i1] * angle.weights()[j1] * v[i2] * angle.weights()[j2];
          const double n = normalization(seq, seq, label, cutoff).value;
          const WaveField phi = coherent_state(Family::phi, params, label, cutoff, kInf);
          const WaveField psi = coherent_state(Family::psi, params, label, cutoff, kInf);
          const double scale = weight / (n * n);
          out.integral += scale * inner(f, psi, rule) * inner(phi, g, rule);
          out.swapped_integral += scale * inner(f, phi, rule) * inner(psi, g, rule);
        }
      }
    }
  }
  out.target = inner(f, g, rule);
  out.defect = out.integral - out.target;
  out.swapped_defect = out.swapped_integral - out.target;
  return out;
}

}  // namespace swanson2d
