#include "swanson2d/report.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "swanson2d/bicoherent.hpp"
#include "swanson2d/fockmatrix.hpp"
#include "swanson2d/innerprod.hpp"
#include "swanson2d/metricmap.hpp"

namespace swanson2d {

using nlohmann::json;

std::vector<std::pair<std::string, RunConfig::Slot>> RunConfig::slots() {
  return {{"nu_re", &nu_re},
          {"nu_im", &nu_im},
          {"theta", &theta},
          {"n_max", &n_max},
          {"cutoff", &cutoff},
          {"hermite_order", &hermite_order},
          {"laguerre_order", &laguerre_order},
          {"angular_order", &angular_order},
          {"grid_half_width", &grid_half_width},
          {"grid_spacing", &grid_spacing},
          {"stencil_order", &stencil_order},
          {"decay_tolerance", &decay_tolerance},
          {"fock_n_max", &fock_n_max},
          {"eigen_index_max", &eigen_index_max},
          {"norm_index_max", &norm_index_max},
          {"norm_rule_order", &norm_rule_order},
          {"resolution_index_max", &resolution_index_max},
          {"quasi_cutoff", &quasi_cutoff},
          {"z_re", &z_re},
          {"z_im", &z_im},
          {"w_re", &w_re},
          {"w_im", &w_im},
          {"tail_tolerance", &tail_tolerance},
          {"tol_algebra", &tol_algebra},
          {"tol_bch", &tol_bch},
          {"tol_eigen", &tol_eigen},
          {"tol_biorth", &tol_biorth},
          {"tol_norms", &tol_norms},
          {"tol_coherent", &tol_coherent},
          {"tol_resolution", &tol_resolution},
          {"tol_metric", &tol_metric},
          {"format", &format},
          {"out", &out},
          {"strict", &strict}};
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("<file>", "config must be a flat JSON object");
  RunConfig cfg;
  auto slots = cfg.slots();
  for (const auto& [key, value] : doc.items()) {
    auto it = std::find_if(slots.begin(), slots.end(), [&](const auto& s) { return s.first == key; });
    if (it == slots.end()) throw ConfigError(key, "unknown config key '" + key + "'");
    std::visit(
        [&](auto* ptr) {
          using T = std::remove_pointer_t<decltype(ptr)>;
          bool ok = false;
          if constexpr (std::is_same_v<T, double>) {
            ok = value.is_number();
          } else if constexpr (std::is_same_v<T, int>) {
            ok = value.is_number_integer();
          } else if constexpr (std::is_same_v<T, bool>) {
            ok = value.is_boolean();
          } else {
            ok = value.is_string();
          }
          if (!ok) throw ConfigError(key, "config key '" + key + "' has the wrong type");
          *ptr = value.get<T>();
        },
        it->second);
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

GridSpec RunConfig::grid() const {
  GridSpec g;
  g.half_width = grid_half_width;
  g.spacing = grid_spacing;
  g.stencil_order = stencil_order;
  g.decay_tolerance = decay_tolerance;
  return g;
}

namespace {

std::string num(double v) { return format_number(v); }

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what.rfind(field, 0) == 0 ? what : field + ": " + what);
}

}  // namespace

void RunConfig::validate() const {
  require(std::isfinite(nu_re) && std::abs(nu_re) < kPi / 4.0, "nu_re",
          "nu_re = " + num(nu_re) + " must lie in (-pi/4, pi/4) = (-" + num(kPi / 4.0) + ", " + num(kPi / 4.0) + ")");
  require(std::isfinite(nu_im), "nu_im", "must be finite");
  require(std::isfinite(theta), "theta", "must be finite");
  require(n_max >= 1 && n_max <= 60, "n_max", "must lie in [1, 60]");
  require(cutoff >= 1 && cutoff <= 120, "cutoff", "must lie in [1, 120]");
  require(hermite_order >= 1, "hermite_order", "must be >= 1");
  require(laguerre_order >= 1, "laguerre_order", "must be >= 1");
  require(angular_order >= 1, "angular_order", "must be >= 1");
  require(norm_rule_order >= 1, "norm_rule_order", "must be >= 1");
  require(grid_half_width > 0.0, "grid_half_width", "must be positive");
  require(grid_spacing > 0.0, "grid_spacing", "must be positive");
  try {
    grid().validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("grid_spacing", std::string("grid_spacing: ") + e.what());
  }
  require(fock_n_max >= 2 && fock_n_max <= 60, "fock_n_max", "must lie in [2, 60]");
  require(eigen_index_max >= 0, "eigen_index_max", "must be >= 0");
  require(norm_index_max >= 0, "norm_index_max", "must be >= 0");
  require(resolution_index_max >= 0 && 2 * resolution_index_max <= cutoff, "resolution_index_max",
          "must lie in [0, cutoff / 2]");
  require(quasi_cutoff >= 0, "quasi_cutoff", "must be >= 0");
  for (auto [name, v] : {std::pair{"z_re", z_re}, {"z_im", z_im}, {"w_re", w_re}, {"w_im", w_im}}) {
    require(std::isfinite(v), name, "must be finite");
  }
  for (auto [name, v] : {std::pair{"tail_tolerance", tail_tolerance},
                         {"tol_algebra", tol_algebra},
                         {"tol_bch", tol_bch},
                         {"tol_eigen", tol_eigen},
                         {"tol_biorth", tol_biorth},
                         {"tol_norms", tol_norms},
                         {"tol_coherent", tol_coherent},
                         {"tol_resolution", tol_resolution},
                         {"tol_metric", tol_metric}}) {
    require(v > 0.0, name, "must be positive");
  }
  require(format == "csv" || format == "json", "format", "must be csv or json");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ResultRow make_row(std::string suite, std::string check, double value, Relation relation, double tolerance) {
  ResultRow r{std::move(suite), std::move(check), value, relation, tolerance, "fail"};
  if (!std::isnan(value)) {
    const bool ok = relation == Relation::at_most ? value <= tolerance : value >= tolerance;
    if (ok) r.status = "pass";
  }
  return r;
}

ResultRow info_row(std::string suite, std::string check, double value) {
  return {std::move(suite), std::move(check), value, Relation::none, 0.0, "info"};
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------- algebra

std::vector<ResultRow> suite_algebra(const RunConfig& cfg) {
  std::vector<ResultRow> rows;
  const ModelParams params = cfg.params();
  double worst = 0.0;
  for (int n = 2; n <= cfg.fock_n_max; ++n) worst = std::max(worst, commutator_defect(n, true));
  rows.push_back(make_row("algebra", "commutator_defect_max", worst, Relation::at_most, cfg.tol_algebra));

  const TruncatedOperator h = hamiltonian_matrix(params, cfg.n_max);
  double diag = 0.0, off = 0.0;
  for (int a = 0; a <= cfg.n_max; ++a) {
    for (int b = 0; b <= cfg.n_max; ++b) {
      const Eigen::Index i = static_cast<Eigen::Index>(flat_index({a, b}, cfg.n_max));
      diag = std::max(diag, std::abs(h.matrix()(i, i) - static_cast<double>(a + b + 1) * params.energy_quantum()));
    }
  }
  off = (h.matrix() - DenseMatrix(h.matrix().diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  rows.push_back(make_row("algebra", "hamiltonian_offdiag_max", off, Relation::at_most, 0.0));
  rows.push_back(make_row("algebra", "hamiltonian_eigenvalue_defect", diag, Relation::at_most, 1e-14 * (cfg.n_max * 2 + 1)));

  const cplx z = cfg.z(), w = cfg.w();
  const int n = cfg.fock_n_max;
  rows.push_back(make_row("algebra", "bch_defect", bch_defect(z, w, n), Relation::at_most, cfg.tol_bch));
  const Displacement d = displacement_matrix(z, w, n);
  const Displacement d_inv = displacement_matrix(-z, -w, n);
  rows.push_back(make_row("algebra", "displacement_inverse_defect", interior_identity_defect(d.u, d_inv.u, n / 2),
                          Relation::at_most, 1e-10));
  const DenseMatrix adj_gap = d.v.sub_block(n / 2) - d_inv.u.adjoint().sub_block(n / 2);
  rows.push_back(make_row("algebra", "v_equals_inverse_adjoint_defect", adj_gap.cwiseAbs().maxCoeff(), Relation::at_most,
                          cfg.tol_bch));
  const Eigen::VectorXcd series = coherent_coefficients(z, w, n);
  const Eigen::VectorXcd column = d.u.apply_to_basis({0, 0});
  double col = 0.0;
  for (int a = 0; a <= n / 2; ++a)
    for (int b = 0; b <= n / 2; ++b) {
      const auto i = static_cast<Eigen::Index>(flat_index({a, b}, n));
      col = std::max(col, std::abs(series(i) - column(i)));
    }
  rows.push_back(make_row("algebra", "vacuum_column_defect", col, Relation::at_most, cfg.tol_bch));
  rows.push_back(info_row("algebra", "displacement_truncation_warning", d.truncation_warning ? 1.0 : 0.0));
  return rows;
}

// ---------------------------------------------------------------- eigen

std::vector<ResultRow> suite_eigen(const RunConfig& cfg) {
  std::vector<ResultRow> rows;
  std::vector<double> thetas{0.0, 0.5, 1.0};
  if (std::find(thetas.begin(), thetas.end(), cfg.theta) == thetas.end()) thetas.push_back(cfg.theta);
  const GridSpec grid = cfg.grid();
  double worst = 0.0, spread = 0.0;
  bool domain_failure = false;
  for (int a = 0; a <= cfg.eigen_index_max; ++a) {
    for (int b = 0; b <= cfg.eigen_index_max; ++b) {
      std::vector<GridField> images;
      for (double th : thetas) {
        const ModelParams p(cplx{cfg.nu_re, cfg.nu_im}, th);
        const WaveField phi = WaveField::phi(p, {a, b});
        try {
          images.push_back(apply_hamiltonian_fd(p, phi, grid));
        } catch (const DomainError& e) {
          if (!domain_failure) std::cerr << "eigen: " << e.what() << "\n";
          domain_failure = true;
          continue;
        }
        const GridField base = sample(phi, grid);
        const cplx energy = static_cast<double>(a + b + 1) * p.energy_quantum();
        worst = std::max(worst, grid_distance(images.back(), base, energy) / grid_norm(base));
      }
      for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
          spread = std::max(spread, grid_distance(images[i], images[j]) / grid_norm(images[i]));
    }
  }
  if (domain_failure) worst = kNaN;
  rows.push_back(make_row("eigen", "fd_eigen_residual_max", worst, Relation::at_most, cfg.tol_eigen));
  rows.push_back(make_row("eigen", "theta_independence_max", domain_failure ? kNaN : spread, Relation::at_most,
                          cfg.tol_eigen));

  // Closed-form ladder action against finite differences.
  const ModelParams p = cfg.params();
  double ladder = 0.0;
  for (int a = 0; a <= cfg.eigen_index_max; ++a) {
    for (int b = 0; b <= cfg.eigen_index_max; ++b) {
      const WaveField phi = WaveField::phi(p, {a, b});
      for (Ladder op : {Ladder::A1, Ladder::A2, Ladder::B1, Ladder::B2}) {
        const GridField fd = apply_ladder_fd(op, p, phi, grid);
        const GridField exact = sample(apply_ladder_analytic(op, p, phi), grid);
        ladder = std::max(ladder, grid_distance(fd, exact) / std::max(grid_norm(sample(phi, grid)), 1e-300));
      }
    }
  }
  rows.push_back(make_row("eigen", "ladder_fd_vs_closed_form_max", ladder, Relation::at_most, cfg.tol_eigen));
  return rows;
}

// ---------------------------------------------------------------- biorth

std::vector<ResultRow> suite_biorth(const RunConfig& cfg) {
  const QuadratureRule rule = make_rule(RuleKind::gauss_hermite, cfg.hermite_order);
  const GramReport g = gram_biorthogonality(cfg.params(), cfg.n_max, rule);
  std::vector<ResultRow> rows;
  rows.push_back(make_row("biorth", "gram_offdiag_max", g.max_offdiag, Relation::at_most, cfg.tol_biorth));
  rows.push_back(make_row("biorth", "gram_diag_defect_max", g.max_diag_defect, Relation::at_most, cfg.tol_biorth));
  rows.push_back(info_row("biorth", "rule_under_resolved", g.under_resolved ? 1.0 : 0.0));
  return rows;
}

// ---------------------------------------------------------------- norms

std::vector<ResultRow> suite_norms(const RunConfig& cfg) {
  const ModelParams p = cfg.params();
  const QuadratureRule rule = make_rule(RuleKind::gauss_hermite, cfg.norm_rule_order);
  const int m = cfg.norm_index_max;
  double phi_err = 0.0, psi_err = 0.0, prud_err = 0.0, sym = 0.0;
  for (int a = 0; a <= m; ++a) {
    for (int b = 0; b <= m; ++b) {
      const WaveField phi = WaveField::phi(p, {a, b});
      const WaveField psi = WaveField::psi(p, {a, b});
      const double c = norm_closed_form(p, {a, b});
      const double cp = norm_closed_form_psi(p, {a, b});
      phi_err = std::max(phi_err, std::abs(inner(phi, phi, rule).real() - c) / c);
      psi_err = std::max(psi_err, std::abs(inner(psi, psi, rule).real() - cp) / cp);
      if (p.real_nu()) prud_err = std::max(prud_err, std::abs(norm_via_prudnikov(p, {a, b}) - c) / c);
      sym = std::max(sym, std::abs(c - norm_closed_form(p, {b, a})));
    }
  }
  std::vector<ResultRow> rows;
  rows.push_back(make_row("norms", "phi_quadrature_vs_closed_form", phi_err, Relation::at_most, cfg.tol_norms));
  rows.push_back(make_row("norms", "psi_quadrature_vs_closed_form", psi_err, Relation::at_most, cfg.tol_norms));
  if (p.real_nu()) {
    rows.push_back(make_row("norms", "prudnikov_vs_closed_form", prud_err, Relation::at_most, cfg.tol_norms));
  }
  rows.push_back(make_row("norms", "index_symmetry", sym, Relation::at_most, 0.0));

  const double r = growth_ratio(p.nu_re());
  double worst_ratio = 0.0;
  bool increasing = true;
  for (int n = 0; n < std::max(15, m); ++n) {
    const double lo = norm_closed_form(p, {n, 0}), hi = norm_closed_form(p, {n + 1, 0});
    worst_ratio = std::max(worst_ratio, std::sqrt(hi / lo));
    if (!(hi > lo)) increasing = false;
  }
  rows.push_back(make_row("norms", "consecutive_ratio_max", worst_ratio, Relation::at_most, r * r));
  if (p.nu_re() != 0.0) rows.push_back(make_row("norms", "norm_strictly_increasing", increasing ? 1.0 : 0.0, Relation::at_least, 1.0));
  rows.push_back(info_row("norms", "divergence_ratio_10", std::sqrt(norm_closed_form(p, {10, 0}) / norm_closed_form(p, {0, 0}))));
  if (p.real_nu()) {
    double slack = kNaN;
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= m; ++b) {
        const GrowthBound g = norm_growth_bound(p, {a, b});
        const double s = g.bound - std::sqrt(norm_closed_form(p, {a, b}));
        slack = std::isnan(slack) ? s : std::min(slack, s);
      }
    rows.push_back(make_row("norms", "growth_bound_slack_min", slack, Relation::at_least, 0.0));
    rows.push_back(info_row("norms", "r_nu", r));
  }
  return rows;
}

// ---------------------------------------------------------------- coherent

std::vector<ResultRow> coherent_core(const RunConfig& cfg, const std::string& suite) {
  const ModelParams p = cfg.params();
  const CoherentLabel label{cfg.z(), cfg.w()};
  std::vector<ResultRow> rows;
  const double tail = std::max(coherent_tail(p, Family::phi, label, cfg.cutoff),
                               coherent_tail(p, Family::psi, label, cfg.cutoff));
  const bool truncated = tail > cfg.tail_tolerance;
  auto add = [&](const std::string& check, double value, double tol) {
    ResultRow r = make_row(suite, check, value, Relation::at_most, tol);
    if (truncated && r.status == "fail") r.status = "truncated";
    rows.push_back(r);
  };
  for (Ladder op : {Ladder::A1, Ladder::A2, Ladder::B1dag, Ladder::B2dag}) {
    add("eigen_residual_" + to_string(op), eigen_residual(op, p, label, cfg.cutoff), cfg.tol_coherent);
  }
  const WaveField phi = coherent_state(Family::phi, p, label, cfg.cutoff, std::numeric_limits<double>::infinity());
  const WaveField psi = coherent_state(Family::psi, p, label, cfg.cutoff, std::numeric_limits<double>::infinity());
  const QuadratureRule rule = make_rule(RuleKind::gauss_hermite, default_rule_order(cfg.cutoff));
  add("normalization_defect", std::abs(inner(phi, psi, rule) - 1.0), 1e-8);
  ResultRow t = make_row(suite, "tail_bound", tail, Relation::at_most, cfg.tail_tolerance);
  if (truncated) t.status = "truncated";
  rows.push_back(t);
  return rows;
}

std::vector<ResultRow> suite_coherent(const RunConfig& cfg) {
  std::vector<ResultRow> rows = coherent_core(cfg, "coherent");
  const SequenceSpec seq = SequenceSpec::sqrt_n();
  rows.push_back(make_row("coherent", "moment_defect_k15", moment_defect(moment_measure(seq), seq, 15, cfg.laguerre_order),
                          Relation::at_most, 1e-10));
  const Displacement d = displacement_matrix(cfg.z(), cfg.w(), cfg.fock_n_max);
  const CoeffTable c = coherent_coefficients(seq, seq, {cfg.z(), cfg.w()}, cfg.fock_n_max);
  double gap = 0.0;
  for (int a = 0; a <= cfg.fock_n_max / 2; ++a)
    for (int b = 0; b <= cfg.fock_n_max / 2; ++b) gap = std::max(gap, std::abs(d.u.entry({a, b}, {0, 0}) - c(a, b)));
  rows.push_back(make_row("coherent", "series_vs_displacement_column", gap, Relation::at_most, 1e-8));
  return rows;
}

// ---------------------------------------------------------------- resolution

std::vector<ResultRow> suite_resolution(const RunConfig& cfg) {
  const ModelParams p = cfg.params();
  const int m = cfg.resolution_index_max;
  const QuadratureRule rule = make_rule(RuleKind::gauss_hermite, default_rule_order(std::max(cfg.cutoff, cfg.quasi_cutoff)));
  double res = 0.0, res_sw = 0.0, qb = 0.0, qb_sw = 0.0, order_gap = 0.0;
  for (int a1 = 0; a1 <= m; ++a1)
    for (int a2 = 0; a2 <= m; ++a2)
      for (int b1 = 0; b1 <= m; ++b1)
        for (int b2 = 0; b2 <= m; ++b2) {
          const WaveField f = WaveField::oscillator({a1, a2});
          const WaveField g = WaveField::oscillator({b1, b2});
          const ResolutionResult r = resolution_residual(f, g, p, cfg.laguerre_order, cfg.angular_order, cfg.cutoff);
          res = std::max(res, std::abs(r.defect));
          res_sw = std::max(res_sw, std::abs(r.swapped_defect));
          order_gap = std::max(order_gap, std::abs(r.integral - r.swapped_integral));
          const QuasiBasisResult q = quasi_basis_residual(f, g, p, cfg.quasi_cutoff, rule);
          qb = std::max(qb, std::abs(q.defect));
          qb_sw = std::max(qb_sw, std::abs(q.swapped_defect));
        }
  return {make_row("resolution", "bicoherent_resolution_defect", res, Relation::at_most, cfg.tol_resolution),
          make_row("resolution", "bicoherent_resolution_swapped_defect", res_sw, Relation::at_most, cfg.tol_resolution),
          make_row("resolution", "ordering_agreement", order_gap, Relation::at_most, 1e-8),
          make_row("resolution", "quasi_basis_defect", qb, Relation::at_most, cfg.tol_resolution),
          make_row("resolution", "quasi_basis_swapped_defect", qb_sw, Relation::at_most, cfg.tol_resolution)};
}

// ---------------------------------------------------------------- metric

std::vector<ResultRow> suite_metric(const RunConfig& cfg) {
  const ModelParams p = cfg.params();
  std::vector<ResultRow> rows;
  const MetricReport m = metric_constant(p, 5);
  rows.push_back(make_row("metric", "theta_constant_spread", m.spread, Relation::at_most, 1e-10));
  rows.push_back(info_row("metric", "theta_constant_re", m.constant.real()));
  rows.push_back(info_row("metric", "theta_constant_im", m.constant.imag()));
  if (p.real_nu()) rows.push_back(make_row("metric", "similarity_defect", similarity_check(p, 4), Relation::at_most, cfg.tol_metric));
  rows.push_back(make_row("metric", "intertwining_defect", intertwining_defect(p, 4), Relation::at_most, cfg.tol_metric));
  rows.push_back(make_row("metric", "spectrum_defect", spectrum_defect(p, cfg.n_max), Relation::at_most, 1e-12));
  const std::vector<double> growth = dilation_growth(p, 15, make_rule(RuleKind::gauss_hermite, cfg.hermite_order));
  const double ratio = growth.back() / growth.front();
  if (p.nu_re() != 0.0) {
    bool mono = true;
    for (std::size_t i = 1; i < growth.size(); ++i) mono = mono && growth[i] > growth[i - 1];
    rows.push_back(make_row("metric", "dilation_growth_ratio_15", ratio, Relation::at_least, 10.0));
    rows.push_back(make_row("metric", "dilation_growth_monotone", mono ? 1.0 : 0.0, Relation::at_least, 1.0));
  } else {
    rows.push_back(info_row("metric", "dilation_growth_ratio_15", ratio));
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "algebra") return suite_algebra(cfg);
  if (name == "eigen") return suite_eigen(cfg);
  if (name == "biorth") return suite_biorth(cfg);
  if (name == "norms") return suite_norms(cfg);
  if (name == "coherent") return suite_coherent(cfg);
  if (name == "resolution") return suite_resolution(cfg);
  if (name == "metric") return suite_metric(cfg);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<ResultRow> coherent_rows(const RunConfig& cfg) {
  std::vector<ResultRow> rows = coherent_core(cfg, "coherent");
  if (cfg.z() == cplx{0.0, 0.0} && cfg.w() == cplx{0.0, 0.0}) {
    // The vacuum is exact: tighten every residual.
    for (auto& r : rows)
      if (r.relation == Relation::at_most && r.check != "tail_bound") r = make_row(r.suite, r.check, r.value, r.relation, 1e-12);
  }
  // Resolution defect grid over cutoff x radial order.
  const ModelParams p = cfg.params();
  for (int c : {10, 20, 40}) {
    for (int order : {15, 30, 60}) {
      const ResolutionResult r =
          resolution_residual(WaveField::oscillator({0, 0}), WaveField::oscillator({0, 0}), p, order, cfg.angular_order, c);
      const std::string tag = "c" + std::to_string(c) + "_r" + std::to_string(order);
      rows.push_back(info_row("resolution_grid", "defect_" + tag, std::abs(r.defect)));
      rows.push_back(info_row("resolution_grid", "swapped_defect_" + tag, std::abs(r.swapped_defect)));
    }
  }
  return rows;
}

Table make_table(const std::string& what, const RunConfig& cfg) {
  const ModelParams p = cfg.params();
  Table t;
  if (what == "spectrum") {
    // Levels with total degree n1 + n2 <= n_max, in basis order.
    t.columns = {"n1", "n2", "re_E", "im_E"};
    for (int a = 0; a <= cfg.n_max; ++a)
      for (int b = 0; a + b <= cfg.n_max; ++b) {
        const cplx e = static_cast<double>(a + b + 1) * p.energy_quantum();
        t.rows.push_back({double(a), double(b), e.real(), e.imag()});
      }
  } else if (what == "norms") {
    t.columns = {"n1", "n2", "closed_form", "quadrature", "rel_error", "bound_sq"};
    const QuadratureRule rule = make_rule(RuleKind::gauss_hermite, cfg.norm_rule_order);
    for (int a = 0; a <= cfg.norm_index_max; ++a)
      for (int b = 0; b <= cfg.norm_index_max; ++b) {
        const WaveField phi = WaveField::phi(p, {a, b});
        const double c = norm_closed_form(p, {a, b});
        const double q = inner(phi, phi, rule).real();
        double bound = kNaN;
        if (p.real_nu()) {
          const double bnd = norm_growth_bound(p, {a, b}).bound;
          bound = bnd * bnd;
        }
        t.rows.push_back({double(a), double(b), c, q, std::abs(q - c) / c, bound});
      }
  } else if (what == "gram") {
    t.columns = {"n1", "n2", "m1", "m2", "re", "im", "defect"};
    const Eigen::MatrixXcd g = gram_matrix(p, cfg.n_max, make_rule(RuleKind::gauss_hermite, cfg.hermite_order));
    const int m = cfg.n_max;
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= m; ++b)
        for (int c = 0; c <= m; ++c)
          for (int d = 0; d <= m; ++d) {
            const cplx v = g(static_cast<Eigen::Index>(flat_index({a, b}, m)), static_cast<Eigen::Index>(flat_index({c, d}, m)));
            const double target = (a == c && b == d) ? 1.0 : 0.0;
            t.rows.push_back({double(a), double(b), double(c), double(d), v.real(), v.imag(), std::abs(v - target)});
          }
  } else if (what == "growth") {
    t.columns = {"n", "norm_ratio", "r_nu_sq", "dilation_growth"};
    const double r = growth_ratio(p.nu_re());
    const std::vector<double> growth = dilation_growth(p, 15, make_rule(RuleKind::gauss_hermite, cfg.hermite_order));
    for (int n = 0; n < 15; ++n) {
      const double ratio = std::sqrt(norm_closed_form(p, {n + 1, 0}) / norm_closed_form(p, {n, 0}));
      t.rows.push_back({double(n), ratio, r * r, growth[n + 1]});
    }
  } else {
    throw ConfigError("--what", "unknown table '" + what + "' (expected spectrum, norms, gram or growth)");
  }
  return t;
}

int exit_code(const std::vector<ResultRow>& rows, bool strict) {
  int code = 0;
  for (const auto& r : rows) {
    if (r.status == "fail") return 1;
    if (r.status == "truncated" && strict) code = 1;
  }
  return code;
}

namespace {

const char* relation_text(Relation r) {
  switch (r) {
    case Relation::at_most: return "<=";
    case Relation::at_least: return ">=";
    case Relation::none: return "";
  }
  return "";
}

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

std::string json_string(const std::string& s) { return json(s).dump(); }

std::string config_json(RunConfig cfg) {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, slot] : cfg.slots()) {
    if (!first) out += ", ";
    first = false;
    out += json_string(key) + ": ";
    std::visit(
        [&](auto* ptr) {
          using T = std::remove_pointer_t<decltype(ptr)>;
          if constexpr (std::is_same_v<T, double>) {
            out += json_number(*ptr);
          } else if constexpr (std::is_same_v<T, int>) {
            out += std::to_string(*ptr);
          } else if constexpr (std::is_same_v<T, bool>) {
            out += *ptr ? "true" : "false";
          } else {
            out += json_string(*ptr);
          }
        },
        slot);
  }
  return out + "}";
}

std::string versions_json() {
  return std::string("{\"swanson2d\": \"") + kLibraryVersion + "\", \"report_schema\": " + std::to_string(kReportSchema) +
         ", \"probe_set\": " + std::to_string(kProbeSetVersion) + ", \"eigen\": \"" + std::to_string(EIGEN_WORLD_VERSION) +
         "." + std::to_string(EIGEN_MAJOR_VERSION) + "." + std::to_string(EIGEN_MINOR_VERSION) + "\"}";
}

}  // namespace

std::string render_results(const std::vector<ResultRow>& rows, RunConfig cfg, const std::string& format) {
  std::string out;
  if (format == "csv") {
    out = "suite,check,value,relation,tolerance,status\n";
    for (const auto& r : rows) {
      out += r.suite + "," + r.check + "," + format_number(r.value) + "," + relation_text(r.relation) + "," +
             (r.relation == Relation::none ? std::string() : format_number(r.tolerance)) + "," + r.status + "\n";
    }
    return out;
  }
  out = "{\n  \"config\": " + config_json(cfg) + ",\n  \"results\": [";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"suite\": " + json_string(r.suite) + ", \"check\": " + json_string(r.check) +
           ", \"value\": " + json_number(r.value) + ", \"relation\": " + json_string(relation_text(r.relation)) +
           ", \"tolerance\": " + (r.relation == Relation::none ? std::string("null") : json_number(r.tolerance)) +
           ", \"status\": " + json_string(r.status) + "}";
  }
  out += rows.empty() ? "],\n" : "\n  ],\n";
  out += "  \"versions\": " + versions_json() + "\n}\n";
  return out;
}

std::string render_table(const Table& table, RunConfig cfg, const std::string& format) {
  std::string out;
  if (format == "csv") {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
      out += "\n";
    }
    return out;
  }
  out = "{\n  \"config\": " + config_json(cfg) + ",\n  \"columns\": [";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? ", " : "") + json_string(table.columns[i]);
  out += "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += r == 0 ? "\n    [" : ",\n    [";
    for (std::size_t i = 0; i < table.rows[r].size(); ++i) out += (i ? ", " : "") + json_number(table.rows[r][i]);
    out += "]";
  }
  out += table.rows.empty() ? "],\n" : "\n  ],\n";
  out += "  \"versions\": " + versions_json() + "\n}\n";
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("write to '" + tmp.string() + "' failed");
    }
  }
  fs::rename(tmp, target);
}

}  // namespace swanson2d
