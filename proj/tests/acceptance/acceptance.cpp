// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [path/to/swanson2d_cli]

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "swanson2d/bicoherent.hpp"
#include "swanson2d/fockmatrix.hpp"
#include "swanson2d/innerprod.hpp"
#include "swanson2d/metricmap.hpp"
#include "swanson2d/report.hpp"

using namespace swanson2d;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const char* fmt, double value, double limit) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, value, limit);
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + buf);
    pass = pass && ok;
  }
  void note(const std::string& s) { notes.push_back("     " + s); }
  void fail(const std::string& s) {
    notes.push_back("FAIL " + s);
    pass = false;
  }
};

int failures = 0;

void criterion(int id, const char* title, double time_limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.notes.push_back(std::string("FAIL unexpected exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < time_limit;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("criterion %d [%s] %s (%.2f s, limit %.0f s%s)\n", id, pass ? "PASS" : "FAIL", title, secs, time_limit,
              in_time ? "" : ", too slow");
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string label(cplx nu) {
  char buf[64];
  if (nu.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "nu=%g", nu.real());
  } else {
    std::snprintf(buf, sizeof buf, "nu=%g%+gi", nu.real(), nu.imag());
  }
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";

  criterion(1, "algebra: pseudo-bosonic commutators on the interior block", 5.0, [](Outcome& o) {
    double worst = 0.0;
    for (int n = 2; n <= 40; ++n) worst = std::max(worst, commutator_defect(n));
    o.expect(worst < 1e-12, "max commutator defect over n_max 2..40 = %.3g (< %.0e)", worst, 1e-12);
  });

  criterion(2, "eigenfunctions: finite-difference Hamiltonian and theta independence", 60.0, [](Outcome& o) {
    const GridSpec grid{};
    for (double nu : {0.1, 0.3, 0.7}) {
      double residual = 0.0, spread = 0.0;
      std::string blocked;
      for (int n1 = 0; n1 <= 4; ++n1)
        for (int n2 = 0; n2 <= 4; ++n2) {
          const auto phi = WaveField::phi(ModelParams(nu, 0.0), {n1, n2});
          const GridField ref = sample(phi, grid);
          const double e = (n1 + n2 + 1) / std::cos(2 * nu);
          std::vector<GridField> images;
          for (double theta : {0.0, 0.5, 1.0}) {
            GridField img;
            try {
              img = apply_hamiltonian_fd(ModelParams(nu, theta), phi, grid);
            } catch (const DomainError& err) {
              if (blocked.empty()) blocked = err.what();
              // Measure anyway with the decay guard off, for the record.
              GridSpec relaxed = grid;
              relaxed.decay_tolerance = 1.0;
              img = apply_hamiltonian_fd(ModelParams(nu, theta), phi, relaxed);
            }
            residual = std::max(residual, grid_distance(img, ref, e) / grid_norm(ref));
            images.push_back(std::move(img));
          }
          const double scale = grid_norm(images[0]);
          for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) spread = std::max(spread, grid_distance(images[a], images[b]) / scale);
        }
      const std::string tag = "nu=" + std::to_string(nu).substr(0, 3);
      if (!blocked.empty()) {
        o.fail(tag + ": " + blocked);
        o.note(tag + ": residuals below are measured with the decay guard disabled");
      }
      o.expect(residual < 1e-4, (tag + ": max residual ||H phi - E phi|| / ||phi|| = %.3g (< %.0e)").c_str(), residual,
               1e-4);
      o.expect(spread < 1e-4, (tag + ": max pairwise theta spread of H phi = %.3g (< %.0e)").c_str(), spread, 1e-4);
    }
  });

  criterion(3, "biorthogonality: Gram matrix of phi against Psi", 30.0, [](Outcome& o) {
    const auto rule = make_rule(RuleKind::gauss_hermite, 80);
    for (cplx nu : {cplx{0.3, 0.0}, cplx{0.3, 0.1}}) {
      const auto g = gram_biorthogonality(ModelParams(nu, 0.5), 6, rule);
      o.expect(g.max_offdiag < 1e-8, (label(nu) + ": max |off-diagonal| = %.3g (< %.0e)").c_str(), g.max_offdiag, 1e-8);
      o.expect(g.max_diag_defect < 1e-8, (label(nu) + ": max |diagonal - 1| = %.3g (< %.0e)").c_str(),
               g.max_diag_defect, 1e-8);
    }
  });

  criterion(4, "norms: quadrature against closed forms, divergence and growth ratios", 30.0, [](Outcome& o) {
    const auto rule = make_rule(RuleKind::gauss_hermite, 120);
    for (cplx nu : {cplx{0.1, 0}, cplx{0.3, 0}, cplx{0.7, 0}, cplx{0.3, 0.1}}) {
      const ModelParams p(nu, 0.5);
      double phi_err = 0.0, psi_err = 0.0;
      for (int a = 0; a <= 10; ++a)
        for (int b = 0; b <= 10; ++b) {
          const auto phi = WaveField::phi(p, {a, b});
          const auto psi = WaveField::psi(p, {a, b});
          const double cf = norm_closed_form(p, {a, b}), cp = norm_closed_form_psi(p, {a, b});
          phi_err = std::max(phi_err, std::abs(inner(phi, phi, rule).real() - cf) / cf);
          psi_err = std::max(psi_err, std::abs(inner(psi, psi, rule).real() - cp) / cp);
        }
      o.expect(phi_err < 1e-8, (label(nu) + ": phi norms, max relative error = %.3g (< %.0e)").c_str(), phi_err, 1e-8);
      o.expect(psi_err < 1e-8, (label(nu) + ": Psi norms, max relative error = %.3g (< %.0e)").c_str(), psi_err, 1e-8);
    }
    const ModelParams p6(kPi / 6, 0.5);
    const double ratio = std::sqrt(norm_closed_form(p6, {10, 0}) / norm_closed_form(p6, {0, 0}));
    o.expect(ratio > 10, "nu=pi/6: ||phi_10,0|| / ||phi_0,0|| = %.4g (> %.0f)", ratio, 10);
    for (double nu : {0.1, 0.3, kPi / 6, 0.7}) {
      const ModelParams p(nu, 0.5);
      const double r2 = std::pow(growth_ratio(nu), 2);
      double slack = INFINITY;
      for (int n = 0; n < 15; ++n)
        slack = std::min(slack, r2 - std::sqrt(norm_closed_form(p, {n + 1, 0}) / norm_closed_form(p, {n, 0})));
      o.expect(slack >= 0, (label(nu) + ": min (r_nu^2 - consecutive ratio) over n <= 15 = %.3g (>= %g)").c_str(),
               slack, 0.0);
    }
  });

  criterion(5, "displacement operators and BCH factorizations", 30.0, [](Outcome& o) {
    const std::pair<cplx, cplx> labels[] = {
        {1.0, 0.5}, {1.0, 1.0}, {cplx{0.0, 1.0}, cplx{-0.6, 0.8}}, {std::polar(1.0, 2.2), std::polar(0.7, -1.0)}};
    double bch = 0.0, inv = 0.0, col = 0.0;
    for (const auto& [z, w] : labels) {
      bch = std::max(bch, bch_defect(z, w, 40));
      const auto d = displacement_matrix(z, w, 40);
      const auto m = displacement_matrix(-z, -w, 40);
      inv = std::max({inv, interior_identity_defect(d.u, m.u, 20), interior_identity_defect(d.v, m.v, 20)});
      const auto c = d.u.apply_to_basis({0, 0});
      const auto series = coherent_coefficients(SequenceSpec::sqrt_n(), SequenceSpec::sqrt_n(), {z, w}, 40);
      for (int a = 0; a <= 20; ++a)
        for (int b = 0; b <= 20; ++b) col = std::max(col, std::abs(series(a, b) - c(flat_index({a, b}, 40))));
    }
    o.expect(bch < 1e-8, "max bch_defect over |z|,|w| <= 1, n_max 40 = %.3g (< %.0e)", bch, 1e-8);
    o.expect(inv < 1e-10, "max |U(z,w) U(-z,-w) - 1| on the interior block = %.3g (< %.0e)", inv, 1e-10);
    o.expect(col < 1e-8, "max |series coefficient - U column| = %.3g (< %.0e)", col, 1e-8);
  });

  criterion(6, "bicoherent states: eigen relations, normalization, moments", 60.0, [](Outcome& o) {
    const ModelParams p(0.3, 0.5);
    const CoherentLabel l{1.0, 0.5};
    for (Ladder op : {Ladder::A1, Ladder::A2, Ladder::B1dag, Ladder::B2dag}) {
      const double r = eigen_residual(op, p, l, 40);
      o.expect(r < 1e-6, (to_string(op) + ": eigen residual at (1, 0.5), cutoff 40 = %.3g (< %.0e)").c_str(), r, 1e-6);
    }
    const auto rule = make_rule(RuleKind::gauss_hermite, default_rule_order(41));
    const double norm = std::abs(inner(coherent_state(Family::phi, p, l, 40), coherent_state(Family::psi, p, l, 40),
                                       rule) -
                                 1.0);
    o.expect(norm < 1e-8, "|<phi(z,w), Psi(z,w)> - 1| = %.3g (< %.0e)", norm, 1e-8);
    const auto seq = SequenceSpec::sqrt_n();
    const double mom = moment_defect(moment_measure(seq), seq, 15);
    o.expect(mom < 1e-10, "max relative moment defect for k <= 15 = %.3g (< %.0e)", mom, 1e-10);
  });

  criterion(7, "resolution of the identity and the quasi-basis property", 120.0, [](Outcome& o) {
    const ModelParams p(0.3, 0.5);
    const auto rule = make_rule(RuleKind::gauss_hermite, 120);
    double res = 0.0, swapped = 0.0, quasi = 0.0, quasi_swapped = 0.0;
    for (int a1 = 0; a1 <= 3; ++a1)
      for (int a2 = 0; a2 <= 3; ++a2)
        for (int b1 = 0; b1 <= 3; ++b1)
          for (int b2 = 0; b2 <= 3; ++b2) {
            const auto f = WaveField::oscillator({a1, a2});
            const auto g = WaveField::oscillator({b1, b2});
            const auto r = resolution_residual(f, g, p, 60, 64, 40);
            res = std::max(res, std::abs(r.defect));
            swapped = std::max(swapped, std::abs(r.swapped_defect));
            const auto q = quasi_basis_residual(f, g, p, 20, rule);
            quasi = std::max(quasi, std::abs(q.defect));
            quasi_swapped = std::max(quasi_swapped, std::abs(q.swapped_defect));
          }
    o.expect(res < 1e-6, "bicoherent resolution, max defect over index pairs <= 3 = %.3g (< %.0e)", res, 1e-6);
    o.expect(swapped < 1e-6, "bicoherent resolution, swapped ordering = %.3g (< %.0e)", swapped, 1e-6);
    o.expect(quasi < 1e-6, "quasi-basis at cutoff 20, max defect = %.3g (< %.0e)", quasi, 1e-6);
    o.expect(quasi_swapped < 1e-6, "quasi-basis at cutoff 20, swapped ordering = %.3g (< %.0e)", quasi_swapped, 1e-6);
  });

  criterion(8, "metric operator, similarity and unbounded dilation", 10.0, [](Outcome& o) {
    const ModelParams p(0.3, 0.5);
    const auto m = metric_constant(p, 5, 25);
    o.expect(m.spread < 1e-10, "Theta phi_n / Psi_n spread over n <= 5 and 25 points = %.3g (< %.0e)", m.spread, 1e-10);
    o.note("constant c = " + format_number(m.constant.real()) + " + " + format_number(m.constant.imag()) + "i");
    const double sim = similarity_check(p, 4);
    o.expect(sim < 1e-9, "similarity defect T^-1 H T - h = %.3g (< %.0e)", sim, 1e-9);
    const auto g = dilation_growth(p, 15, make_rule(RuleKind::gauss_hermite, 120));
    o.expect(g.back() / g.front() > 10, "||T e_15,0|| / ||T e_0,0|| = %.4g (> %.0f)", g.back() / g.front(), 10);
  });

  criterion(9, "determinism of verify reports", 120.0, [&cli](Outcome& o) {
    RunConfig cfg;
    const auto a = render_results(run_suite("metric", cfg), cfg, "json");
    const auto b = render_results(run_suite("metric", cfg), cfg, "json");
    o.expect(a == b, "library rendering identical across runs: %g (expect %g)", a == b ? 1.0 : 0.0, 1.0);
    if (cli.empty()) {
      o.fail("no CLI path given");
      return;
    }
    const fs::path dir = fs::temp_directory_path() / "swanson2d_acceptance";
    fs::create_directories(dir);
    for (const char* fmt : {"csv", "json"}) {
      std::string reports[2];
      int codes[2];
      for (int run = 0; run < 2; ++run) {
        // Same output path both times: the path is part of the echoed config.
        const fs::path out = dir / (std::string("verify.") + fmt);
        const std::string cmd = "\"" + cli + "\" --format " + fmt + " --out \"" + out.string() + "\" verify 2>/dev/null";
        const int status = std::system(cmd.c_str());
        codes[run] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        reports[run] = slurp(out);
      }
      const bool same = !reports[0].empty() && reports[0] == reports[1];
      o.expect(same, (std::string(fmt) + ": two CLI verify runs byte-identical: %g (expect %g)").c_str(),
               same ? 1.0 : 0.0, 1.0);
      o.note(std::string(fmt) + ": exit codes " + std::to_string(codes[0]) + ", " + std::to_string(codes[1]) + "; " +
             std::to_string(reports[0].size()) + " bytes");
    }
    fs::remove_all(dir);
  });

  std::printf("%d criterion failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
