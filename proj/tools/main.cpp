#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "swanson2d/report.hpp"

using namespace swanson2d;

namespace {

struct Overrides {
  std::optional<double> nu_re, nu_im, theta;
  std::optional<int> n_max, cutoff;
  std::optional<std::string> format, out;
  std::optional<bool> strict;
};

RunConfig load(const std::string& path, const Overrides& o) {
  RunConfig cfg = path.empty() ? RunConfig{} : RunConfig::from_file(path);
  if (o.nu_re) cfg.nu_re = *o.nu_re;
  if (o.nu_im) cfg.nu_im = *o.nu_im;
  if (o.theta) cfg.theta = *o.theta;
  if (o.n_max) cfg.n_max = *o.n_max;
  if (o.cutoff) cfg.cutoff = *o.cutoff;
  if (o.format) cfg.format = *o.format;
  if (o.out) cfg.out = *o.out;
  if (o.strict) cfg.strict = *o.strict;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for the two-dimensional noncommutative Swanson model"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();

  std::string config_path;
  Overrides o;
  app.add_option("--config", config_path, "flat JSON config file");
  app.add_option("--out", o.out, "output path (stdout when omitted)");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--nu-re", o.nu_re, "Re nu in radians");
  app.add_option("--nu-im", o.nu_im, "Im nu in radians");
  app.add_option("--theta", o.theta, "noncommutativity parameter");
  app.add_option("--n-max", o.n_max, "largest index per mode");
  app.add_option("--cutoff", o.cutoff, "bicoherent series cutoff");
  auto* strict = app.add_flag("--strict", "fail on truncation-dominated results (default)");
  auto* lenient = app.add_flag("--lenient", "report truncation-dominated results and exit 0");
  strict->excludes(lenient);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  verify->add_option("--suite", suites, "suites to run (default: all)")
      ->check(CLI::IsMember(all_suites()))
      ->delimiter(',');

  auto* table = app.add_subcommand("table", "write a data table");
  std::string what;
  table->add_option("--what", what, "spectrum, norms, gram or growth")
      ->required()
      ->check(CLI::IsMember({"spectrum", "norms", "gram", "growth"}));

  auto* coherent = app.add_subcommand("coherent", "bicoherent-state residuals at one label");
  double z_re = 1.0, z_im = 0.0, w_re = 0.5, w_im = 0.0;
  coherent->add_option("--z-re", z_re);
  coherent->add_option("--z-im", z_im);
  coherent->add_option("--w-re", w_re);
  coherent->add_option("--w-im", w_im);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the config-error exit code.
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (*strict) o.strict = true;
  if (*lenient) o.strict = false;

  RunConfig cfg;
  try {
    cfg = load(config_path, o);
  } catch (const ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*verify) {
      if (suites.empty()) suites = all_suites();
      std::vector<ResultRow> rows;
      for (const auto& s : all_suites()) {
        if (std::find(suites.begin(), suites.end(), s) == suites.end()) continue;
        auto part = run_suite(s, cfg);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      write_atomic(cfg.out, render_results(rows, cfg, cfg.format));
      const int code = exit_code(rows, cfg.strict);
      for (const auto& r : rows)
        if (r.status == "fail" || r.status == "truncated")
          std::cerr << r.status << ": " << r.suite << "/" << r.check << " = " << format_number(r.value) << "\n";
      return code;
    }
    if (*table) {
      write_atomic(cfg.out, render_table(make_table(what, cfg), cfg, cfg.format));
      return 0;
    }
    if (*coherent) {
      if (coherent->count("--z-re")) cfg.z_re = z_re;
      if (coherent->count("--z-im")) cfg.z_im = z_im;
      if (coherent->count("--w-re")) cfg.w_re = w_re;
      if (coherent->count("--w-im")) cfg.w_im = w_im;
      const auto rows = coherent_rows(cfg);
      write_atomic(cfg.out, render_results(rows, cfg, cfg.format));
      for (const auto& r : rows)
        if (r.status == "truncated") {
          std::cerr << "truncation-dominated: tail bound exceeds " << format_number(cfg.tail_tolerance)
                    << "; raise --cutoff\n";
          break;
        }
      return exit_code(rows, cfg.strict);
    }
  } catch (const ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
