#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "swanson2d/params.hpp"
#include "swanson2d/wavefun.hpp"

namespace swanson2d {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

/// Invalid configuration; field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what) : std::runtime_error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Flat run configuration. Angles in radians.
struct RunConfig {
  double nu_re = 0.3;
  double nu_im = 0.0;
  double theta = 0.5;
  int n_max = 6;
  int cutoff = 40;
  int hermite_order = 80;
  int laguerre_order = 60;
  int angular_order = 64;
  double grid_half_width = 8.0;
  double grid_spacing = 0.05;
  int stencil_order = 4;
  double decay_tolerance = 1e-4;
  int fock_n_max = 40;
  int eigen_index_max = 4;
  int norm_index_max = 10;
  int norm_rule_order = 120;
  int resolution_index_max = 3;
  int quasi_cutoff = 20;
  double z_re = 1.0;
  double z_im = 0.0;
  double w_re = 0.5;
  double w_im = 0.0;
  double tail_tolerance = 1e-8;
  double tol_algebra = 1e-12;
  double tol_bch = 1e-8;
  double tol_eigen = 1e-4;
  double tol_biorth = 1e-8;
  double tol_norms = 1e-8;
  double tol_coherent = 1e-6;
  double tol_resolution = 1e-6;
  double tol_metric = 1e-9;
  std::string format = "csv";
  std::string out;
  bool strict = true;

  using Slot = std::variant<double*, int*, bool*, std::string*>;
  /// Every key in its fixed output order.
  std::vector<std::pair<std::string, Slot>> slots();

  /// Reads a flat JSON object over the defaults; unknown keys and wrong
  /// types throw ConfigError.
  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  ModelParams params() const { return ModelParams(cplx{nu_re, nu_im}, theta); }
  GridSpec grid() const;
  cplx z() const { return {z_re, z_im}; }
  cplx w() const { return {w_re, w_im}; }
};

enum class Relation { at_most, at_least, none };

struct ResultRow {
  std::string suite;
  std::string check;
  double value = 0.0;
  Relation relation = Relation::at_most;
  double tolerance = 0.0;
  /// pass, fail, info or truncated.
  std::string status;
};

/// Pass/fail from value, relation and tolerance (NaN fails).
ResultRow make_row(std::string suite, std::string check, double value, Relation relation, double tolerance);
ResultRow info_row(std::string suite, std::string check, double value);

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names{"algebra", "eigen", "biorth", "norms", "coherent", "resolution", "metric"};
  return names;
}

/// Runs one suite; throws std::invalid_argument for an unknown name.
std::vector<ResultRow> run_suite(const std::string& name, const RunConfig& cfg);

/// Rows of the coherent command for label (z, w) from the config.
std::vector<ResultRow> coherent_rows(const RunConfig& cfg);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// what in {spectrum, norms, gram, growth}.
Table make_table(const std::string& what, const RunConfig& cfg);

/// 0 when every row passes, 1 on failure, and 1 on truncation in strict mode.
int exit_code(const std::vector<ResultRow>& rows, bool strict);

/// Deterministic renderings: fixed key order, %.17g numbers, no timestamps.
std::string render_results(const std::vector<ResultRow>& rows, RunConfig cfg, const std::string& format);
std::string render_table(const Table& table, RunConfig cfg, const std::string& format);

/// Writes to path through a temporary file and rename; empty path means stdout.
void write_atomic(const std::string& path, const std::string& content);

std::string format_number(double v);

}  // namespace swanson2d
