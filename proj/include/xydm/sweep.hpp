#pragma once

// Tabular outputs for the command-line front end and their CSV/JSON forms.
//
// CSV layout: '#'-prefixed "key=value" metadata lines, one header row of
// column names (axis first), then one row per axis value. Reals are written
// with 17 significant digits, so write -> parse is lossless. LF endings.
//
// JSON layout: {"metadata": {...}, "columns": [...], "rows": [[...], ...]}.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xydm/ed_oracle.hpp"
#include "xydm/model.hpp"
#include "xydm/probes.hpp"

namespace xydm {

inline constexpr std::string_view kVersion = "0.1.0";

struct SweepMetadata {
  ModelParams params;
  std::string grid;
  std::string version{kVersion};
  /// Extra key/value pairs in emission order (summary values, seeds, ...).
  std::vector<std::pair<std::string, std::string>> extra;

  bool operator==(const SweepMetadata&) const = default;
};

struct SweepRow {
  double axis_value = 0.0;
  std::vector<double> values;

  bool operator==(const SweepRow&) const = default;
};

struct SweepTable {
  std::string axis_name;
  std::vector<std::string> columns;  ///< observable names, axis excluded
  std::vector<SweepRow> rows;
  SweepMetadata metadata;

  /// Throws std::invalid_argument unless rows ascend strictly and every row
  /// carries one value per column.
  void validate() const;

  bool operator==(const SweepTable&) const = default;
};

/// "%.17g" formatting.
std::string format_real(double value);

std::string to_csv(const SweepTable& table);
SweepTable parse_csv(std::string_view text);
std::string to_json(const SweepTable& table);

// --- spectrum / ground ------------------------------------------------------

/// Rows k with columns x, cos_theta, sin_theta, lambda_k.
SweepTable spectrum_table(const ModelParams& params, SectorTag sector);

/// Mode table with occupations; summary fields go to metadata.
SweepTable ground_table(const ModelParams& params, SectorTag sector);

// --- sweeps -----------------------------------------------------------------

/// Observables a sweep can evaluate.
const std::vector<std::string>& known_observables();

struct SweepSpec {
  std::string axis = "lambda";  ///< lambda | D | gamma | N
  double lo = 0.0;
  double hi = 2.0;
  int steps = 101;
  std::vector<std::string> observables{"energy", "gap", "min_lambda"};
  SectorTag sector = SectorTag::PaperGrid;
  double h = 1e-3;      ///< derivative step for dbeta and curvature
  double delta = 1e-2;  ///< field offset for fidelity
  unsigned workers = 1;
};

/// Uniform grid from lo to hi inclusive; rows are evaluated on `workers`
/// threads and emitted in axis order. For axis N the grid is rounded to
/// integers and deduplicated.
SweepTable run_sweep(const ModelParams& templ, const SweepSpec& spec);

// --- oracle check -------------------------------------------------------------

/// mt19937_64 with uniform reals built from the top 53 bits, so a seed gives
/// the same draws on every platform.
class UniformDraws {
 public:
  explicit UniformDraws(std::uint64_t seed);
  double next(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

struct CheckOptions {
  std::vector<int> sizes{4, 6, 8, 10};
  int draws = 50;  ///< per size
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

inline constexpr double kCrosscheckTolerance = 1e-9;
inline constexpr double kSpectralTolerance = 1e-10;

struct CheckEntry {
  OracleReport cross;
  /// Present for N <= kMaxFockSites; bdg_multiset_error is the full-spectrum discrepancy.
  std::optional<OracleReport> jw;
};

struct CheckResult {
  std::vector<CheckEntry> entries;
  std::size_t worst = 0;  ///< index of the largest abs_error
  bool passed = true;
};

/// Random draws J, lambda, D in [-2, 2] and gamma in [-1, 1] for every size,
/// running crosscheck and jw_consistency_check on each.
CheckResult run_check(const CheckOptions& options);

std::string check_to_csv(const CheckResult& result, const CheckOptions& options);
std::string check_to_json(const CheckResult& result, const CheckOptions& options);

// --- scaling --------------------------------------------------------------------

std::string scaling_to_json(const ScalingFit& fit, const ModelParams& templ, LambdaWindow window,
                            const ScalingOptions& options);
std::string scaling_to_csv(const ScalingFit& fit, const ModelParams& templ, LambdaWindow window,
                           const ScalingOptions& options);

}  // namespace xydm
