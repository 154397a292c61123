#pragma once

// Sweep expansion, evaluation and table output shared by the command-line tool
// and the acceptance suite.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aklt/edge_rdm.hpp"
#include "aklt/spectrum.hpp"

namespace aklt {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Inclusive integer range; "3" or "1:4". hi < lo is an empty range.
struct IntRange {
  int lo = 0;
  int hi = 0;

  static IntRange parse(std::string_view text);
  static IntRange single(int v) { return {v, v}; }
  bool empty() const { return hi < lo; }
  std::string to_string() const;
};

enum class OutputFormat { Csv, Json };
OutputFormat parse_output_format(std::string_view text);

struct RunConfig {
  BoundaryMode mode = BoundaryMode::HalfBoundary;
  IntRange outer_left = IntRange::single(1);  ///< L_C or L_1
  IntRange la = IntRange::single(1);
  IntRange gap = IntRange::single(0);         ///< L or L_2
  IntRange lb = IntRange::single(1);
  IntRange outer_right = IntRange::single(1); ///< L_E
  std::optional<int> ring_length;
  std::optional<BoundaryWeights> weights;
  bool oracle = false;
  double tol = 1e-10;
  std::optional<std::string> closed_form;
  OutputFormat format = OutputFormat::Csv;

  bool has_empty_range() const;
  std::string describe() const;
};

struct ResultRow {
  BlockGeometry geometry;
  std::string weights_label;
  double negativity_analytic = 0.0;
  std::optional<double> negativity_oracle;
  double spectrum_min = 0.0;
  std::optional<double> abs_diff;
  std::optional<double> closed_form;
};

/// Geometries in lexicographic order over (outer_left, la, gap, lb, outer_right).
/// Throws std::invalid_argument on the first invalid point, or when the oracle
/// is on and a point exceeds kOracleMaxBulkSites.
std::vector<BlockGeometry> expand(const RunConfig& config);

/// Evaluates every point; points run in parallel, rows come back in expand() order.
std::vector<ResultRow> run(const RunConfig& config);

/// True when some row has abs_diff above tol.
bool any_mismatch(const std::vector<ResultRow>& rows, double tol);

void write_csv(std::ostream& out, const RunConfig& config, const std::vector<ResultRow>& rows);
void write_json(std::ostream& out, const RunConfig& config, const std::vector<ResultRow>& rows);
void write_rows(std::ostream& out, const RunConfig& config, const std::vector<ResultRow>& rows);

/// Shortest round-trip decimal form.
std::string format_double(double v);

/// Oracle-equivalence cases: every mode, total spin-1 sites <= max_bulk_sites.
struct OracleCase {
  BlockGeometry geometry;
  std::optional<BoundaryWeights> weights;
};
std::vector<OracleCase> oracle_suite(int max_bulk_sites = 8);

/// Fixed boundary weight set: e_0..e_3, cc, cd, dc, dd and one seeded random unit vector.
std::vector<BoundaryWeights> weight_test_set();

struct VerifyResult {
  OracleCase config;
  double negativity_edge = 0.0;
  double negativity_oracle = 0.0;
  double abs_diff = 0.0;
  double spectrum_diff = 0.0;
  bool passed = false;
};
std::vector<VerifyResult> run_oracle_suite(const std::vector<OracleCase>& cases, double tol);

}  // namespace aklt
