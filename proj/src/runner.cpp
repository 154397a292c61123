#include "aklt/runner.hpp"

#include <array>
#include <charconv>
#include <exception>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "aklt/vbs_oracle.hpp"

namespace aklt {
namespace {

int parse_int(std::string_view token, std::string_view whole) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty())
    throw std::invalid_argument("bad integer range '" + std::string(whole) + "'");
  return v;
}

std::string opt_to_string(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

// Column values that do not apply to a mode are left empty.
std::array<std::string, 5> length_fields(const BlockGeometry& g) {
  switch (g.mode) {
    case BoundaryMode::HalfBoundary:
      return {std::to_string(g.outer_left), std::to_string(g.la), std::to_string(g.gap), std::to_string(g.lb),
              std::to_string(g.outer_right)};
    case BoundaryMode::Spin1Boundary:
      return {"", std::to_string(g.la), std::to_string(g.gap), std::to_string(g.lb), ""};
    case BoundaryMode::Periodic:
      return {std::to_string(g.outer_left), std::to_string(g.la), std::to_string(g.gap), std::to_string(g.lb), ""};
  }
  return {};
}

std::vector<std::string> metadata_lines(const RunConfig& config, const std::vector<ResultRow>& rows) {
  std::vector<std::string> lines;
  lines.push_back("aklt_negativity " + std::string(kToolVersion));
  lines.push_back("config: " + config.describe());
  for (const ResultRow& r : rows)
    if (r.geometry.flagged())
      lines.push_back("flagged: " + r.geometry.describe() + " has a spin-1/2 end inside a block");
  return lines;
}

}  // namespace

IntRange IntRange::parse(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) return single(parse_int(text, text));
  return {parse_int(text.substr(0, colon), text), parse_int(text.substr(colon + 1), text)};
}

std::string IntRange::to_string() const {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + ":" + std::to_string(hi);
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format '" + std::string(text) + "'");
}

bool RunConfig::has_empty_range() const {
  switch (mode) {
    case BoundaryMode::HalfBoundary:
      return outer_left.empty() || la.empty() || gap.empty() || lb.empty() || outer_right.empty();
    case BoundaryMode::Spin1Boundary:
      return la.empty() || gap.empty() || lb.empty();
    case BoundaryMode::Periodic:
      return outer_left.empty() || la.empty() || gap.empty() || lb.empty();
  }
  return false;
}

std::string RunConfig::describe() const {
  std::ostringstream os;
  os << "mode=" << to_string(mode);
  switch (mode) {
    case BoundaryMode::HalfBoundary:
      os << " lc=" << outer_left.to_string() << " la=" << la.to_string() << " gap=" << gap.to_string()
         << " lb=" << lb.to_string() << " le=" << outer_right.to_string();
      break;
    case BoundaryMode::Spin1Boundary:
      os << " la=" << la.to_string() << " gap=" << gap.to_string() << " lb=" << lb.to_string();
      break;
    case BoundaryMode::Periodic:
      os << " l1=" << outer_left.to_string() << " la=" << la.to_string() << " l2=" << gap.to_string()
         << " lb=" << lb.to_string();
      if (ring_length) os << " ring=" << *ring_length;
      break;
  }
  if (weights) os << " weights=" << weights->label();
  os << " oracle=" << (oracle ? "on" : "off") << " tol=" << format_double(tol);
  if (closed_form) os << " closed_form=" << *closed_form;
  return os.str();
}

std::vector<BlockGeometry> expand(const RunConfig& config) {
  std::vector<BlockGeometry> points;
  if (config.has_empty_range()) return points;

  const bool uses_outer_left = config.mode != BoundaryMode::Spin1Boundary;
  const bool uses_outer_right = config.mode == BoundaryMode::HalfBoundary;
  const IntRange ol = uses_outer_left ? config.outer_left : IntRange::single(0);
  const IntRange orr = uses_outer_right ? config.outer_right : IntRange::single(0);

  for (int a = ol.lo; a <= ol.hi; ++a)
    for (int la = config.la.lo; la <= config.la.hi; ++la)
      for (int gap = config.gap.lo; gap <= config.gap.hi; ++gap)
        for (int lb = config.lb.lo; lb <= config.lb.hi; ++lb)
          for (int e = orr.lo; e <= orr.hi; ++e) {
            BlockGeometry g;
            switch (config.mode) {
              case BoundaryMode::HalfBoundary: g = BlockGeometry::half(a, la, gap, lb, e); break;
              case BoundaryMode::Spin1Boundary: g = BlockGeometry::spin1(la, gap, lb); break;
              case BoundaryMode::Periodic: g = BlockGeometry::periodic(a, la, gap, lb, config.ring_length); break;
            }
            if (config.oracle && g.bulk_sites() > kOracleMaxBulkSites) {
              throw std::invalid_argument("oracle requested but " + g.describe() + " has " +
                                          std::to_string(g.bulk_sites()) + " spin-1 sites (cap " +
                                          std::to_string(kOracleMaxBulkSites) + ")");
            }
            points.push_back(g);
          }
  if (config.mode == BoundaryMode::Spin1Boundary && !points.empty() && !config.weights)
    throw std::invalid_argument("spin-1 boundary needs --weights");
  return points;
}

std::vector<ResultRow> run(const RunConfig& config) {
  const std::vector<BlockGeometry> points = expand(config);
  const std::optional<BoundaryWeights> w =
      config.mode == BoundaryMode::Spin1Boundary ? config.weights : std::optional<BoundaryWeights>{};

  // fail before doing any work on a bad closed-form name
  if (config.closed_form && !points.empty()) (void)make_closed_form(*config.closed_form, points.front(), w);

  std::vector<ResultRow> rows(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  const auto count = static_cast<std::ptrdiff_t>(points.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      const BlockGeometry& g = points[idx];
      const NegativityResult res = negativity_of(g, w);
      ResultRow& row = rows[idx];
      row.geometry = g;
      row.weights_label = w ? w->label() : std::string();
      row.negativity_analytic = res.negativity;
      row.spectrum_min = res.spectrum.min();
      if (config.oracle) {
        const OracleComparison c = compare_with_oracle(g, w, config.tol, Exec::Serial);
        row.negativity_oracle = c.negativity_oracle;
        row.abs_diff = c.abs_diff;
      }
      if (config.closed_form) row.closed_form = closed_form(make_closed_form(*config.closed_form, g, w));
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

bool any_mismatch(const std::vector<ResultRow>& rows, double tol) {
  for (const ResultRow& r : rows)
    if (r.abs_diff && !(*r.abs_diff <= tol)) return true;
  return false;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf.data(), ptr);
}

void write_csv(std::ostream& out, const RunConfig& config, const std::vector<ResultRow>& rows) {
  for (const std::string& line : metadata_lines(config, rows)) out << "# " << line << '\n';
  out << "mode,lc_l1,la,gap_l2,lb,le,weights,negativity_analytic,negativity_oracle,spectrum_min,abs_diff";
  if (config.closed_form) out << ",closed_form";
  out << '\n';
  for (const ResultRow& r : rows) {
    const auto lengths = length_fields(r.geometry);
    out << to_string(r.geometry.mode);
    for (const std::string& f : lengths) out << ',' << f;
    out << ',' << r.weights_label << ',' << format_double(r.negativity_analytic) << ','
        << opt_to_string(r.negativity_oracle) << ',' << format_double(r.spectrum_min) << ','
        << opt_to_string(r.abs_diff);
    if (config.closed_form) out << ',' << opt_to_string(r.closed_form);
    out << '\n';
  }
}

void write_json(std::ostream& out, const RunConfig& config, const std::vector<ResultRow>& rows) {
  using json = nlohmann::ordered_json;
  auto nullable = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  auto length = [](const std::string& s) { return s.empty() ? json(nullptr) : json(std::stoi(s)); };

  json doc;
  doc["metadata"] = metadata_lines(config, rows);
  doc["rows"] = json::array();
  for (const ResultRow& r : rows) {
    const auto lengths = length_fields(r.geometry);
    json row;
    row["mode"] = std::string(to_string(r.geometry.mode));
    row["lc_l1"] = length(lengths[0]);
    row["la"] = length(lengths[1]);
    row["gap_l2"] = length(lengths[2]);
    row["lb"] = length(lengths[3]);
    row["le"] = length(lengths[4]);
    row["weights"] = r.weights_label.empty() ? json(nullptr) : json(r.weights_label);
    row["negativity_analytic"] = r.negativity_analytic;
    row["negativity_oracle"] = nullable(r.negativity_oracle);
    row["spectrum_min"] = r.spectrum_min;
    row["abs_diff"] = nullable(r.abs_diff);
    if (config.closed_form) row["closed_form"] = nullable(r.closed_form);
    doc["rows"].push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

void write_rows(std::ostream& out, const RunConfig& config, const std::vector<ResultRow>& rows) {
  if (config.format == OutputFormat::Json)
    write_json(out, config, rows);
  else
    write_csv(out, config, rows);
}

std::vector<BoundaryWeights> weight_test_set() {
  std::vector<BoundaryWeights> set;
  for (int beta = 0; beta < 4; ++beta) set.push_back(BoundaryWeights::basis(beta));
  for (int c = 1; c <= 2; ++c)
    for (int d = 1; d <= 2; ++d) set.push_back(BoundaryWeights::separable(c, d));
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<cplx, 4> w{};
  for (cplx& x : w) {
    const double re = u(rng);
    const double im = u(rng);
    x = cplx(re, im);
  }
  set.emplace_back(w, "random");
  return set;
}

std::vector<OracleCase> oracle_suite(int max_bulk_sites) {
  std::vector<OracleCase> cases;
  for (int lc = 0; lc <= 2; ++lc)
    for (int la = 1; la <= 3; ++la)
      for (int gap = 0; gap <= 2; ++gap)
        for (int lb = 1; lb <= 3; ++lb)
          for (int le = 0; le <= 2; ++le) {
            const int bulk = lc + la + gap + lb + le - 2;
            if (bulk < 1 || bulk > max_bulk_sites) continue;
            cases.push_back({BlockGeometry::half(lc, la, gap, lb, le), std::nullopt});
          }
  const std::vector<BoundaryWeights> weights = weight_test_set();
  for (int la = 1; la <= 3; ++la)
    for (int gap = 0; gap <= 2; ++gap)
      for (int lb = 1; lb <= 3; ++lb) {
        const BlockGeometry g = BlockGeometry::spin1(la, gap, lb);
        if (g.bulk_sites() > max_bulk_sites) continue;
        for (const BoundaryWeights& w : weights) cases.push_back({g, w});
      }
  for (int l1 = 0; l1 <= 2; ++l1)
    for (int la = 1; la <= 3; ++la)
      for (int l2 = 0; l2 <= 2; ++l2)
        for (int lb = 1; lb <= 3; ++lb) {
          const BlockGeometry g = BlockGeometry::periodic(l1, la, l2, lb);
          if (g.bulk_sites() <= max_bulk_sites) cases.push_back({g, std::nullopt});
        }
  return cases;
}

std::vector<VerifyResult> run_oracle_suite(const std::vector<OracleCase>& cases, double tol) {
  std::vector<VerifyResult> results(cases.size());
  std::vector<std::exception_ptr> errors(cases.size());
  const auto count = static_cast<std::ptrdiff_t>(cases.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      const OracleComparison c = compare_with_oracle(cases[idx].geometry, cases[idx].weights, tol, Exec::Serial);
      VerifyResult& r = results[idx];
      r.config = cases[idx];
      r.negativity_edge = c.negativity_edge;
      r.negativity_oracle = c.negativity_oracle;
      r.abs_diff = c.abs_diff;
      r.spectrum_diff = std::max(c.spectrum_diff, c.pt_spectrum_diff);
      r.passed = c.passed;
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace aklt
