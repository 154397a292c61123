// aklt_negativity: two-block negativity of the AKLT chain.
//
//   aklt_negativity eval  --mode half --la 2 --lb 2 --gap 3
//   aklt_negativity sweep --mode spin1 --weights beta2 --la 40 --lb 1 --gap 0:10 --out curve.csv
//   aklt_negativity verify
//
// Exit codes: 0 ok, 2 usage error, 3 oracle mismatch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aklt/runner.hpp"
#include "aklt/vbs_oracle.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitMismatch = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string mode = "half";
  std::optional<std::string> lc, la, gap, lb, le, l1, l2;
  std::optional<int> ring;
  std::optional<std::string> weights;
  bool oracle = false;
  double tol = 1e-10;
  std::string format = "csv";
  std::optional<std::string> closed_form;
  std::string out;
};

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "half | spin1 | pbc")->capture_default_str();
  cmd->add_option("--lc", o.lc, "L_C, half mode (N or lo:hi)");
  cmd->add_option("--la", o.la, "L_A");
  cmd->add_option("--gap", o.gap, "separation L (half, spin1)");
  cmd->add_option("--lb", o.lb, "L_B");
  cmd->add_option("--le", o.le, "L_E, half mode");
  cmd->add_option("--l1", o.l1, "L_1, pbc mode");
  cmd->add_option("--l2", o.l2, "L_2, pbc mode");
  cmd->add_option("--ring", o.ring, "declared ring length, pbc mode");
  cmd->add_option("--weights", o.weights, "beta0..beta3, cc, cd, dc, dd, or 4 reals / 8 re,im numbers");
  cmd->add_flag("--oracle", o.oracle, "compare against the brute-force state");
  cmd->add_option("--tol", o.tol, "oracle tolerance")->capture_default_str();
  cmd->add_option("--format", o.format, "csv | json")->capture_default_str();
  cmd->add_option("--closed-form", o.closed_form,
                  "append a closed_form column: half_adjacent, spin1_limit, semi_infinite, separable_adjacent");
}

aklt::RunConfig to_config(const Options& o) {
  using aklt::BoundaryMode;
  using aklt::IntRange;
  aklt::RunConfig c;
  c.mode = aklt::parse_boundary_mode(o.mode);
  auto range = [](const std::optional<std::string>& s, int fallback) {
    return s ? IntRange::parse(*s) : IntRange::single(fallback);
  };
  auto reject = [&](const std::optional<std::string>& s, const char* flag) {
    if (s) throw UsageError(std::string(flag) + " does not apply to --mode " + o.mode);
  };

  c.la = range(o.la, 1);
  c.lb = range(o.lb, 1);
  switch (c.mode) {
    case BoundaryMode::HalfBoundary:
      reject(o.l1, "--l1");
      reject(o.l2, "--l2");
      c.outer_left = range(o.lc, 1);
      c.gap = range(o.gap, 0);
      c.outer_right = range(o.le, 1);
      break;
    case BoundaryMode::Spin1Boundary:
      reject(o.lc, "--lc");
      reject(o.le, "--le");
      reject(o.l1, "--l1");
      reject(o.l2, "--l2");
      c.gap = range(o.gap, 0);
      break;
    case BoundaryMode::Periodic:
      reject(o.lc, "--lc");
      reject(o.le, "--le");
      reject(o.gap, "--gap");
      c.outer_left = range(o.l1, 1);
      c.gap = range(o.l2, 1);
      break;
  }
  if (o.ring && c.mode != BoundaryMode::Periodic) throw UsageError("--ring applies to --mode pbc only");
  c.ring_length = o.ring;
  if (o.weights) {
    if (c.mode != BoundaryMode::Spin1Boundary) throw UsageError("--weights applies to --mode spin1 only");
    c.weights = aklt::BoundaryWeights::parse(*o.weights);
  }
  c.oracle = o.oracle;
  if (!(o.tol >= 0.0)) throw UsageError("--tol must be non-negative");
  c.tol = o.tol;
  c.closed_form = o.closed_form;
  c.format = aklt::parse_output_format(o.format);
  return c;
}

int cmd_eval(const Options& o) {
  const aklt::RunConfig config = to_config(o);
  if (config.has_empty_range()) throw UsageError("eval needs non-empty ranges");
  const auto rows = aklt::run(config);
  if (o.out.empty()) {
    aklt::write_rows(std::cout, config, rows);
  } else {
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write " + o.out);
    aklt::write_rows(f, config, rows);
  }
  return aklt::any_mismatch(rows, config.tol) ? kExitMismatch : 0;
}

int cmd_sweep(const Options& o) {
  const aklt::RunConfig config = to_config(o);
  const auto rows = aklt::run(config);
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  aklt::write_rows(f, config, rows);
  f.close();
  if (!f) throw UsageError("cannot write " + o.out);
  return aklt::any_mismatch(rows, config.tol) ? kExitMismatch : 0;
}

int cmd_verify(double tol, int max_sites, const std::string& out) {
  if (max_sites < 1 || max_sites > aklt::kOracleMaxBulkSites)
    throw UsageError("--max-sites must lie in 1.." + std::to_string(aklt::kOracleMaxBulkSites));
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw UsageError("cannot write " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;

  int failures = 0;
  os << "# aklt_negativity " << aklt::kToolVersion << " verify tol=" << aklt::format_double(tol)
     << " max_sites=" << max_sites << '\n';
  os << "check,case,value,passed\n";

  for (int n = 1; n <= std::min(max_sites, 6); ++n) {
    const aklt::GramReport g = aklt::gram_check(n);
    failures += g.passed ? 0 : 1;
    os << "gram,n=" << n << ',' << aklt::format_double(g.max_error) << ',' << (g.passed ? 1 : 0) << '\n';
  }
  const aklt::BoundaryMode modes[] = {aklt::BoundaryMode::HalfBoundary, aklt::BoundaryMode::Spin1Boundary,
                                      aklt::BoundaryMode::Periodic};
  for (aklt::BoundaryMode m : modes) {
    const int lo = m == aklt::BoundaryMode::HalfBoundary ? 1 : (m == aklt::BoundaryMode::Periodic ? 3 : 2);
    for (int n = lo; n <= std::min(max_sites, 5); ++n) {
      const aklt::HamiltonianReport h = aklt::hamiltonian_check(m, n);
      failures += h.passed ? 0 : 1;
      os << "hamiltonian," << aklt::to_string(m) << " N=" << n << " null=" << h.null_dimension << ','
         << aklt::format_double(h.residual) << ',' << (h.passed ? 1 : 0) << '\n';
    }
  }
  const auto results = aklt::run_oracle_suite(aklt::oracle_suite(max_sites), tol);
  for (const auto& r : results) {
    failures += r.passed ? 0 : 1;
    os << "oracle," << r.config.geometry.describe();
    if (r.config.weights) os << ' ' << r.config.weights->label();
    os << ',' << aklt::format_double(std::max(r.abs_diff, r.spectrum_diff)) << ',' << (r.passed ? 1 : 0) << '\n';
  }
  std::cerr << results.size() << " oracle cases, " << failures << " failures\n";
  return failures == 0 ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-block entanglement negativity of the AKLT chain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aklt::kToolVersion));

  Options eval_opts, sweep_opts;
  auto* eval = app.add_subcommand("eval", "evaluate one geometry or a small grid, rows to stdout");
  add_run_options(eval, eval_opts);
  eval->add_option("--out", eval_opts.out, "write to a file instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "write a table over length ranges");
  add_run_options(sweep, sweep_opts);
  sweep->add_option("--out", sweep_opts.out, "output file")->required();

  double verify_tol = 1e-10;
  int verify_max_sites = 8;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "edge pipeline against the brute-force oracle");
  verify->add_option("--tol", verify_tol, "tolerance")->capture_default_str();
  verify->add_option("--max-sites", verify_max_sites, "largest chain, spin-1 sites")->capture_default_str();
  verify->add_option("--out", verify_out, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_opts);
    if (*sweep) return cmd_sweep(sweep_opts);
    return cmd_verify(verify_tol, verify_max_sites, verify_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
