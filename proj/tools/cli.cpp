#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxspec/asymptotics.hpp"
#include "maxspec/calculus.hpp"
#include "maxspec/inequalities.hpp"
#include "maxspec/matrix_io.hpp"
#include "maxspec/oracles.hpp"
#include "maxspec/report.hpp"
#include "maxspec/specgraph.hpp"

namespace maxspec::cli {

namespace {

using nlohmann::json;

/// Bad flags, config values or input files; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t trials = 500;
  unsigned t_max = 10;
  std::size_t k_max = 64;
  double tolerance = kConvergenceTolerance;
  bool eigenvectors = false;
  std::string which;
  std::optional<std::size_t> index;
  std::string series;
  std::string config_path;
  std::string dump_dir;
  SuiteConfig suite;
  /// Fixture name -> expected verdict, overriding the built-in expectation.
  std::map<std::string, Verdict> fixture_expectations;

  bool json_output() const { return format == "json"; }
};

Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::holds, Verdict::violated, Verdict::near_tight, Verdict::not_applicable}) {
    if (to_string(v) == s) return v;
  }
  throw UsageError("unknown verdict '" + s + "'");
}

Matrix load_input(const RunConfig& config) {
  if (config.input.empty()) throw UsageError("--input is required");
  try {
    return load_matrix(config.input);
  } catch (const ParseError& e) {
    throw UsageError(config.input + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

json matrix_rows(const Matrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.size(); ++j) row.push_back(a(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_text(const Matrix& a) {
  std::ostringstream os;
  for (std::size_t i = 0; i < a.size(); ++i) {
    os << " ";
    for (std::size_t j = 0; j < a.size(); ++j) os << " " << format_text(a(i, j));
    os << "\n";
  }
  return os.str();
}

/// Reads the verify config file. Keys: seed, trials, n_min, n_max,
/// densities, family_sizes, alpha_sums, t_values, t_max, k_max, tolerance,
/// fixtures ({name: verdict}).
void apply_config_file(RunConfig& config) {
  std::ifstream in(config.config_path);
  if (!in) throw UsageError("cannot open " + config.config_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(config.config_path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError(config.config_path + ": expected a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") config.seed = value.get<std::uint64_t>();
      else if (key == "trials") config.trials = value.get<std::size_t>();
      else if (key == "n_min") config.suite.n_min = value.get<std::size_t>();
      else if (key == "n_max") config.suite.n_max = value.get<std::size_t>();
      else if (key == "densities") config.suite.densities = value.get<std::vector<double>>();
      else if (key == "family_sizes") config.suite.family_sizes = value.get<std::vector<std::size_t>>();
      else if (key == "alpha_sums") config.suite.alpha_sums = value.get<std::vector<double>>();
      else if (key == "t_values") config.suite.t_values = value.get<std::vector<double>>();
      else if (key == "t_max") config.t_max = value.get<unsigned>();
      else if (key == "k_max") config.k_max = value.get<std::size_t>();
      else if (key == "tolerance") config.tolerance = value.get<double>();
      else if (key == "fixtures") {
        for (const auto& [name, verdict] : value.items()) {
          config.fixture_expectations[name] = parse_verdict(verdict.get<std::string>());
        }
      } else {
        throw UsageError(config.config_path + ": unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw UsageError(config.config_path + ": " + e.what());
  }
}

void validate(const RunConfig& config) {
  if (!(config.tolerance > 0.0)) throw UsageError("tolerance must be positive");
  if (config.k_max < 2) throw UsageError("k-max must be at least 2");
  if (config.t_max > 60) throw UsageError("t-max exponent must be at most 60");
  const SuiteConfig& s = config.suite;
  if (s.n_min < 1 || s.n_min > s.n_max) throw UsageError("need 1 <= n_min <= n_max");
  if (s.densities.empty() || s.family_sizes.empty() || s.alpha_sums.empty() || s.t_values.empty()) {
    throw UsageError("suite grids must be nonempty");
  }
  for (double d : s.densities) {
    if (!(d > 0.0 && d <= 1.0)) throw UsageError("densities must lie in (0, 1]");
  }
  for (std::size_t m : s.family_sizes) {
    if (m < 2) throw UsageError("family sizes must be at least 2");
  }
}

// spectrum ------------------------------------------------------------------

int cmd_spectrum(const RunConfig& config, std::ostream& out) {
  const Matrix a = load_input(config);
  const SpectrumReport r = spectrum_report(a, config.eigenvectors);
  if (config.json_output()) {
    out << to_json(r) << "\n";
  } else {
    out << to_text(r);
  }
  return 0;
}

// asymptotics ---------------------------------------------------------------

int cmd_asymptotics(const RunConfig& config, std::ostream& out) {
  const Matrix a = load_input(config);
  const bool needs_index = config.which != "bapat";
  std::size_t i = 0;
  if (needs_index) {
    if (!config.index) throw UsageError("--index is required for " + config.which);
    if (*config.index < 1 || *config.index > a.size()) {
      throw UsageError("--index must lie in 1.." + std::to_string(a.size()));
    }
    i = *config.index - 1;
  }
  LimitTrace trace;
  if (config.which == "schur") trace = schur_trace(a, i, geometric_grid(config.t_max));
  else if (config.which == "maxpow") trace = max_power_trace(a, i, config.k_max);
  else if (config.which == "classpow") trace = classical_power_trace(a, i, config.k_max);
  else trace = bapat_trace(a, config.k_max);
  const TraceCheck check = check_trace(trace, config.tolerance);
  if (config.json_output()) {
    out << to_json(trace, check) << "\n";
  } else {
    out << to_text(trace, check);
  }
  return check.ok() ? 0 : 1;
}

// calculus ------------------------------------------------------------------

int cmd_calculus(const RunConfig& config, std::ostream& out) {
  const Matrix a = load_input(config);
  PowerSeries f;
  try {
    f = PowerSeries::parse(config.series);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::optional<Matrix> fmax;
  std::size_t max_terms = 0;
  std::vector<CheckReport> reports;
  if (!f.is_signed()) {
    try {
      const MaxSeriesResult res = eval_matrix_max_detailed(f, a, 0);
      fmax = res.value;
      max_terms = res.terms;
    } catch (const SeriesDomainError& e) {
      throw UsageError(e.what());
    }
    reports.push_back(check_spectral_map_max(f, a));
  }
  std::optional<Matrix> fdist;
  std::size_t dist_terms = 0;
  try {
    const ClassicalSeriesResult res = eval_matrix_classical_detailed(f, a);
    fdist = res.value;
    dist_terms = res.terms;
    reports.push_back(check_spectral_map_dist(f, a));
  } catch (const SeriesDomainError& e) {
    reports.push_back(not_applicable("spectral_map_dist", "sigma_D(f(A)) = f(sigma_D(A))", e.what()));
  }

  bool violated = false;
  for (const CheckReport& r : reports) violated = violated || !r.passed();
  if (config.json_output()) {
    json j = {{"series", f.to_string()}};
    j["max"] = fmax ? json{{"matrix", matrix_rows(*fmax)}, {"terms", max_terms}} : json(nullptr);
    j["classical"] = fdist ? json{{"matrix", matrix_rows(*fdist)}, {"terms", dist_terms}} : json(nullptr);
    json list = json::array();
    for (const CheckReport& r : reports) list.push_back(json::parse(to_json(r)));
    j["reports"] = list;
    out << j.dump() << "\n";
  } else {
    out << "f = " << f.to_string() << "\n";
    if (fmax) out << "max-times f(A) (" << max_terms << " terms):\n" << matrix_text(*fmax);
    if (fdist) out << "classical f(A) (" << dist_terms << " terms):\n" << matrix_text(*fdist);
    for (const CheckReport& r : reports) out << to_text(r) << "\n";
  }
  return violated ? 1 : 0;
}

// verify --------------------------------------------------------------------

CheckReport identity_report(std::string key, std::string statement, double lhs, double rhs, double tol,
                            const Matrix& a) {
  CheckReport r;
  r.key = std::move(key);
  r.statement = std::move(statement);
  r.digest = Digest().add(a).hex();
  judge_identity(r, lhs, rhs, tol);
  return r;
}

CheckReport chain_report(std::string key, std::string statement, std::vector<double> chain, const Matrix& a) {
  CheckReport r;
  r.key = std::move(key);
  r.statement = std::move(statement);
  r.digest = Digest().add(a).hex();
  judge_chain(r, std::move(chain));
  return r;
}

/// Keeps the report closest to failing: violated, then near-tight, then the
/// smallest relative slack.
void keep_worst(std::optional<CheckReport>& worst, CheckReport r) {
  auto rank = [](const CheckReport& c) {
    return c.verdict == Verdict::violated ? 2 : c.verdict == Verdict::near_tight ? 1 : 0;
  };
  auto rel = [](const CheckReport& c) { return c.slack / std::max(1.0, std::abs(c.rhs)); };
  if (!worst || rank(r) > rank(*worst) || (rank(r) == rank(*worst) && rel(r) < rel(*worst))) worst = std::move(r);
}

std::vector<CheckReport> fixture_reports(const RunConfig& config) {
  std::vector<CheckReport> out;
  std::map<std::string, Verdict> pending = config.fixture_expectations;
  for (const Fixture& f : pinned_fixtures()) {
    Verdict expected = f.expected;
    if (auto it = pending.find(f.name); it != pending.end()) {
      expected = it->second;
      pending.erase(it);
    }
    const CheckReport actual = run_check(f.key, f.inputs);
    CheckReport r = actual;
    r.key = "fixture:" + f.key;
    r.verdict = actual.verdict == expected ? Verdict::holds : Verdict::violated;
    r.note = f.name + ": expected " + to_string(expected) + ", got " + to_string(actual.verdict);
    out.push_back(std::move(r));
  }
  if (!pending.empty()) throw UsageError("unknown fixture '" + pending.begin()->first + "'");
  return out;
}

std::vector<CheckReport> oracle_reports(const RunConfig& config) {
  std::vector<CheckReport> out;
  std::mt19937_64 rng(config.seed * 0x9e3779b97f4a7c15ULL + 1);
  oracles::GeneratorSpec spec;
  spec.n_min = 2;
  spec.n_max = 7;
  const std::vector<double> densities{0.3, 0.5, 0.8};
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    spec.density = densities[trial % densities.size()];
    const Matrix a = oracles::generate(spec, rng);
    const std::size_t n = a.size();
    const Condensation c = condense(a);
    const double r = max_cycle_mean(a);
    const double rho = spectral_radius(a);
    out.push_back(identity_report("oracle_r_max", "r(A) = max simple-cycle geometric mean", r,
                                  oracles::mcgm_enumerate(a), 1e-12, a));

    std::optional<CheckReport> local, sandwich, schur, power;
    const double t = 1.0 + static_cast<double>(trial % 4) / 2.0;
    const unsigned m = 2 + trial % 3;
    const Matrix at = hadamard_power(a, t);
    const Matrix am = classical_power(a, m);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string at_i = " (i = " + std::to_string(i + 1) + ")";
      const double ri = local_r(c, i);
      const double rhoi = local_rho(c, i);
      CheckReport lr = identity_report("oracle_local_r", "r_i(A) = cycle characterization", ri,
                                       oracles::local_r_enumerate(a, i), 1e-12, a);
      lr.note = at_i;
      keep_worst(local, lr);
      CheckReport sw = chain_report("sandwich_local", "r_i(A) <= rho_i(A) <= n r_i(A)",
                                    {ri, rhoi, static_cast<double>(n) * ri}, a);
      sw.note = at_i;
      keep_worst(sandwich, sw);
      CheckReport sp = identity_report("hadamard_power_identity", "r_i(A^(t)) = r_i(A)^t", local_r(at, i),
                                       std::pow(ri, t), 1e-9, a);
      sp.note = at_i + " t = " + format_text(t);
      keep_worst(schur, sp);
      CheckReport pw = identity_report("classical_power_identity", "rho_i(A^m) = rho_i(A)^m", local_rho(am, i),
                                       std::pow(rhoi, m), 1e-9, a);
      pw.note = at_i + " m = " + std::to_string(m);
      keep_worst(power, pw);
    }
    out.push_back(*local);
    out.push_back(*sandwich);
    out.push_back(chain_report("sandwich_global", "r(A) <= rho(A) <= n r(A)",
                               {r, rho, static_cast<double>(n) * r}, a));
    out.push_back(*schur);
    out.push_back(*power);
  }
  return out;
}

std::vector<CheckReport> calculus_reports(const RunConfig& config) {
  std::vector<CheckReport> out;
  std::mt19937_64 rng(config.seed * 0x9e3779b97f4a7c15ULL + 2);
  std::uniform_real_distribution<double> target(0.2, 2.0);
  oracles::GeneratorSpec spec;
  spec.n_min = 2;
  spec.n_max = 6;
  const std::size_t count = std::max<std::size_t>(4, config.trials / 10);
  for (std::size_t trial = 0; trial < count; ++trial) {
    spec.structure = trial % 2 ? oracles::Structure::block_triangular : oracles::Structure::general;
    Matrix a = oracles::generate(spec, rng);
    // Bring the spectral radius to a moderate size so exp(A) stays finite.
    const double rho = spectral_radius(a);
    if (rho > 0.0) a = scale(a, target(rng) / rho);
    const double radius = 1.5 * spectral_radius(a) + 0.5;
    for (const PowerSeries& f :
         {PowerSeries::exp(), PowerSeries::cosh(), PowerSeries::sinh(), PowerSeries::geometric(radius)}) {
      out.push_back(check_spectral_map_max(f, a));
      out.push_back(check_spectral_map_dist(f, a));
    }
    const MaxPolynomial pmax{2, {{1.0, {1, 0}}, {0.5, {1, 1}}, {0.25, {0, 0}}}};
    for (CheckReport& r : check_commuting_family(pmax, {a, max_mul(a, a)})) out.push_back(std::move(r));
    const ClassicalPolynomial pdist{2, {{1.0, {1, 0}}, {0.5, {1, 1}}, {0.25, {0, 0}}}};
    for (CheckReport& r : check_commuting_family(pdist, {a, mul(a, a)})) out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckReport> trace_reports(const RunConfig& config) {
  std::vector<CheckReport> out;
  std::mt19937_64 rng(config.seed * 0x9e3779b97f4a7c15ULL + 3);
  oracles::GeneratorSpec spec;
  spec.n_min = 2;
  spec.n_max = 6;
  const std::size_t count = std::max<std::size_t>(4, config.trials / 25);
  for (std::size_t trial = 0; trial < count; ++trial) {
    const Matrix a = oracles::generate(spec, rng);
    const std::size_t i = trial % a.size();
    for (const LimitTrace& trace :
         {schur_trace(a, i, geometric_grid(config.t_max)), max_power_trace(a, i, config.k_max),
          classical_power_trace(a, i, config.k_max), bapat_trace(a, config.k_max)}) {
      const TraceCheck check = check_trace(trace, config.tolerance);
      CheckReport r;
      r.key = "trace_" + to_string(trace.kind);
      r.statement = "terminal value within tolerance of the limit; bounds and monotonicity at every grid point";
      r.chain = {trace.values.back(), trace.limit};
      r.lhs = trace.values.back();
      r.rhs = trace.limit;
      r.slack = check.terminal_error;
      r.verdict = check.ok() ? Verdict::holds : Verdict::violated;
      r.digest = Digest().add(a).hex();
      if (!check.ok()) {
        r.note = std::string(check.monotone ? "" : "monotone ") + (check.bounds ? "" : "bounds ") +
                 (check.converged ? "" : "convergence ") + (check.tightening ? "" : "tightening ") + "failed";
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

int cmd_verify(RunConfig config, std::ostream& out) {
  if (!config.config_path.empty()) apply_config_file(config);
  validate(config);
  config.suite.trials = config.trials;
  config.suite.seed = config.seed;
  if (!config.dump_dir.empty()) config.suite.dump_dir = config.dump_dir;

  std::vector<CheckReport> reports = run_suite(config.suite).reports;
  for (auto* part : {&fixture_reports, &oracle_reports, &calculus_reports, &trace_reports}) {
    for (CheckReport& r : (*part)(config)) reports.push_back(std::move(r));
  }

  std::size_t violations = 0;
  for (const CheckReport& r : reports) violations += r.verdict == Verdict::violated;
  if (config.json_output()) {
    for (const CheckReport& r : reports) out << to_json(r) << "\n";
    return violations ? 1 : 0;
  }

  std::map<std::string, std::map<Verdict, std::size_t>> tally;
  for (const CheckReport& r : reports) ++tally[r.key][r.verdict];
  out << std::left;
  for (const auto& [key, counts] : tally) {
    auto get = [&](Verdict v) {
      auto it = counts.find(v);
      return it == counts.end() ? std::size_t{0} : it->second;
    };
    out << key << ": " << get(Verdict::holds) << " holds, " << get(Verdict::near_tight) << " near-tight, "
        << get(Verdict::not_applicable) << " not-applicable, " << get(Verdict::violated) << " violated\n";
  }
  for (const CheckReport& r : reports) {
    if (r.verdict == Verdict::violated) out << to_text(r) << "  [" << r.digest << "]\n";
  }
  out << reports.size() << " checks, " << violations << " violated: " << (violations ? "FAIL" : "PASS") << "\n";
  return violations ? 1 : 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Max-algebra and distinguished spectra of nonnegative matrices", "maxspec"};
  app.require_subcommand(1);

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", config.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag_callback("--json", [&] { config.format = "json"; }, "Same as --format json");
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", config.input, "Matrix file (CSV or JSON)")->required();
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "Print the spectral profile of a matrix");
  add_input(spectrum);
  add_format(spectrum);
  spectrum->add_flag("--eigenvectors", config.eigenvectors, "Add a verified eigenvector per spectral value");

  CLI::App* asym = app.add_subcommand("asymptotics", "Print a limit trace and check its invariants");
  add_input(asym);
  add_format(asym);
  asym->add_option("--which", config.which, "Sequence")
      ->required()
      ->check(CLI::IsMember({"schur", "maxpow", "classpow", "bapat"}));
  asym->add_option("--index", config.index, "Vertex (1-based)");
  asym->add_option("--t-max", config.t_max, "Largest exponent e of the grid t = 2^0 .. 2^e");
  asym->add_option("--k-max", config.k_max, "Largest power k");
  asym->add_option("--tolerance", config.tolerance, "Relative convergence tolerance");

  CLI::App* calc = app.add_subcommand("calculus", "Evaluate a power series of a matrix and check spectral mapping");
  add_input(calc);
  add_format(calc);
  calc->add_option("--series", config.series, "exp | cosh | sinh | geom:<lambda> | coeffs:a0,a1,...")->required();

  CLI::App* verify = app.add_subcommand("verify", "Run the inequality suite, fixtures and cross-validations");
  add_format(verify);
  verify->add_option("--config", config.config_path, "JSON config file");
  verify->add_option("--seed", config.seed, "Random seed");
  verify->add_option("--trials", config.trials, "Random trials");
  verify->add_option("--t-max", config.t_max, "Largest exponent of the Hadamard-power grid");
  verify->add_option("--k-max", config.k_max, "Largest power in the power traces");
  verify->add_option("--tolerance", config.tolerance, "Relative convergence tolerance for traces");
  verify->add_option("--dump-dir", config.dump_dir, "Directory for violation reproducers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "maxspec: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!(config.tolerance > 0.0)) throw UsageError("tolerance must be positive");
    if (spectrum->parsed()) return cmd_spectrum(config, out);
    if (asym->parsed()) return cmd_asymptotics(config, out);
    if (calc->parsed()) return cmd_calculus(config, out);
    return cmd_verify(config, out);
  } catch (const UsageError& e) {
    err << "maxspec: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "maxspec: error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace maxspec::cli
