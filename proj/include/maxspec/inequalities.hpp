#pragma once

// Registry of spectral-radius and norm inequalities for Hadamard products,
// each evaluated into a CheckReport.
//
// Notation in statements: r = max cycle geometric mean, r_i / r_x = local
// max-algebra radius at e_i / x, rho_x = local classical radius at x, (x)
// = max product, o = Hadamard product, A^(t) = Hadamard power, ||.|| = max
// entry, P_j = cyclic product A_j A_{j+1} .. A_m A_1 .. A_{j-1} (max product
// in r rows, classical product in rho rows).

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxspec/check_report.hpp"
#include "maxspec/matrix.hpp"

namespace maxspec {

struct CheckInputs {
  /// A_1 .. A_m; rows with two operands read A = matrices[0], B = matrices[1].
  /// For rho_B_chain: l * m matrices, row-major, A_{ij} at (i-1) m + (j-1).
  std::vector<Matrix> matrices;
  /// Number of rows l of the rho_B_chain grid.
  std::size_t rows = 1;
  /// Vector for the r_x / rho_x rows.
  Vector x;
  /// Weights alpha_1 .. alpha_m.
  std::vector<double> alpha;
  double t = 2.0;
  /// 0-based vertex for the r_{e_i} rows.
  std::size_t index = 0;
};

struct InequalityRow {
  std::string key;
  std::string statement;
  /// False for the pinned non-theorems, which are expected to fail on their
  /// counterexamples and are excluded from suite violation counts.
  bool proved = true;
  /// Exact number of matrices, or 0 for any m >= 1.
  std::size_t arity = 0;
  bool uses_x = false;
  bool uses_alpha = false;
  bool uses_t = false;
  bool uses_index = false;
  std::function<CheckReport(const CheckInputs&)> evaluate;
};

const std::vector<InequalityRow>& registry();
/// Throws std::out_of_range for an unknown key.
const InequalityRow& registry_row(const std::string& key);

/// Evaluates one row. Inputs violating the row's hypotheses (arity, t >= 1,
/// alpha > 0, sum alpha >= 1, index range, dimension of x) give a
/// not-applicable report.
CheckReport run_check(const std::string& key, const CheckInputs& inputs);

/// Digest of everything in the inputs.
std::string digest(const CheckInputs& inputs);

struct SuiteConfig {
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  std::size_t n_min = 2;
  std::size_t n_max = 6;
  std::vector<double> densities{0.3, 0.7, 1.0};
  std::vector<std::size_t> family_sizes{2, 3, 4};
  std::vector<double> alpha_sums{1.0, 1.5, 3.0};
  std::vector<double> t_values{1.0, 1.5, 2.5};
  /// When set, every violation writes a reproducer JSON file here.
  std::optional<std::filesystem::path> dump_dir;
};

struct SuiteResult {
  std::vector<CheckReport> reports;
  std::size_t violations = 0;
  std::vector<std::filesystem::path> dumps;
};

/// Random inputs for one trial (deterministic in config and trial).
CheckInputs draw_inputs(const SuiteConfig& config, std::size_t trial);
/// Runs every proved row on draw_inputs(config, trial) for each trial.
SuiteResult run_suite(const SuiteConfig& config);

/// {key, matrices, x, alpha, t, index, lhs, rhs} as JSON text.
std::string reproducer_json(const std::string& key, const CheckInputs& inputs, const CheckReport& report);

struct Fixture {
  std::string name;
  std::string key;
  CheckInputs inputs;
  Verdict expected;
  double expected_lhs;
  double expected_rhs;
};

/// The two known counterexample pairs, evaluated on both the failing
/// local analogues and the rows that still hold.
std::vector<Fixture> pinned_fixtures();

}  // namespace maxspec
