#pragma once

// Structured verdicts for inequality and identity checks.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxspec/matrix.hpp"

namespace maxspec {

enum class Verdict { holds, violated, near_tight, not_applicable };

std::string to_string(Verdict v);

/// Float noise allowed on each link a <= b: 1e-12 * max(1, b).
inline constexpr double kLinkTolerance = 1e-12;
/// A chain that holds with total slack below 1e-9 * max(1, rhs) is near-tight.
inline constexpr double kNearTightTolerance = 1e-9;

struct CheckReport {
  std::string key;
  /// Formula being checked, in plain notation.
  std::string statement;
  /// Values a_0 <= a_1 <= ... claimed by the statement; lhs is the first,
  /// rhs the last. Identities carry two equal entries.
  std::vector<double> chain;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  Verdict verdict = Verdict::not_applicable;
  /// Hex FNV-1a hash of the inputs.
  std::string digest;
  std::string note;

  bool passed() const { return verdict != Verdict::violated; }
};

/// Judges an inequality chain a_0 <= a_1 <= ... and fills lhs, rhs, slack.
void judge_chain(CheckReport& report, std::vector<double> chain);
/// Judges lhs == rhs within rel_tol * max(|lhs|, |rhs|).
void judge_identity(CheckReport& report, double lhs, double rhs, double rel_tol);
CheckReport not_applicable(std::string key, std::string statement, std::string note);

/// 64-bit FNV-1a accumulator over doubles, integers and strings.
class Digest {
 public:
  Digest& add(double v);
  Digest& add(std::uint64_t v);
  Digest& add(std::string_view s);
  Digest& add(const Matrix& a);
  Digest& add(const Vector& x);
  Digest& add(std::span<const Matrix> as);
  std::string hex() const;

 private:
  void bytes(const void* p, std::size_t len);
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace maxspec
