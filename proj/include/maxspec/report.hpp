#pragma once

// Rendering of check reports, spectral profiles and limit traces.
//
// JSON output is a single line per object with doubles written in their
// shortest round-trip form (at most 17 significant digits); text output
// uses 6 significant digits. Vertex and class indices are 1-based in both.
//
// CheckReport JSON:
//   {"key", "statement", "chain": [..], "lhs", "rhs", "slack",
//    "verdict": "holds" | "violated" | "near-tight" | "not-applicable",
//    "digest", "note"}
// Spectrum JSON:
//   {"n", "classes": [[v, ..], ..], "r": [..], "rho": [..],
//    "r_witness": [class, ..], "rho_witness": [class, ..],
//    "sigma_max": [..], "sigma_dist": [..],
//    "eigenvectors": {"max": [{"value", "witness", "vector", "residual"}, ..],
//                     "dist": [..]}}          (only with eigenvectors)
// Trace JSON:
//   {"kind", "index" (absent for bapat), "n", "limit", "values_side",
//    "claims_nonincreasing", "rows": [{"parameter", "value", "companion",
//    "value_bound", "companion_bound"}, ..], "monotone", "bounds",
//    "terminal_error", "converged", "tightening", "ok"}

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxspec/asymptotics.hpp"
#include "maxspec/check_report.hpp"
#include "maxspec/matrix.hpp"
#include "maxspec/specgraph.hpp"

namespace maxspec {

/// Eigenvector for one spectral value, built at the lowest vertex whose
/// local radius equals the value.
struct EigenEntry {
  double value = 0.0;
  /// 0-based witness vertex.
  std::size_t witness = 0;
  Vector vector;
  double residual = 0.0;

  bool operator==(const EigenEntry&) const = default;
};

struct SpectrumReport {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> classes;
  SpectralProfile profile;
  std::optional<std::vector<EigenEntry>> max_vectors;
  std::optional<std::vector<EigenEntry>> dist_vectors;
};

bool operator==(const SpectrumReport& a, const SpectrumReport& b);

SpectrumReport spectrum_report(const Matrix& a, bool eigenvectors);

std::string to_json(const CheckReport& r);
std::string to_text(const CheckReport& r);
/// Throws std::invalid_argument on malformed input.
CheckReport check_report_from_json(std::string_view text);

std::string to_json(const SpectrumReport& r);
std::string to_text(const SpectrumReport& r);
SpectrumReport spectrum_report_from_json(std::string_view text);

std::string to_json(const LimitTrace& trace, const TraceCheck& check);
std::string to_text(const LimitTrace& trace, const TraceCheck& check);

std::string format_text(double v);

}  // namespace maxspec
