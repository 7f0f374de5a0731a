#include "maxspec/check_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace maxspec {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::near_tight: return "near-tight";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

void judge_chain(CheckReport& report, std::vector<double> chain) {
  report.chain = std::move(chain);
  const auto& c = report.chain;
  report.lhs = c.front();
  report.rhs = c.back();
  report.slack = report.rhs - report.lhs;
  bool violated = false;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const double a = c[k], b = c[k + 1];
    if (!(a <= b + kLinkTolerance * std::max(1.0, b))) violated = true;
    min_gap = std::min(min_gap, b - a);
  }
  if (violated) {
    report.verdict = Verdict::violated;
  } else if (min_gap < kNearTightTolerance * std::max(1.0, report.rhs)) {
    report.verdict = Verdict::near_tight;
  } else {
    report.verdict = Verdict::holds;
  }
}

void judge_identity(CheckReport& report, double lhs, double rhs, double rel_tol) {
  report.chain = {lhs, rhs};
  report.lhs = lhs;
  report.rhs = rhs;
  report.slack = rhs - lhs;
  const bool equal = lhs == rhs || std::abs(lhs - rhs) <= rel_tol * std::max(std::abs(lhs), std::abs(rhs));
  report.verdict = equal ? Verdict::holds : Verdict::violated;
}

CheckReport not_applicable(std::string key, std::string statement, std::string note) {
  CheckReport r;
  r.key = std::move(key);
  r.statement = std::move(statement);
  r.note = std::move(note);
  r.verdict = Verdict::not_applicable;
  return r;
}

void Digest::bytes(const void* p, std::size_t len) {
  const auto* b = static_cast<const unsigned char*>(p);
  for (std::size_t k = 0; k < len; ++k) {
    h_ ^= b[k];
    h_ *= 0x100000001b3ULL;
  }
}

Digest& Digest::add(double v) {
  if (v == 0.0) v = 0.0;  // fold -0
  bytes(&v, sizeof v);
  return *this;
}

Digest& Digest::add(std::uint64_t v) {
  bytes(&v, sizeof v);
  return *this;
}

Digest& Digest::add(std::string_view s) {
  add(static_cast<std::uint64_t>(s.size()));
  bytes(s.data(), s.size());
  return *this;
}

Digest& Digest::add(const Matrix& a) {
  add(static_cast<std::uint64_t>(a.size()));
  for (double v : a.entries()) add(v);
  return *this;
}

Digest& Digest::add(const Vector& x) {
  add(static_cast<std::uint64_t>(x.size()));
  for (double v : x.entries()) add(v);
  return *this;
}

Digest& Digest::add(std::span<const Matrix> as) {
  add(static_cast<std::uint64_t>(as.size()));
  for (const Matrix& a : as) add(a);
  return *this;
}

std::string Digest::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
  return buf;
}

}  // namespace maxspec
