#include "maxspec/report.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace maxspec {

namespace {

using nlohmann::json;

/// nlohmann writes non-finite doubles as null; read them back as NaN.
double number(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

std::vector<double> numbers(const json& j) {
  std::vector<double> out;
  for (const json& v : j) out.push_back(number(v));
  return out;
}

json entries(const Vector& v) { return json(std::vector<double>(v.entries().begin(), v.entries().end())); }

json eigen_json(const std::vector<EigenEntry>& list) {
  json out = json::array();
  for (const EigenEntry& e : list) {
    out.push_back({{"value", e.value}, {"witness", e.witness + 1}, {"vector", entries(e.vector)},
                   {"residual", e.residual}});
  }
  return out;
}

std::vector<EigenEntry> eigen_from(const json& j) {
  std::vector<EigenEntry> out;
  for (const json& e : j) {
    out.push_back({number(e.at("value")), e.at("witness").get<std::size_t>() - 1, Vector(numbers(e.at("vector"))),
                   number(e.at("residual"))});
  }
  return out;
}

Verdict verdict_from(const std::string& s) {
  for (Verdict v : {Verdict::holds, Verdict::violated, Verdict::near_tight, Verdict::not_applicable}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (std::size_t x : v) out.push_back(x + 1);
  return out;
}

std::vector<std::size_t> zero_based(const json& j) {
  std::vector<std::size_t> out;
  for (const json& x : j) out.push_back(x.get<std::size_t>() - 1);
  return out;
}

json parse_object(std::string_view text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad JSON: ") + e.what());
  }
}

std::string list_text(const std::vector<double>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_text(v[i]);
  return out + "}";
}

std::string vector_text(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_text(v[i]);
  return out + ")";
}

}  // namespace

std::string format_text(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

bool operator==(const SpectrumReport& a, const SpectrumReport& b) {
  const SpectralProfile& p = a.profile;
  const SpectralProfile& q = b.profile;
  return a.n == b.n && a.classes == b.classes && p.r == q.r && p.rho == q.rho && p.sigma_max == q.sigma_max &&
         p.sigma_dist == q.sigma_dist && p.r_witness == q.r_witness && p.rho_witness == q.rho_witness &&
         a.max_vectors == b.max_vectors && a.dist_vectors == b.dist_vectors;
}

SpectrumReport spectrum_report(const Matrix& a, bool eigenvectors) {
  const Condensation c = condense(a);
  SpectrumReport out;
  out.n = a.size();
  out.classes = c.classes;
  out.profile = spectrum(a, c);
  if (!eigenvectors) return out;

  auto build = [&](const std::vector<double>& sigma, const std::vector<double>& local, bool max) {
    std::vector<EigenEntry> list;
    for (double value : sigma) {
      std::size_t witness = 0;
      while (std::abs(local[witness] - value) > kSpectrumMergeTolerance * std::max(local[witness], value)) {
        ++witness;
      }
      EigenEntry e;
      e.value = local[witness];
      e.witness = witness;
      e.vector = max ? max_eigenvector(a, e.value, witness) : dist_eigenvector(a, e.value, witness);
      e.residual = max ? max_residual(a, e.vector, e.value) : dist_residual(a, e.vector, e.value);
      list.push_back(std::move(e));
    }
    return list;
  };
  out.max_vectors = build(out.profile.sigma_max, out.profile.r, true);
  out.dist_vectors = build(out.profile.sigma_dist, out.profile.rho, false);
  return out;
}

std::string to_json(const CheckReport& r) {
  json j = {{"key", r.key},   {"statement", r.statement}, {"chain", r.chain},
            {"lhs", r.lhs},   {"rhs", r.rhs},             {"slack", r.slack},
            {"verdict", to_string(r.verdict)}, {"digest", r.digest}, {"note", r.note}};
  return j.dump();
}

std::string to_text(const CheckReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(15) << to_string(r.verdict) << std::setw(22) << r.key;
  if (r.verdict != Verdict::not_applicable) {
    os << " lhs " << format_text(r.lhs) << "  rhs " << format_text(r.rhs) << "  slack " << format_text(r.slack);
  }
  if (!r.note.empty()) os << "  (" << r.note << ")";
  return os.str();
}

CheckReport check_report_from_json(std::string_view text) {
  const json j = parse_object(text);
  try {
    CheckReport r;
    r.key = j.at("key").get<std::string>();
    r.statement = j.at("statement").get<std::string>();
    r.chain = numbers(j.at("chain"));
    r.lhs = number(j.at("lhs"));
    r.rhs = number(j.at("rhs"));
    r.slack = number(j.at("slack"));
    r.verdict = verdict_from(j.at("verdict").get<std::string>());
    r.digest = j.at("digest").get<std::string>();
    r.note = j.at("note").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad check report: ") + e.what());
  }
}

std::string to_json(const SpectrumReport& r) {
  json classes = json::array();
  for (const auto& cls : r.classes) classes.push_back(one_based(cls));
  json j = {{"n", r.n},
            {"classes", classes},
            {"r", r.profile.r},
            {"rho", r.profile.rho},
            {"r_witness", one_based(r.profile.r_witness)},
            {"rho_witness", one_based(r.profile.rho_witness)},
            {"sigma_max", r.profile.sigma_max},
            {"sigma_dist", r.profile.sigma_dist}};
  if (r.max_vectors && r.dist_vectors) {
    j["eigenvectors"] = {{"max", eigen_json(*r.max_vectors)}, {"dist", eigen_json(*r.dist_vectors)}};
  }
  return j.dump();
}

SpectrumReport spectrum_report_from_json(std::string_view text) {
  const json j = parse_object(text);
  try {
    SpectrumReport r;
    r.n = j.at("n").get<std::size_t>();
    for (const json& cls : j.at("classes")) r.classes.push_back(zero_based(cls));
    r.profile.r = numbers(j.at("r"));
    r.profile.rho = numbers(j.at("rho"));
    r.profile.r_witness = zero_based(j.at("r_witness"));
    r.profile.rho_witness = zero_based(j.at("rho_witness"));
    r.profile.sigma_max = numbers(j.at("sigma_max"));
    r.profile.sigma_dist = numbers(j.at("sigma_dist"));
    if (j.contains("eigenvectors")) {
      r.max_vectors = eigen_from(j.at("eigenvectors").at("max"));
      r.dist_vectors = eigen_from(j.at("eigenvectors").at("dist"));
    }
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad spectrum report: ") + e.what());
  }
}

std::string to_text(const SpectrumReport& r) {
  std::ostringstream os;
  const SpectralProfile& p = r.profile;
  os << "n = " << r.n << ", " << r.classes.size() << " classes\n";
  os << "sigma_max  = " << list_text(p.sigma_max) << "\n";
  os << "sigma_dist = " << list_text(p.sigma_dist) << "\n";
  os << std::left << std::setw(6) << "i" << std::setw(14) << "r_i" << std::setw(10) << "class" << std::setw(14)
     << "rho_i" << "class\n";
  for (std::size_t i = 0; i < r.n; ++i) {
    os << std::setw(6) << i + 1 << std::setw(14) << format_text(p.r[i]) << std::setw(10) << p.r_witness[i] + 1
       << std::setw(14) << format_text(p.rho[i]) << p.rho_witness[i] + 1 << "\n";
  }
  os << "classes:";
  for (std::size_t mu = 0; mu < r.classes.size(); ++mu) {
    os << " " << mu + 1 << "={";
    for (std::size_t k = 0; k < r.classes[mu].size(); ++k) os << (k ? "," : "") << r.classes[mu][k] + 1;
    os << "}";
  }
  os << "\n";
  auto vectors = [&](const char* name, const std::optional<std::vector<EigenEntry>>& list) {
    if (!list) return;
    for (const EigenEntry& e : *list) {
      os << name << " eigenvector for " << format_text(e.value) << " at i = " << e.witness + 1 << ": "
         << vector_text(e.vector) << "  residual " << format_text(e.residual) << "\n";
    }
  };
  vectors("max", r.max_vectors);
  vectors("dist", r.dist_vectors);
  return os.str();
}

std::string to_json(const LimitTrace& trace, const TraceCheck& check) {
  json rows = json::array();
  for (std::size_t k = 0; k < trace.grid.size(); ++k) {
    rows.push_back({{"parameter", trace.grid[k]},
                    {"value", trace.values[k]},
                    {"companion", trace.companion[k]},
                    {"value_bound", static_cast<bool>(check.value_bound[k])},
                    {"companion_bound", static_cast<bool>(check.companion_bound[k])}});
  }
  json j = {{"kind", to_string(trace.kind)},
            {"n", trace.n},
            {"limit", trace.limit},
            {"values_side", trace.values_side == Side::above ? "above" : "below"},
            {"claims_nonincreasing", trace.claims_nonincreasing},
            {"rows", rows},
            {"monotone", check.monotone},
            {"bounds", check.bounds},
            {"terminal_error", check.terminal_error},
            {"converged", check.converged},
            {"tightening", check.tightening},
            {"ok", check.ok()}};
  if (trace.kind != TraceKind::bapat) j["index"] = trace.index + 1;
  return j.dump();
}

std::string to_text(const LimitTrace& trace, const TraceCheck& check) {
  std::ostringstream os;
  os << to_string(trace.kind);
  if (trace.kind != TraceKind::bapat) os << " at i = " << trace.index + 1;
  os << ", n = " << trace.n << ", limit " << format_text(trace.limit) << " (values "
     << (trace.values_side == Side::above ? "above" : "below") << ")\n";
  const char* param = trace.kind == TraceKind::schur ? "t" : "k";
  os << std::left << std::setw(12) << param << std::setw(16) << "value" << std::setw(16) << "companion"
     << std::setw(16) << "limit" << "bounds\n";
  for (std::size_t k = 0; k < trace.grid.size(); ++k) {
    os << std::setw(12) << format_text(trace.grid[k]) << std::setw(16) << format_text(trace.values[k])
       << std::setw(16) << format_text(trace.companion[k]) << std::setw(16) << format_text(trace.limit)
       << (check.value_bound[k] && check.companion_bound[k] ? "ok" : "VIOLATED") << "\n";
  }
  if (trace.claims_nonincreasing) os << "monotone: " << (check.monotone ? "yes" : "NO") << "\n";
  os << "terminal error " << format_text(check.terminal_error) << " (" << (check.converged ? "converged" : "NOT converged")
     << ", " << (check.tightening ? "tightening" : "NOT tightening") << ")\n";
  os << (check.ok() ? "all trace invariants hold" : "trace invariants FAIL") << "\n";
  return os.str();
}

}  // namespace maxspec
