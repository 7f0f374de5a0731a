#include "maxspec/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "maxspec/specgraph.hpp"

namespace maxspec {

namespace {

double exp_or_zero(double log_value) { return log_value == kNegInf ? 0.0 : std::exp(log_value); }

void check_index(const Matrix& a, std::size_t i) {
  if (i >= a.size()) throw std::out_of_range("vertex index out of range");
}

void check_k_max(std::size_t k_max) {
  if (k_max == 0) throw std::invalid_argument("k_max must be at least 1");
}

std::vector<double> integer_grid(std::size_t k_max) {
  std::vector<double> grid(k_max);
  for (std::size_t k = 0; k < k_max; ++k) grid[k] = static_cast<double>(k + 1);
  return grid;
}

/// Fills values / companion from ln of the underlying radius at each grid
/// point; the companion shifts by ln n before taking the root.
void fill(LimitTrace& trace, const std::vector<double>& logs) {
  const double log_n = std::log(static_cast<double>(trace.n));
  const double shift = trace.values_side == Side::above ? -log_n : log_n;
  for (std::size_t p = 0; p < logs.size(); ++p) {
    const double s = trace.grid[p];
    trace.values.push_back(exp_or_zero(logs[p] == kNegInf ? kNegInf : logs[p] / s));
    trace.companion.push_back(exp_or_zero(logs[p] == kNegInf ? kNegInf : (logs[p] + shift) / s));
  }
}

double max_log_mcgm(const Condensation& c) {
  return *std::max_element(c.log_mcgm.begin(), c.log_mcgm.end());
}

}  // namespace

std::string to_string(TraceKind kind) {
  switch (kind) {
    case TraceKind::schur: return "schur";
    case TraceKind::max_power: return "maxpow";
    case TraceKind::classical_power: return "classpow";
    case TraceKind::bapat: return "bapat";
  }
  return "unknown";
}

std::vector<double> geometric_grid(unsigned max_exponent) {
  std::vector<double> grid;
  for (unsigned e = 0; e <= max_exponent; ++e) grid.push_back(std::ldexp(1.0, static_cast<int>(e)));
  return grid;
}

LimitTrace schur_trace(const Matrix& a, std::size_t i, const std::vector<double>& t_grid) {
  check_index(a, i);
  if (t_grid.empty()) throw std::invalid_argument("schur_trace: empty grid");
  for (std::size_t p = 0; p < t_grid.size(); ++p) {
    if (!(t_grid[p] > 0.0) || !std::isfinite(t_grid[p]) || (p > 0 && !(t_grid[p] > t_grid[p - 1]))) {
      throw std::invalid_argument("schur_trace: grid must be positive and strictly increasing");
    }
  }
  LimitTrace trace;
  trace.kind = TraceKind::schur;
  trace.index = i;
  trace.n = a.size();
  trace.grid = t_grid;
  trace.values_side = Side::above;
  trace.claims_nonincreasing = true;
  trace.limit = local_r(a, i);

  const LogMatrix w(a);
  std::vector<double> logs;
  for (double t : t_grid) logs.push_back(log_local_rho(condense(w.hadamard_power(t)), i));
  fill(trace, logs);
  return trace;
}

LimitTrace max_power_trace(const Matrix& a, std::size_t i, std::size_t k_max) {
  check_index(a, i);
  check_k_max(k_max);
  LimitTrace trace;
  trace.kind = TraceKind::max_power;
  trace.index = i;
  trace.n = a.size();
  trace.grid = integer_grid(k_max);
  trace.values_side = Side::above;
  trace.limit = local_r(a, i);

  const LogMatrix w(a);
  LogMatrix power = w;
  std::vector<double> logs;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) power = log_max_mul(power, w);
    logs.push_back(log_local_rho(condense(power), i));
  }
  fill(trace, logs);
  return trace;
}

LimitTrace classical_power_trace(const Matrix& a, std::size_t i, std::size_t k_max) {
  check_index(a, i);
  check_k_max(k_max);
  LimitTrace trace;
  trace.kind = TraceKind::classical_power;
  trace.index = i;
  trace.n = a.size();
  trace.grid = integer_grid(k_max);
  trace.values_side = Side::below;
  trace.limit = local_rho(a, i);

  const LogMatrix w(a);
  LogMatrix power = w;
  std::vector<double> logs;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) power = log_mul(power, w);
    logs.push_back(log_local_r(condense(power), i));
  }
  fill(trace, logs);
  return trace;
}

LimitTrace bapat_trace(const Matrix& a, std::size_t k_max) {
  check_k_max(k_max);
  if (a.size() == 0) throw std::invalid_argument("bapat_trace: empty matrix");
  LimitTrace trace;
  trace.kind = TraceKind::bapat;
  trace.n = a.size();
  trace.grid = integer_grid(k_max);
  trace.values_side = Side::below;
  trace.limit = spectral_radius(a);

  const LogMatrix w(a);
  LogMatrix power = w;
  std::vector<double> logs;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) power = log_mul(power, w);
    logs.push_back(max_log_mcgm(condense(power)));
  }
  fill(trace, logs);
  return trace;
}

TraceCheck check_trace(const LimitTrace& trace, double tol) {
  TraceCheck out;
  const double limit = trace.limit;
  const std::size_t m = trace.values.size();
  const bool above = trace.values_side == Side::above;
  auto on_side = [&](double v, bool want_above) {
    return want_above ? v >= limit * (1 - kBoundSlack) : v <= limit * (1 + kBoundSlack);
  };
  for (std::size_t p = 0; p < m; ++p) {
    out.value_bound.push_back(on_side(trace.values[p], above));
    out.companion_bound.push_back(on_side(trace.companion[p], !above));
    out.bounds = out.bounds && out.value_bound.back() && out.companion_bound.back();
    if (trace.claims_nonincreasing && p > 0 &&
        trace.values[p] > trace.values[p - 1] * (1 + kMonotoneSlack)) {
      out.monotone = false;
    }
  }
  if (m == 0) return out;

  const double last = trace.values.back();
  if (limit == 0.0) {
    out.terminal_error = last == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    out.terminal_error = std::abs(last - limit) / limit;
  }
  out.converged = out.terminal_error <= tol;

  const double half = trace.grid.back() / 2;
  for (std::size_t p = m; p-- > 0;) {
    if (trace.grid[p] <= half) {
      if (trace.grid[p] == half) {
        out.tightening = std::abs(last - limit) <=
                         std::abs(trace.values[p] - limit) + 1e-12 * std::max(1.0, limit);
      }
      break;
    }
  }
  return out;
}

}  // namespace maxspec
