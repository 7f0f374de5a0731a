#include "maxspec/specgraph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "graph_detail.hpp"

namespace maxspec {

LogMatrix::LogMatrix(const Matrix& a) : n_(a.size()), w_(a.size() * a.size()) {
  const auto e = a.entries();
  for (std::size_t p = 0; p < w_.size(); ++p) w_[p] = e[p] > 0.0 ? std::log(e[p]) : kNegInf;
}

LogMatrix::LogMatrix(std::size_t n, std::vector<double> logs) : n_(n), w_(std::move(logs)) {
  if (w_.size() != n * n) throw DimensionError("LogMatrix: wrong entry count");
  for (double v : w_) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("LogMatrix: entries must be finite or -inf");
    }
  }
}

LogMatrix LogMatrix::hadamard_power(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("hadamard_power requires t > 0");
  std::vector<double> out = w_;
  for (double& v : out) {
    if (v != kNegInf) v *= t;
  }
  return LogMatrix(n_, std::move(out));
}

Matrix LogMatrix::exp() const {
  std::vector<double> out(w_.size());
  for (std::size_t p = 0; p < w_.size(); ++p) out[p] = w_[p] == kNegInf ? 0.0 : std::exp(w_[p]);
  return Matrix(n_, std::move(out));
}

LogMatrix log_max_mul(const LogMatrix& a, const LogMatrix& b) {
  if (a.size() != b.size()) throw DimensionError("log_max_mul: dimension mismatch");
  const std::size_t n = a.size();
  std::vector<double> out(n * n, kNegInf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!a.edge(i, k)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b.edge(k, j)) out[i * n + j] = std::max(out[i * n + j], a(i, k) + b(k, j));
      }
    }
  }
  return LogMatrix(n, std::move(out));
}

LogMatrix log_mul(const LogMatrix& a, const LogMatrix& b) {
  if (a.size() != b.size()) throw DimensionError("log_mul: dimension mismatch");
  const std::size_t n = a.size();
  const LogMatrix top = log_max_mul(a, b);
  std::vector<double> out(n * n, kNegInf);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double m = top(i, j);
      if (m == kNegInf) continue;
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (a.edge(i, k) && b.edge(k, j)) s += std::exp(a(i, k) + b(k, j) - m);
      }
      out[i * n + j] = m + std::log(s);
    }
  }
  return LogMatrix(n, std::move(out));
}

namespace detail {

std::vector<std::vector<std::size_t>> tarjan(const LogMatrix& w) {
  const std::size_t n = w.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t u = 0; u < n; ++u) {
      if (!w.edge(v, u)) continue;
      if (index[u] == kUnvisited) {
        visit(u);
        low[v] = std::min(low[v], low[u]);
      } else if (on_stack[u]) {
        low[v] = std::min(low[v], index[u]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t u;
      do {
        u = stack.back();
        stack.pop_back();
        on_stack[u] = false;
        comp.push_back(u);
      } while (u != v);
      out.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] == kUnvisited) visit(v);
  }
  return out;
}

}  // namespace detail

Condensation condense(const LogMatrix& w) {
  const std::size_t n = w.size();
  Condensation c;
  c.classes = detail::tarjan(w);
  for (auto& cls : c.classes) std::sort(cls.begin(), cls.end());
  std::sort(c.classes.begin(), c.classes.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  const std::size_t m = c.classes.size();
  c.class_of.assign(n, 0);
  for (std::size_t mu = 0; mu < m; ++mu) {
    for (std::size_t v : c.classes[mu]) c.class_of[v] = mu;
  }

  c.access.assign(m, std::vector<bool>(m, false));
  for (std::size_t mu = 0; mu < m; ++mu) c.access[mu][mu] = true;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (w.edge(u, v)) c.access[c.class_of[u]][c.class_of[v]] = true;
    }
  }
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!c.access[i][k]) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (c.access[k][j]) c.access[i][j] = true;
      }
    }
  }

  c.log_mcgm.resize(m);
  c.log_perron.resize(m);
  c.mcgm.resize(m);
  c.perron.resize(m);
  for (std::size_t mu = 0; mu < m; ++mu) {
    const auto& cls = c.classes[mu];
    c.log_mcgm[mu] = detail::karp_log_mcgm(w, cls);
    c.log_perron[mu] =
        c.log_mcgm[mu] == kNegInf ? kNegInf : detail::perron_log(w, cls).log_value;
    c.mcgm[mu] = c.log_mcgm[mu] == kNegInf ? 0.0 : std::exp(c.log_mcgm[mu]);
    c.perron[mu] = c.log_perron[mu] == kNegInf ? 0.0 : std::exp(c.log_perron[mu]);
  }
  return c;
}

Condensation condense(const Matrix& a) {
  Condensation c = condense(LogMatrix(a));
  for (std::size_t mu = 0; mu < c.class_count(); ++mu) {
    if (c.classes[mu].size() == 1) {
      const std::size_t v = c.classes[mu][0];
      c.mcgm[mu] = c.perron[mu] = a(v, v);
    }
  }
  return c;
}

double max_cycle_mean(const Matrix& a) {
  const auto c = condense(a);
  double r = 0.0;
  for (double v : c.mcgm) r = std::max(r, v);
  return r;
}

double spectral_radius(const Matrix& a) {
  const auto c = condense(a);
  double r = 0.0;
  for (double v : c.perron) r = std::max(r, v);
  return r;
}

namespace {

void check_index(const Condensation& c, std::size_t i) {
  if (i >= c.class_of.size()) throw std::out_of_range("vertex index out of range");
}

/// Best value over classes with access to i; lowest class index on ties.
std::size_t best_class(const Condensation& c, const std::vector<double>& values, std::size_t i) {
  check_index(c, i);
  std::size_t best = c.class_of[i];
  for (std::size_t mu = 0; mu < c.class_count(); ++mu) {
    if (!c.reaches_vertex(mu, i)) continue;
    if (values[mu] > values[best] || (values[mu] == values[best] && mu < best)) best = mu;
  }
  return best;
}

}  // namespace

double log_local_r(const Condensation& c, std::size_t i) {
  return c.log_mcgm[best_class(c, c.log_mcgm, i)];
}
double log_local_rho(const Condensation& c, std::size_t i) {
  return c.log_perron[best_class(c, c.log_perron, i)];
}
double local_r(const Condensation& c, std::size_t i) { return c.mcgm[best_class(c, c.log_mcgm, i)]; }
double local_rho(const Condensation& c, std::size_t i) {
  return c.perron[best_class(c, c.log_perron, i)];
}

double local_r(const Matrix& a, std::size_t i) {
  if (i >= a.size()) throw std::out_of_range("vertex index out of range");
  return local_r(condense(a), i);
}

double local_rho(const Matrix& a, std::size_t i) {
  if (i >= a.size()) throw std::out_of_range("vertex index out of range");
  return local_rho(condense(a), i);
}

double local_r_at(const Matrix& a, const Vector& x) {
  if (x.size() != a.size()) throw DimensionError("local_r_at: dimension mismatch");
  const auto c = condense(a);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) r = std::max(r, local_r(c, i));
  }
  return r;
}

double local_rho_at(const Matrix& a, const Vector& x) {
  if (x.size() != a.size()) throw DimensionError("local_rho_at: dimension mismatch");
  const auto c = condense(a);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) r = std::max(r, local_rho(c, i));
  }
  return r;
}

std::vector<double> distinct_values(std::vector<double> values, double rel_tol) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  for (double v : values) {
    if (!out.empty() && std::abs(v - out.back()) <= rel_tol * std::max(std::abs(v), std::abs(out.back()))) {
      continue;
    }
    out.push_back(v);
  }
  return out;
}

SpectralProfile spectrum(const Matrix& a, const Condensation& c) {
  const std::size_t n = a.size();
  SpectralProfile p;
  p.r.resize(n);
  p.rho.resize(n);
  p.r_witness.resize(n);
  p.rho_witness.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.r_witness[i] = best_class(c, c.log_mcgm, i);
    p.rho_witness[i] = best_class(c, c.log_perron, i);
    p.r[i] = c.mcgm[p.r_witness[i]];
    p.rho[i] = c.perron[p.rho_witness[i]];
  }
  p.sigma_max = distinct_values(p.r);
  p.sigma_dist = distinct_values(p.rho);
  return p;
}

SpectralProfile spectrum(const Matrix& a) { return spectrum(a, condense(a)); }

}  // namespace maxspec
