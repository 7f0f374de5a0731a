#include "maxspec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace maxspec::oracles {

namespace {

constexpr std::size_t kEnumerationLimit = 9;

/// Calls visit(cycle) for every simple cycle, each exactly once (rooted at
/// its smallest vertex).
template <typename Visit>
void for_each_cycle(const Matrix& a, Visit visit) {
  const std::size_t n = a.size();
  std::vector<std::size_t> path;
  std::vector<bool> used(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    path.assign(1, root);
    used.assign(n, false);
    used[root] = true;
    auto dfs = [&](auto&& self, std::size_t v) -> void {
      for (std::size_t u = root; u < n; ++u) {
        if (a(v, u) == 0.0) continue;
        if (u == root) {
          visit(path);
        } else if (!used[u]) {
          used[u] = true;
          path.push_back(u);
          self(self, u);
          path.pop_back();
          used[u] = false;
        }
      }
    };
    dfs(dfs, root);
  }
}

double cycle_mean(const Matrix& a, const std::vector<std::size_t>& cyc) {
  double prod = 1.0;
  for (std::size_t k = 0; k < cyc.size(); ++k) prod *= a(cyc[k], cyc[(k + 1) % cyc.size()]);
  return std::pow(prod, 1.0 / static_cast<double>(cyc.size()));
}

void require_enumerable(const Matrix& a) {
  if (a.size() > kEnumerationLimit) {
    throw std::invalid_argument("cycle enumeration oracle is limited to n <= 9");
  }
}

}  // namespace

double mcgm_enumerate(const Matrix& a) {
  require_enumerable(a);
  double best = 0.0;
  for_each_cycle(a, [&](const auto& cyc) { best = std::max(best, cycle_mean(a, cyc)); });
  return best;
}

std::vector<std::vector<bool>> reachability(const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    r[u][u] = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (a(u, v) > 0.0) r[u][v] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (r[u][k] && r[k][v]) r[u][v] = true;
  return r;
}

double local_r_enumerate(const Matrix& a, std::size_t i) {
  require_enumerable(a);
  if (i >= a.size()) throw std::out_of_range("vertex index out of range");
  const auto reach = reachability(a);
  double best = 0.0;
  for_each_cycle(a, [&](const auto& cyc) {
    const bool reaches = std::any_of(cyc.begin(), cyc.end(), [&](std::size_t v) { return reach[v][i]; });
    if (reaches) best = std::max(best, cycle_mean(a, cyc));
  });
  return best;
}

double local_r_limit(const Matrix& a, std::size_t i, std::size_t k_max) {
  if (i >= a.size()) throw std::out_of_range("vertex index out of range");
  const std::size_t n = a.size();
  std::vector<double> x(n, 0.0), y(n);
  x[i] = 1.0;
  double log_scale = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    double top = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      double m = 0.0;
      for (std::size_t q = 0; q < n; ++q) m = std::max(m, a(p, q) * x[q]);
      y[p] = m;
      top = std::max(top, m);
    }
    if (top == 0.0) return 0.0;
    for (std::size_t p = 0; p < n; ++p) x[p] = y[p] / top;
    log_scale += std::log(top);
  }
  return std::exp(log_scale / static_cast<double>(k_max));
}

double local_rho_limit(const Matrix& a, std::size_t i, std::size_t k_max) {
  if (i >= a.size()) throw std::out_of_range("vertex index out of range");
  const std::size_t n = a.size();
  std::vector<double> x(n, 0.0), y(n);
  x[i] = 1.0;
  double log_scale = 0.0;
  double best = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    double top = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      double s = 0.0;
      for (std::size_t q = 0; q < n; ++q) s += a(p, q) * x[q];
      y[p] = s;
      top = std::max(top, s);
    }
    if (top == 0.0) return best;
    for (std::size_t p = 0; p < n; ++p) x[p] = y[p] / top;
    log_scale += std::log(top);
    if (2 * k >= k_max) best = std::max(best, std::exp(log_scale / static_cast<double>(k)));
  }
  return best;
}

std::vector<double> gelfand_max_sequence(const Matrix& a, std::size_t k_max) {
  const std::size_t n = a.size();
  std::vector<double> out;
  const double top = norm(a);
  if (top == 0.0) return std::vector<double>(k_max, 0.0);
  // Powers of A/||A|| with the norm tracked in logs.
  std::vector<double> b(a.entries().begin(), a.entries().end());
  for (double& v : b) v /= top;
  std::vector<double> p = b;
  double log_norm = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (k > 1) {
      std::vector<double> q(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t j = 0; j < n; ++j) q[i * n + j] = std::max(q[i * n + j], p[i * n + l] * b[l * n + j]);
      p = std::move(q);
    }
    const double m = *std::max_element(p.begin(), p.end());
    if (m == 0.0) {
      out.push_back(0.0);
      continue;
    }
    for (double& v : p) v /= m;
    log_norm += std::log(m);
    out.push_back(top * std::exp(log_norm / static_cast<double>(k)));
  }
  return out;
}

Matrix generate(const GeneratorSpec& spec, std::mt19937_64& rng) {
  if (spec.n_min == 0 || spec.n_min > spec.n_max) throw std::invalid_argument("generator: bad n range");
  if (!(spec.magnitude_lo > 0.0) || spec.magnitude_lo > spec.magnitude_hi) {
    throw std::invalid_argument("generator: bad magnitude range");
  }
  std::uniform_int_distribution<std::size_t> dim(spec.n_min, spec.n_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> logmag(std::log(spec.magnitude_lo), std::log(spec.magnitude_hi));
  auto magnitude = [&] { return std::exp(logmag(rng)); };
  const std::size_t n = dim(rng);
  Matrix a(n);

  switch (spec.structure) {
    case Structure::diagonal:
      for (std::size_t i = 0; i < n; ++i) {
        if (unit(rng) < spec.density) a.set(i, i, magnitude());
      }
      break;
    case Structure::permutation: {
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < n; ++i) a.set(i, perm[i], magnitude());
      break;
    }
    default:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (unit(rng) < spec.density) a.set(i, j, magnitude());
      break;
  }

  if (spec.structure == Structure::irreducible && n > 1) {
    // Hamiltonian cycle of small entries through a random vertex order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t u = order[k], v = order[(k + 1) % n];
      if (a(u, v) == 0.0) a.set(u, v, spec.magnitude_lo * (1.0 + 9.0 * unit(rng)));
    }
  } else if (spec.structure == Structure::block_triangular) {
    const std::size_t blocks = std::max<std::size_t>(1, std::min(spec.blocks, n));
    auto block_of = [&](std::size_t v) { return v * blocks / n; };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (block_of(j) > block_of(i)) a.set(i, j, 0.0);
  } else if (spec.structure == Structure::symmetric) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) a.set(j, i, a(i, j));
  }
  return a;
}

Matrix generate(const GeneratorSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return generate(spec, rng);
}

}  // namespace maxspec::oracles
