#include <algorithm>
#include <cmath>
#include <string>

#include "graph_detail.hpp"

namespace maxspec {

namespace {

bool close(double x, double y) {
  return std::abs(x - y) <= kSpectrumMergeTolerance * std::max(std::abs(x), std::abs(y));
}

/// Among classes with access to the witness whose value matches lambda, one
/// that no other matching class has access to (lowest index on ties).
std::size_t spectral_class(const Condensation& c, const std::vector<double>& values,
                           double lambda, std::size_t witness) {
  std::vector<std::size_t> candidates;
  for (std::size_t mu = 0; mu < c.class_count(); ++mu) {
    if (c.reaches_vertex(mu, witness) && close(values[mu], lambda)) candidates.push_back(mu);
  }
  for (std::size_t mu : candidates) {
    const bool maximal = std::none_of(candidates.begin(), candidates.end(), [&](std::size_t nu) {
      return nu != mu && c.access[nu][mu];
    });
    if (maximal) return mu;
  }
  throw std::invalid_argument("eigenvector: lambda is not realized by a class with access to the witness");
}

/// Vertices whose class has access to mu.
std::vector<std::size_t> initial_segment(const Condensation& c, std::size_t mu) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < c.class_of.size(); ++v) {
    if (c.access[c.class_of[v]][mu]) out.push_back(v);
  }
  return out;
}

void check_lambda(double lambda, double expected, const char* what) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument(std::string(what) + ": lambda must be finite and nonnegative");
  }
  if (lambda == 0.0 && expected == 0.0) return;
  if (!close(lambda, expected)) {
    throw std::invalid_argument(std::string(what) + ": lambda " + std::to_string(lambda) +
                                " is not the local radius " + std::to_string(expected) +
                                " at the witness index");
  }
}

/// For lambda = 0: e_j for the lowest vertex j with a zero column that
/// reaches the witness. One exists because every ancestor class of the
/// witness is acyclic.
Vector zero_eigenvector(const Matrix& a, const Condensation& c, std::size_t witness) {
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (!c.reaches_vertex(c.class_of[j], witness)) continue;
    bool source = true;
    for (std::size_t i = 0; i < n && source; ++i) source = a(i, j) == 0.0;
    if (source) return Vector::unit(n, j);
  }
  throw std::logic_error("eigenvector: no source vertex above the witness");
}

double scaled_residual(const Vector& av, const Vector& v, double lambda) {
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(av[i] - lambda * v[i]));
  return worst / ((lambda > 0.0 ? lambda : 1.0) * norm(v));
}

}  // namespace

double max_residual(const Matrix& a, const Vector& v, double lambda) {
  return scaled_residual(max_vec_mul(a, v), v, lambda);
}

double dist_residual(const Matrix& a, const Vector& v, double lambda) {
  return scaled_residual(mul_vec(a, v), v, lambda);
}

Vector max_eigenvector(const Matrix& a, double lambda, std::size_t witness) {
  if (witness >= a.size()) throw std::out_of_range("witness index out of range");
  const LogMatrix w(a);
  const Condensation c = condense(w);
  check_lambda(lambda, local_r(c, witness), "max_eigenvector");
  if (lambda == 0.0) return zero_eigenvector(a, c, witness);
  const std::size_t mu = spectral_class(c, c.mcgm, lambda, witness);
  const auto segment = initial_segment(c, mu);
  const double log_lambda = std::log(lambda);

  // Critical vertex: the member of mu on the heaviest cycle relative to lambda.
  const auto& cls = c.classes[mu];
  const std::size_t s = cls.size();
  std::vector<double> dist(s * s, kNegInf);
  for (std::size_t p = 0; p < s; ++p) {
    for (std::size_t q = 0; q < s; ++q) {
      if (w.edge(cls[p], cls[q])) dist[p * s + q] = w(cls[p], cls[q]) - log_lambda;
    }
  }
  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t p = 0; p < s; ++p) {
      if (dist[p * s + k] == kNegInf) continue;
      for (std::size_t q = 0; q < s; ++q) {
        if (dist[k * s + q] == kNegInf) continue;
        dist[p * s + q] = std::max(dist[p * s + q], dist[p * s + k] + dist[k * s + q]);
      }
    }
  }
  std::size_t critical = 0;
  for (std::size_t p = 1; p < s; ++p) {
    if (dist[p * s + p] > dist[critical * s + critical]) critical = p;
  }

  // Column of the Kleene star of A/lambda on the segment, at the critical vertex.
  const std::size_t n = a.size();
  std::vector<double> v(n, 0.0);
  v[cls[critical]] = 1.0;
  for (std::size_t round = 0; round < segment.size(); ++round) {
    bool changed = false;
    for (std::size_t i : segment) {
      for (std::size_t j : segment) {
        const double cand = a(i, j) / lambda * v[j];
        if (cand > v[i]) {
          v[i] = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  Vector out(std::move(v));
  const double res = max_residual(a, out, lambda);
  if (!(res <= kEigenResidualTolerance)) {
    throw std::logic_error("max_eigenvector: residual " + std::to_string(res) + " exceeds tolerance");
  }
  return out;
}

Vector dist_eigenvector(const Matrix& a, double lambda, std::size_t witness) {
  if (witness >= a.size()) throw std::out_of_range("witness index out of range");
  const LogMatrix w(a);
  const Condensation c = condense(w);
  check_lambda(lambda, local_rho(c, witness), "dist_eigenvector");
  if (lambda == 0.0) return zero_eigenvector(a, c, witness);
  const std::size_t mu = spectral_class(c, c.perron, lambda, witness);
  const std::size_t n = a.size();
  std::vector<double> v(n, 0.0);

  const auto& base = c.classes[mu];
  const auto lp = detail::perron_log(w, base);
  const double top = *std::max_element(lp.log_vector.begin(), lp.log_vector.end());
  for (std::size_t p = 0; p < base.size(); ++p) v[base[p]] = std::exp(lp.log_vector[p] - top);

  // Remaining classes of the segment, each after every class it reaches.
  std::vector<std::size_t> order;
  for (std::size_t nu = 0; nu < c.class_count(); ++nu) {
    if (nu != mu && c.access[nu][mu]) order.push_back(nu);
  }
  auto reach_count = [&](std::size_t nu) {
    return std::count(c.access[nu].begin(), c.access[nu].end(), true);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return reach_count(x) < reach_count(y); });

  for (std::size_t nu : order) {
    const auto& cls = c.classes[nu];
    const std::size_t s = cls.size();
    // Inflow from already solved vertices, scaled by 1/lambda.
    std::vector<double> rhs(s, 0.0);
    for (std::size_t p = 0; p < s; ++p) {
      for (std::size_t j = 0; j < n; ++j) {
        if (c.class_of[j] != nu) rhs[p] += a(cls[p], j) * v[j];
      }
      rhs[p] /= lambda;
    }
    // (lambda I - A_nu)^{-1} lambda = sum_k (A_nu/lambda)^k, summed by doubling:
    // S_{2N} = S_N + M^N S_N, M^{2N} = (M^N)^2.
    std::vector<double> sum(s * s, 0.0), pw(s * s, 0.0);
    for (std::size_t p = 0; p < s; ++p) {
      sum[p * s + p] = 1.0;
      for (std::size_t q = 0; q < s; ++q) pw[p * s + q] = a(cls[p], cls[q]) / lambda;
    }
    auto matmul = [s](const std::vector<double>& x, const std::vector<double>& y) {
      std::vector<double> z(s * s, 0.0);
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < s; ++k)
          for (std::size_t j = 0; j < s; ++j) z[i * s + j] += x[i * s + k] * y[k * s + j];
      return z;
    };
    bool done = false;
    for (int doubling = 0; doubling < 80; ++doubling) {
      const double pw_norm = *std::max_element(pw.begin(), pw.end());
      if (pw_norm < 1e-18) {
        done = true;
        break;
      }
      const auto inc = matmul(pw, sum);
      for (std::size_t q = 0; q < sum.size(); ++q) sum[q] += inc[q];
      pw = matmul(pw, pw);
      if (!std::all_of(sum.begin(), sum.end(), [](double x) { return std::isfinite(x); })) break;
    }
    if (!done) {
      throw std::logic_error("dist_eigenvector: Neumann series diverges on an ancestor class");
    }
    for (std::size_t p = 0; p < s; ++p) {
      double val = 0.0;
      for (std::size_t q = 0; q < s; ++q) val += sum[p * s + q] * rhs[q];
      v[cls[p]] = val;
    }
  }

  Vector out(std::move(v));
  const double res = dist_residual(a, out, lambda);
  if (!(res <= kEigenResidualTolerance)) {
    throw std::logic_error("dist_eigenvector: residual " + std::to_string(res) + " exceeds tolerance");
  }
  return out;
}

}  // namespace maxspec
