#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "graph_detail.hpp"

namespace maxspec::detail {

double karp_log_mcgm(const LogMatrix& w, std::span<const std::size_t> members) {
  const std::size_t s = members.size();
  if (s == 0) return kNegInf;
  if (s == 1) return w(members[0], members[0]);

  // d[k][v]: heaviest walk of exactly k edges from members[0] to v.
  std::vector<std::vector<double>> d(s + 1, std::vector<double>(s, kNegInf));
  d[0][0] = 0.0;
  for (std::size_t k = 1; k <= s; ++k) {
    for (std::size_t v = 0; v < s; ++v) {
      double best = kNegInf;
      for (std::size_t u = 0; u < s; ++u) {
        if (d[k - 1][u] == kNegInf) continue;
        const double wuv = w(members[u], members[v]);
        if (wuv == kNegInf) continue;
        best = std::max(best, d[k - 1][u] + wuv);
      }
      d[k][v] = best;
    }
  }
  double result = kNegInf;
  for (std::size_t v = 0; v < s; ++v) {
    if (d[s][v] == kNegInf) continue;
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s; ++k) {
      if (d[k][v] == kNegInf) continue;
      worst = std::min(worst, (d[s][v] - d[k][v]) / static_cast<double>(s - k));
    }
    result = std::max(result, worst);
  }
  return result;
}

namespace {

struct Bracket {
  double lower;
  double upper;
};

Bracket collatz_wielandt(const Eigen::MatrixXd& b, const Eigen::VectorXd& x) {
  const Eigen::VectorXd y = b * x;
  Bracket out{std::numeric_limits<double>::infinity(), 0.0};
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double q = y(i) / x(i);
    out.lower = std::min(out.lower, q);
    out.upper = std::max(out.upper, q);
  }
  return out;
}

bool converged(const Bracket& br, double tol) { return br.upper - br.lower <= tol * br.upper; }

using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                           boost::multiprecision::et_off>;

/// Noda iteration from a positive start vector: shift by the Collatz-Wielandt
/// upper bound, solve, renormalize. Keeps the iterate with the tightest
/// bracket in x.
template <typename Scalar>
void noda(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& b,
          Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x, const Scalar& tol, std::size_t& iterations) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index s = b.rows();
  auto bracket = [&](const Vec& v, Scalar& lo, Scalar& hi) {
    const Vec bv = b * v;
    lo = bv(0) / v(0);
    hi = lo;
    for (Eigen::Index i = 1; i < s; ++i) {
      const Scalar q = bv(i) / v(i);
      if (q < lo) lo = q;
      if (q > hi) hi = q;
    }
  };
  Scalar lo, hi;
  bracket(x, lo, hi);
  int stalls = 0;
  for (int k = 0; k < 100 && hi - lo > tol * hi && stalls < 3; ++k, ++iterations) {
    const Mat m = hi * Mat::Identity(s, s) - b;
    Vec y = m.partialPivLu().solve(x);
    Scalar sum = y.sum();
    if (!(sum == sum)) break;
    if (sum < 0) y = -y;
    Scalar top = y(0), bottom = y(0);
    for (Eigen::Index i = 1; i < s; ++i) {
      if (y(i) > top) top = y(i);
      if (y(i) < bottom) bottom = y(i);
    }
    if (!(bottom > 0)) break;
    y /= top;
    Scalar ylo, yhi;
    bracket(y, ylo, yhi);
    if (yhi - ylo < hi - lo) {
      lo = ylo;
      hi = yhi;
      x = y;
      stalls = 0;
    } else {
      ++stalls;
    }
  }
}

/// Scaled log-entries below this are dropped, chosen so that products along
/// any simple path stay inside the double range.
double drop_log(std::size_t s) { return -650.0 / static_cast<double>(s); }

LogPerron split_perron(const LogMatrix& sw, const Eigen::MatrixXd& b,
                       const std::vector<std::vector<std::size_t>>& pieces, double log_r,
                       const std::vector<double>& phi) {
  const std::size_t s = sw.size();
  LogPerron out;
  double scaled_log = kNegInf;
  for (const auto& piece : pieces) {
    if (piece.size() == 1 && !sw.edge(piece[0], piece[0])) continue;
    scaled_log = std::max(scaled_log, perron_log(sw, piece).log_value);
  }
  out.log_value = log_r + scaled_log;
  const double value = std::exp(scaled_log);
  out.scaled_lower = out.scaled_upper = value;

  // Eigenvector by inverse iteration just above the root.
  const Eigen::MatrixXd m = value * (1 + 1e-13) * Eigen::MatrixXd::Identity(s, s) - b;
  const auto lu = m.partialPivLu();
  Eigen::VectorXd x = Eigen::VectorXd::Ones(s);
  for (int k = 0; k < 4; ++k) {
    x = lu.solve(x).cwiseAbs();
    x /= x.maxCoeff();
    ++out.iterations;
  }
  out.log_vector.resize(s);
  for (std::size_t i = 0; i < s; ++i) out.log_vector[i] = x(i) > 0 ? phi[i] + std::log(x(i)) : kNegInf;
  return out;
}

}  // namespace

LogPerron perron_log(const LogMatrix& w, std::span<const std::size_t> members) {
  const std::size_t s = members.size();
  LogPerron out;
  if (s == 1) {
    out.log_value = w(members[0], members[0]);
    out.log_vector = {0.0};
    out.scaled_lower = out.scaled_upper = 1.0;
    return out;
  }

  const double log_r = karp_log_mcgm(w, members);
  if (log_r == kNegInf) throw std::invalid_argument("perron: vertex set is not strongly connected");

  // Potentials phi_i = heaviest path i -> members[0] under weights w - log_r.
  // Then w_ij - log_r - phi_i + phi_j <= 0, with equality on critical cycles.
  std::vector<double> phi(s, kNegInf);
  phi[0] = 0.0;
  for (std::size_t round = 0; round < s; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        const double wij = w(members[i], members[j]);
        if (wij == kNegInf || phi[j] == kNegInf) continue;
        const double cand = wij - log_r + phi[j];
        if (cand > phi[i]) {
          phi[i] = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  for (double p : phi) {
    if (p == kNegInf) throw std::invalid_argument("perron: vertex set is not strongly connected");
  }

  // Scaled entries below drop_log(s) are dropped. When that splits the block,
  // its root is the largest root over the pieces.
  std::vector<double> scaled(s * s, kNegInf);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      const double wij = w(members[i], members[j]);
      if (wij == kNegInf) continue;
      const double v = wij - log_r - phi[i] + phi[j];
      if (v >= drop_log(s)) scaled[i * s + j] = std::min(v, 0.0);
    }
  }
  const LogMatrix sw(s, std::move(scaled));
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j) {
      if (sw.edge(i, j)) b(i, j) = std::exp(sw(i, j));
    }
  }
  const auto pieces = tarjan(sw);
  if (pieces.size() > 1) return split_perron(sw, b, pieces, log_r, phi);

  // The scaled block has spectral radius in [1, s]; shifting by the identity
  // makes it primitive. A few power steps, then Noda (shifted inverse)
  // iteration in double and, for nearly degenerate blocks, in 50-digit
  // arithmetic; plain power steps are the last resort.
  const Eigen::MatrixXd shifted = b + Eigen::MatrixXd::Identity(s, s);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(s);
  std::size_t iterations = 0;
  for (int k = 0; k < 8; ++k, ++iterations) {
    x = shifted * x;
    x /= x.maxCoeff();
  }
  Bracket best = collatz_wielandt(b, x);
  Eigen::VectorXd best_x = x;
  noda<double>(b, best_x, 1e-15, iterations);
  best = collatz_wielandt(b, best_x);

  if (!converged(best, kPerronTolerance)) {
    Eigen::Matrix<Wide, Eigen::Dynamic, Eigen::Dynamic> wb(s, s);
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) wb(i, j) = sw.edge(i, j) ? exp(Wide(sw(i, j))) : Wide(0);
    }
    Eigen::Matrix<Wide, Eigen::Dynamic, 1> wx = best_x.cast<Wide>();
    noda<Wide>(wb, wx, Wide(1e-30), iterations);
    Eigen::VectorXd y(s);
    for (std::size_t i = 0; i < s; ++i) y(i) = static_cast<double>(wx(i));
    const Bracket br = collatz_wielandt(b, y);
    if (y.minCoeff() > 0.0 && br.upper - br.lower < best.upper - best.lower) {
      best = br;
      best_x = y;
    }
  }

  x = best_x;
  while (!converged(best, kPerronTolerance)) {
    if (iterations >= kPerronMaxIterations) {
      const double scale = std::exp(log_r);
      throw PerronError("perron: no convergence after " + std::to_string(iterations) +
                            " iterations, bracket [" + std::to_string(best.lower * scale) + ", " +
                            std::to_string(best.upper * scale) + "]",
                        best.lower * scale, best.upper * scale);
    }
    x = shifted * x;
    x /= x.maxCoeff();
    ++iterations;
    const Bracket br = collatz_wielandt(b, x);
    if (br.upper - br.lower < best.upper - best.lower) {
      best = br;
      best_x = x;
    }
  }

  out.log_value = log_r + std::log(0.5 * (best.lower + best.upper));
  out.log_vector.resize(s);
  for (std::size_t i = 0; i < s; ++i) out.log_vector[i] = phi[i] + std::log(best_x(i));
  out.scaled_lower = best.lower;
  out.scaled_upper = best.upper;
  out.iterations = iterations;
  return out;
}

}  // namespace maxspec::detail

namespace maxspec {

PerronResult perron(const Matrix& b) {
  const LogMatrix w(b);
  const std::size_t n = b.size();
  if (n == 0) throw std::invalid_argument("perron: empty matrix");
  std::vector<std::size_t> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = i;
  if (n > 1 && detail::tarjan(w).size() != 1) {
    throw std::invalid_argument("perron: matrix is not irreducible");
  }
  const auto lp = detail::perron_log(w, members);
  PerronResult out;
  out.value = lp.log_value == kNegInf ? 0.0 : std::exp(lp.log_value);
  const double scale = n == 1 ? 1.0 : std::exp(detail::karp_log_mcgm(w, members));
  out.lower = n == 1 ? out.value : lp.scaled_lower * scale;
  out.upper = n == 1 ? out.value : lp.scaled_upper * scale;
  const double top = *std::max_element(lp.log_vector.begin(), lp.log_vector.end());
  out.vector.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.vector[i] = std::exp(lp.log_vector[i] - top);
  out.iterations = lp.iterations;
  return out;
}

double perron_root(const Matrix& b) { return perron(b).value; }

}  // namespace maxspec
