#pragma once

// Graph-theoretic spectral engine.
//
// Edge convention, used everywhere in this library: u -> v is an edge iff
// a(u, v) > 0, and class mu "has access to" vertex i iff a directed path
// (possibly empty) leads from some vertex of mu to i. Under this convention
//   r_{e_i}(A)   = max { cycle geometric mean of mu : mu has access to i }
//   rho_{e_i}(A) = max { Perron root of A[mu, mu]  : mu has access to i }
// and the max-algebra / distinguished spectra are the value sets of these.

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "maxspec/matrix.hpp"

namespace maxspec {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Entrywise natural logarithm of a nonnegative matrix; zero entries are -inf.
/// Lets long max/classical/Hadamard powers be formed without overflow or
/// underflow changing the zero pattern.
class LogMatrix {
 public:
  LogMatrix() = default;
  explicit LogMatrix(const Matrix& a);
  LogMatrix(std::size_t n, std::vector<double> logs);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  bool edge(std::size_t i, std::size_t j) const { return w_[i * n_ + j] != kNegInf; }

  /// Log of the Hadamard power A^(t).
  LogMatrix hadamard_power(double t) const;
  /// Back to linear scale; entries below the double range flush to zero.
  Matrix exp() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> w_;
};

/// Log of the max product A (x) B (max-plus product of the logs).
LogMatrix log_max_mul(const LogMatrix& a, const LogMatrix& b);
/// Log of the classical product AB (log-sum-exp).
LogMatrix log_mul(const LogMatrix& a, const LogMatrix& b);

/// Strongly connected components of the digraph of A with the access
/// relation and per-class spectral data.
struct Condensation {
  /// Classes ordered by smallest member; members sorted ascending.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;
  /// access[mu][nu]: mu reaches nu (reflexive, transitive).
  std::vector<std::vector<bool>> access;
  /// Max cycle geometric mean per class; 0 for classes without a cycle.
  std::vector<double> mcgm;
  /// Perron root of the diagonal block per class; 0 for classes without a cycle.
  std::vector<double> perron;
  /// Natural logs of mcgm / perron (-inf for acyclic classes). These stay
  /// finite when the linear values would overflow.
  std::vector<double> log_mcgm;
  std::vector<double> log_perron;

  std::size_t class_count() const { return classes.size(); }
  bool cyclic(std::size_t mu) const { return log_mcgm[mu] != kNegInf; }
  bool reaches_vertex(std::size_t mu, std::size_t i) const { return access[mu][class_of[i]]; }
};

Condensation condense(const Matrix& a);
Condensation condense(const LogMatrix& a);

/// Maximum cycle geometric mean r_max(A); 0 iff the digraph is acyclic.
double max_cycle_mean(const Matrix& a);
/// Largest Perron root over all classes, i.e. the spectral radius.
double spectral_radius(const Matrix& a);

struct PerronResult {
  double value = 0.0;
  /// Collatz-Wielandt bracket of the final iterate.
  double lower = 0.0;
  double upper = 0.0;
  /// Positive eigenvector, max entry 1.
  std::vector<double> vector;
  std::size_t iterations = 0;
};

class PerronError : public std::runtime_error {
 public:
  PerronError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower(lower), upper(upper) {}
  double lower;
  double upper;
};

inline constexpr double kPerronTolerance = 1e-12;
inline constexpr std::size_t kPerronMaxIterations = 1'000'000;

/// Perron root of an irreducible (or 1x1) nonnegative matrix.
PerronResult perron(const Matrix& b);
double perron_root(const Matrix& b);

// Local spectral radii. Indices are 0-based.
double local_r(const Matrix& a, std::size_t i);
double local_rho(const Matrix& a, std::size_t i);
double local_r(const Condensation& c, std::size_t i);
double local_rho(const Condensation& c, std::size_t i);
double log_local_r(const Condensation& c, std::size_t i);
double log_local_rho(const Condensation& c, std::size_t i);

/// Max of the per-index radii over the support of x; 0 when x = 0.
double local_r_at(const Matrix& a, const Vector& x);
double local_rho_at(const Matrix& a, const Vector& x);

inline constexpr double kSpectrumMergeTolerance = 1e-9;

/// Sorted values with neighbours closer than rel_tol merged.
std::vector<double> distinct_values(std::vector<double> values,
                                    double rel_tol = kSpectrumMergeTolerance);

struct SpectralProfile {
  std::vector<double> r;
  std::vector<double> rho;
  std::vector<double> sigma_max;
  std::vector<double> sigma_dist;
  /// Class realizing r[i] (resp. rho[i]); lowest class index on ties.
  std::vector<std::size_t> r_witness;
  std::vector<std::size_t> rho_witness;
};

SpectralProfile spectrum(const Matrix& a);
SpectralProfile spectrum(const Matrix& a, const Condensation& c);

/// v >= 0, v != 0 with A (x) v = lambda v, lambda = local_r(A, witness).
/// lambda = 0 gives a unit vector at a source vertex.
Vector max_eigenvector(const Matrix& a, double lambda, std::size_t witness);
/// v >= 0, v != 0 with A v = lambda v, lambda = local_rho(A, witness).
Vector dist_eigenvector(const Matrix& a, double lambda, std::size_t witness);

/// ||A (x) v - lambda v|| / (lambda ||v||); the lambda factor is dropped at 0.
double max_residual(const Matrix& a, const Vector& v, double lambda);
/// ||A v - lambda v|| / (lambda ||v||); the lambda factor is dropped at 0.
double dist_residual(const Matrix& a, const Vector& v, double lambda);

inline constexpr double kEigenResidualTolerance = 1e-9;

}  // namespace maxspec
