#pragma once

// Sequences whose limits connect the max-algebra spectrum with the
// distinguished spectrum:
//   schur     rho_{e_i}(A^(t))^{1/t}        -> r_{e_i}(A)    as t -> inf
//   maxpow    rho_{e_i}(A^k_max)^{1/k}      -> r_{e_i}(A)    as k -> inf
//   classpow  r_{e_i}(A^k)^{1/k}            -> rho_{e_i}(A)  as k -> inf
//   bapat     r_max(A^k)^{1/k}              -> rho(A)        as k -> inf
// Each trace also carries a companion sequence with the dimension factor n
// that brackets the limit from the other side.

#include <cstddef>
#include <string>
#include <vector>

#include "maxspec/matrix.hpp"

namespace maxspec {

enum class TraceKind { schur, max_power, classical_power, bapat };

std::string to_string(TraceKind kind);

/// Which side of the limit a sequence lies on.
enum class Side { above, below };

struct LimitTrace {
  TraceKind kind = TraceKind::schur;
  /// 0-based vertex; unused for bapat.
  std::size_t index = 0;
  std::size_t n = 0;
  std::vector<double> grid;
  std::vector<double> values;
  /// Companion form: (rho/n)^{1/t} for schur and maxpow, (n r)^{1/k} for
  /// classpow and bapat.
  std::vector<double> companion;
  double limit = 0.0;
  Side values_side = Side::above;
  /// Only the schur trace claims monotonicity (nonincreasing in t).
  bool claims_nonincreasing = false;
};

/// Powers of two 2^0 .. 2^max_exponent.
std::vector<double> geometric_grid(unsigned max_exponent);

LimitTrace schur_trace(const Matrix& a, std::size_t i, const std::vector<double>& t_grid);
LimitTrace max_power_trace(const Matrix& a, std::size_t i, std::size_t k_max);
LimitTrace classical_power_trace(const Matrix& a, std::size_t i, std::size_t k_max);
LimitTrace bapat_trace(const Matrix& a, std::size_t k_max);

inline constexpr double kConvergenceTolerance = 5e-2;
inline constexpr double kMonotoneSlack = 1e-12;
inline constexpr double kBoundSlack = 1e-10;

struct TraceCheck {
  /// Per grid point: value and companion on their claimed sides of the limit.
  std::vector<bool> value_bound;
  std::vector<bool> companion_bound;
  bool monotone = true;
  bool bounds = true;
  /// Relative distance of the terminal value from the limit.
  double terminal_error = 0.0;
  bool converged = true;
  /// Terminal value no farther from the limit than the value at half the
  /// terminal parameter (vacuous when the grid has no such point).
  bool tightening = true;

  bool ok() const { return monotone && bounds && converged && tightening; }
};

TraceCheck check_trace(const LimitTrace& trace, double tol = kConvergenceTolerance);

}  // namespace maxspec
