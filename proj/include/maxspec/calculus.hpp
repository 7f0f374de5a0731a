#pragma once

// Power-series functional calculus in the max-times and classical semirings,
// multivariate polynomials, and checks of the spectral mapping theorems.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "maxspec/check_report.hpp"
#include "maxspec/matrix.hpp"

namespace maxspec {

enum class SeriesTag { exp, cosh, sinh, geometric, custom };

/// f(z) = sum_j alpha_j z^j. Tagged series carry exact coefficients and
/// radius; custom series are finite polynomials given by their coefficients.
class PowerSeries {
 public:
  static PowerSeries exp();
  static PowerSeries cosh();
  static PowerSeries sinh();
  /// sum_j (z / lambda)^j, radius lambda.
  static PowerSeries geometric(double lambda);
  static PowerSeries custom(std::vector<double> coefficients);
  /// exp | cosh | sinh | geom:<lambda> | coeffs:a0,a1,...
  static PowerSeries parse(std::string_view spec);

  std::string to_string() const;
  SeriesTag tag() const { return tag_; }
  double lambda() const { return lambda_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  /// Signed series are accepted only by the classical evaluators.
  bool is_signed() const { return signed_; }
  /// Exact radius for tags; for custom series the prefix estimate
  /// min_{j >= 8, alpha_j != 0} |alpha_j|^{-1/j} (infinite without such j).
  double radius() const { return radius_; }
  /// Largest admissible argument: the radius for tags, 95% of it for custom.
  double admissible_radius() const;

  double coefficient(std::size_t j) const;
  /// ln alpha_j, -inf when alpha_j = 0. Nonnegative series only.
  double log_coefficient(std::size_t j) const;
  /// 2 for cosh and sinh (alternate coefficients vanish), else 1.
  std::size_t period() const;
  /// Classical value f(t), summed in closed form.
  double value(double t) const;

 private:
  SeriesTag tag_ = SeriesTag::custom;
  double lambda_ = 0.0;
  std::vector<double> coeffs_;
  bool signed_ = false;
  double radius_ = 0.0;
};

class SeriesDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sup_j alpha_j t^j.
double eval_scalar_max(const PowerSeries& f, double t);

struct MaxSeriesResult {
  Matrix value;
  /// Number of powers A^0 .. A^{terms-1} accumulated.
  std::size_t terms = 0;
};

/// (+)-sum of alpha_j A^j_max. Accumulation stops once every remaining term
/// is bounded by the current entry (cycle-removal bound); min_terms forces a
/// longer prefix.
MaxSeriesResult eval_matrix_max_detailed(const PowerSeries& f, const Matrix& a,
                                         std::size_t min_terms = 0);
Matrix eval_matrix_max(const PowerSeries& f, const Matrix& a);

struct ClassicalSeriesResult {
  Matrix value;
  std::size_t terms = 0;
  /// Bound on the neglected tail in the infinity norm.
  double tail_bound = 0.0;
};

inline constexpr double kSeriesTailTolerance = 1e-13;
/// Negative entries above -kClampTolerance * scale are round-off and are
/// clamped to 0; anything lower means f(A) is not nonnegative.
inline constexpr double kClampTolerance = 1e-9;

ClassicalSeriesResult eval_matrix_classical_detailed(const PowerSeries& f, const Matrix& a);
Matrix eval_matrix_classical(const PowerSeries& f, const Matrix& a);

/// One term c * x_1^{k_1} ... x_m^{k_m}; all-zero exponents mean c * I.
struct PolyTerm {
  double coefficient = 1.0;
  std::vector<unsigned> exponents;
};

/// Max polynomial: max over terms, max products within a term.
struct MaxPolynomial {
  std::size_t variables = 0;
  std::vector<PolyTerm> terms;
};

/// Real polynomial; coefficients may be negative.
struct ClassicalPolynomial {
  std::size_t variables = 0;
  std::vector<PolyTerm> terms;
};

Matrix eval_max_multipoly(const MaxPolynomial& p, const std::vector<Matrix>& as);
double eval_max_multipoly(const MaxPolynomial& p, const std::vector<double>& x);
/// Errors when the result has entries below -kClampTolerance * scale.
Matrix eval_classical_multipoly(const ClassicalPolynomial& p, const std::vector<Matrix>& as);
double eval_classical_multipoly(const ClassicalPolynomial& p, const std::vector<double>& x);

inline constexpr double kMaxMapTolerance = 1e-9;
inline constexpr double kDistMapTolerance = 1e-7;

/// r_{e_i}(f(A)) = f(r_{e_i}(A)) for all i, and sigma_max(f(A)) = f(sigma_max(A)).
CheckReport check_spectral_map_max(const PowerSeries& f, const Matrix& a);
/// sigma_D(f(A)) = f(sigma_D(A)); also per index when alpha_1 > 0 and all
/// coefficients are nonnegative (then f(A) keeps the classes and access of A).
CheckReport check_spectral_map_dist(const PowerSeries& f, const Matrix& a);

/// Entrywise commutation within rel_tol * max(||AB||, ||BA||).
bool max_commute(const Matrix& a, const Matrix& b, double rel_tol = 1e-12);
bool classical_commute(const Matrix& a, const Matrix& b, double rel_tol = 1e-12);

/// Three reports: every lambda_j in a spectrum of A_j extends to a tuple
/// whose image lies in the spectrum of p(A); every spectrum element of p(A)
/// is such an image; and the per-index identity, which is not-applicable
/// unless some matrix (A_j or p(A)) is irreducible or every class value of
/// every A_j is distinct. Throws std::invalid_argument for a non-commuting
/// family.
std::vector<CheckReport> check_commuting_family(const MaxPolynomial& p, const std::vector<Matrix>& as);
std::vector<CheckReport> check_commuting_family(const ClassicalPolynomial& p,
                                                const std::vector<Matrix>& as);

/// Greedy nearest pairing of two sorted value sets within rel_tol.
bool same_value_set(const std::vector<double>& x, const std::vector<double>& y, double rel_tol);

}  // namespace maxspec
