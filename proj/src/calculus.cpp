#include "maxspec/calculus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>

#include "maxspec/specgraph.hpp"

namespace maxspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogMax = std::log(std::numeric_limits<double>::max());

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("series: bad number '" + std::string(s) + "'");
  }
  return v;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_nonnegative(const PowerSeries& f, const char* op) {
  if (f.is_signed()) throw std::invalid_argument(std::string(op) + ": series has negative coefficients");
}

bool exp_like(SeriesTag tag) {
  return tag == SeriesTag::exp || tag == SeriesTag::cosh || tag == SeriesTag::sinh;
}

/// Smallest j >= from whose coefficient can be nonzero.
std::size_t align(const PowerSeries& f, std::size_t from) {
  if (f.tag() == SeriesTag::cosh && from % 2 == 1) return from + 1;
  if (f.tag() == SeriesTag::sinh && from % 2 == 0) return from + 1;
  return from;
}

/// ln sup_{j >= from} alpha_j t^j for a tagged series, t = e^{log_t} > 0.
double log_tail_sup(const PowerSeries& f, std::size_t from, double log_t) {
  std::size_t j = align(f, from);
  if (f.tag() == SeriesTag::geometric) return f.log_coefficient(j) + static_cast<double>(j) * log_t;
  // Exp-like terms increase while j < t and decrease after.
  const double t = std::exp(log_t);
  double best = kNegInf;
  do {
    best = std::max(best, f.log_coefficient(j) + static_cast<double>(j) * log_t);
    j += f.period();
  } while (static_cast<double>(j) <= t + 2.0);
  return best;
}

void check_admissible(const PowerSeries& f, double value, const char* what) {
  if (!(value < f.admissible_radius())) {
    throw SeriesDomainError(std::string(what) + " = " + format_number(value) +
                            " is not below the admissible radius " +
                            format_number(f.admissible_radius()) + " of " + f.to_string());
  }
}

Matrix exp_matrix(const LogMatrix& w, const char* op) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w(i, j) > kLogMax) throw std::overflow_error(std::string(op) + ": result overflows");
    }
  }
  return w.exp();
}

LogMatrix log_identity(std::size_t n) {
  std::vector<double> w(n * n, kNegInf);
  for (std::size_t i = 0; i < n; ++i) w[i * n + i] = 0.0;
  return LogMatrix(n, std::move(w));
}

/// Infinity (max row sum) norm.
double row_sum_norm(const Matrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j);
    best = std::max(best, s);
  }
  return best;
}

/// pos - neg, with small negative round-off clamped to 0.
Matrix signed_difference(const Matrix& pos, const Matrix& neg, const char* op) {
  const std::size_t n = pos.size();
  const double scale = norm(add(pos, neg));
  std::vector<double> out(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const double v = pos.entries()[k] - neg.entries()[k];
    if (v < -kClampTolerance * scale) {
      throw SeriesDomainError(std::string(op) + ": result has a negative entry " + format_number(v));
    }
    out[k] = std::max(v, 0.0);
  }
  return Matrix(n, std::move(out));
}

double rel_gap(double x, double y) {
  if (x == y) return 0.0;
  return std::abs(x - y) / std::max(std::abs(x), std::abs(y));
}

}  // namespace

PowerSeries PowerSeries::exp() {
  PowerSeries f;
  f.tag_ = SeriesTag::exp;
  f.radius_ = kInf;
  return f;
}

PowerSeries PowerSeries::cosh() {
  PowerSeries f = exp();
  f.tag_ = SeriesTag::cosh;
  return f;
}

PowerSeries PowerSeries::sinh() {
  PowerSeries f = exp();
  f.tag_ = SeriesTag::sinh;
  return f;
}

PowerSeries PowerSeries::geometric(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("geometric series needs lambda > 0");
  PowerSeries f;
  f.tag_ = SeriesTag::geometric;
  f.lambda_ = lambda;
  f.radius_ = lambda;
  return f;
}

PowerSeries PowerSeries::custom(std::vector<double> coefficients) {
  if (coefficients.empty()) throw std::invalid_argument("custom series needs at least one coefficient");
  PowerSeries f;
  f.tag_ = SeriesTag::custom;
  f.radius_ = kInf;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    const double a = coefficients[j];
    if (!std::isfinite(a)) throw std::invalid_argument("custom series: non-finite coefficient");
    if (a < 0.0) f.signed_ = true;
    if (j >= 8 && a != 0.0) f.radius_ = std::min(f.radius_, std::pow(std::abs(a), -1.0 / static_cast<double>(j)));
  }
  f.coeffs_ = std::move(coefficients);
  return f;
}

PowerSeries PowerSeries::parse(std::string_view spec) {
  if (spec == "exp") return exp();
  if (spec == "cosh") return cosh();
  if (spec == "sinh") return sinh();
  if (spec.starts_with("geom:")) return geometric(parse_double(spec.substr(5)));
  if (spec.starts_with("coeffs:")) {
    std::vector<double> coeffs;
    std::string_view rest = spec.substr(7);
    while (true) {
      const std::size_t comma = rest.find(',');
      coeffs.push_back(parse_double(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return custom(std::move(coeffs));
  }
  throw std::invalid_argument("unknown series '" + std::string(spec) +
                              "' (expected exp, cosh, sinh, geom:<lambda> or coeffs:a0,a1,...)");
}

std::string PowerSeries::to_string() const {
  switch (tag_) {
    case SeriesTag::exp: return "exp";
    case SeriesTag::cosh: return "cosh";
    case SeriesTag::sinh: return "sinh";
    case SeriesTag::geometric: return "geom:" + format_number(lambda_);
    case SeriesTag::custom: break;
  }
  std::string s = "coeffs:";
  for (std::size_t j = 0; j < coeffs_.size(); ++j) s += (j ? "," : "") + format_number(coeffs_[j]);
  return s;
}

double PowerSeries::admissible_radius() const { return tag_ == SeriesTag::custom ? 0.95 * radius_ : radius_; }

std::size_t PowerSeries::period() const { return tag_ == SeriesTag::cosh || tag_ == SeriesTag::sinh ? 2 : 1; }

double PowerSeries::coefficient(std::size_t j) const {
  if (tag_ == SeriesTag::custom) return j < coeffs_.size() ? coeffs_[j] : 0.0;
  const double lc = log_coefficient(j);
  return lc == kNegInf ? 0.0 : std::exp(lc);
}

double PowerSeries::log_coefficient(std::size_t j) const {
  const double x = static_cast<double>(j);
  switch (tag_) {
    case SeriesTag::exp: return -std::lgamma(x + 1.0);
    case SeriesTag::cosh: return j % 2 == 0 ? -std::lgamma(x + 1.0) : kNegInf;
    case SeriesTag::sinh: return j % 2 == 1 ? -std::lgamma(x + 1.0) : kNegInf;
    case SeriesTag::geometric: return -x * std::log(lambda_);
    case SeriesTag::custom: break;
  }
  const double a = coefficient(j);
  if (a < 0.0) throw std::invalid_argument("log_coefficient: negative coefficient");
  return a == 0.0 ? kNegInf : std::log(a);
}

double PowerSeries::value(double t) const {
  switch (tag_) {
    case SeriesTag::exp: return std::exp(t);
    case SeriesTag::cosh: return std::cosh(t);
    case SeriesTag::sinh: return std::sinh(t);
    case SeriesTag::geometric:
      if (!(std::abs(t) < lambda_)) throw SeriesDomainError("geometric series diverges at " + format_number(t));
      return 1.0 / (1.0 - t / lambda_);
    case SeriesTag::custom: break;
  }
  double v = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 0;) v = v * t + coeffs_[j];
  return v;
}

double eval_scalar_max(const PowerSeries& f, double t) {
  require_nonnegative(f, "eval_scalar_max");
  if (!(t >= 0.0)) throw std::invalid_argument("eval_scalar_max: argument must be nonnegative");
  check_admissible(f, t, "argument");
  double best = 0.0;
  switch (f.tag()) {
    case SeriesTag::custom:
      for (std::size_t j = 0; j < f.coefficients().size(); ++j) {
        best = std::max(best, f.coefficients()[j] * std::pow(t, static_cast<double>(j)));
      }
      break;
    case SeriesTag::geometric:
      best = 1.0;
      break;
    default: {
      if (t == 0.0) return f.coefficient(0);
      const double log_t = std::log(t);
      const std::size_t peak = static_cast<std::size_t>(std::floor(t));
      double log_best = kNegInf;
      for (std::size_t j = peak >= 3 ? peak - 3 : 0; j <= peak + 3; ++j) {
        log_best = std::max(log_best, f.log_coefficient(j) + static_cast<double>(j) * log_t);
      }
      if (log_best > kLogMax) throw std::overflow_error("eval_scalar_max: result overflows");
      best = std::exp(log_best);
    }
  }
  if (!std::isfinite(best)) throw std::overflow_error("eval_scalar_max: result overflows");
  return best;
}

MaxSeriesResult eval_matrix_max_detailed(const PowerSeries& f, const Matrix& a, std::size_t min_terms) {
  require_nonnegative(f, "eval_matrix_max");
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("eval_matrix_max: empty matrix");
  const double r = max_cycle_mean(a);
  check_admissible(f, r, "max cycle geometric mean");

  const LogMatrix w(a);
  LogMatrix power = log_identity(n);
  std::vector<double> acc(n * n, kNegInf);
  auto accumulate = [&](std::size_t j) {
    const double lc = f.log_coefficient(j);
    if (lc == kNegInf) return;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) acc[p * n + q] = std::max(acc[p * n + q], lc + power(p, q));
    }
  };

  MaxSeriesResult out;
  if (f.tag() == SeriesTag::custom) {
    Matrix sum(n);
    Matrix linear_power = Matrix::identity(n);
    try {
      for (std::size_t j = 0; j < f.coefficients().size(); ++j) {
        if (j > 0) linear_power = max_mul(linear_power, a);
        sum = oplus(sum, scale(linear_power, f.coefficients()[j]));
      }
    } catch (const std::invalid_argument&) {
      throw std::overflow_error("eval_matrix_max: result overflows");
    }
    out.terms = f.coefficients().size();
    out.value = sum;
    return out;
  }

  // Any walk of length j >= J >= n shortens, by removing cycles (each of
  // geometric mean <= r), to a walk of length l in [J - n, J). Hence
  //   alpha_j (A^j)_pq <= sup_{j >= J} alpha_j r^j * max_l (A^l)_pq r^{-l},
  // and the accumulation stops once that bound is below every entry.
  const double log_r = r == 0.0 ? kNegInf : std::log(r);
  const std::size_t cap = 64 * n + (exp_like(f.tag()) ? 2 * static_cast<std::size_t>(std::ceil(r)) : 0);
  std::deque<LogMatrix> window;
  for (std::size_t j = 0;; ++j) {
    if (j > 0) power = log_max_mul(power, w);
    accumulate(j);
    window.push_back(power);
    if (window.size() > n) window.pop_front();
    const std::size_t terms = j + 1;
    if (terms < n || terms < min_terms) continue;
    if (r == 0.0) {
      out.terms = terms;
      break;
    }
    const double log_tail = log_tail_sup(f, terms, log_r);
    bool certified = true;
    for (std::size_t p = 0; p < n && certified; ++p) {
      for (std::size_t q = 0; q < n && certified; ++q) {
        const double have = acc[p * n + q];
        if (have == kNegInf && terms >= f.period() * n) continue;
        for (std::size_t k = 0; k < window.size(); ++k) {
          const double l = static_cast<double>(terms - window.size() + k);
          if (log_tail - l * log_r + window[k](p, q) > have) {
            certified = false;
            break;
          }
        }
      }
    }
    if (certified) {
      out.terms = terms;
      break;
    }
    if (terms >= cap) {
      throw std::runtime_error("eval_matrix_max: no truncation certificate after " + std::to_string(terms) +
                               " terms");
    }
  }
  out.value = exp_matrix(LogMatrix(n, std::move(acc)), "eval_matrix_max");
  return out;
}

Matrix eval_matrix_max(const PowerSeries& f, const Matrix& a) { return eval_matrix_max_detailed(f, a).value; }

ClassicalSeriesResult eval_matrix_classical_detailed(const PowerSeries& f, const Matrix& a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("eval_matrix_classical: empty matrix");
  check_admissible(f, spectral_radius(a), "spectral radius");

  ClassicalSeriesResult out;
  if (f.tag() == SeriesTag::custom) {
    Matrix pos(n), neg(n);
    Matrix power = Matrix::identity(n);
    for (std::size_t j = 0; j < f.coefficients().size(); ++j) {
      if (j > 0) power = mul(power, a);
      const double c = f.coefficients()[j];
      if (c > 0.0) pos = add(pos, scale(power, c));
      if (c < 0.0) neg = add(neg, scale(power, -c));
    }
    out.terms = f.coefficients().size();
    out.value = signed_difference(pos, neg, "eval_matrix_classical");
    return out;
  }

  // A^j = s_j N_j with ||N_j|| = 1 in the row-sum norm, so ln ||A^j|| = ln s_j.
  // With q = ||A^J||^{1/J} and C = max_{b <= J} ||A^b|| / q^b, every power
  // obeys ||A^s|| <= C q^s, which bounds the tail by C sum_{j > J} alpha_j q^j.
  constexpr std::size_t kMaxTerms = 10000;
  Matrix normalized = Matrix::identity(n);
  std::vector<double> log_norm{0.0};
  Matrix partial = scale(Matrix::identity(n), f.coefficient(0));
  for (std::size_t j = 1;; ++j) {
    normalized = mul(normalized, a);
    const double nrm = row_sum_norm(normalized);
    if (nrm == 0.0) {
      out.terms = j;
      out.tail_bound = 0.0;
      break;
    }
    normalized = scale(normalized, 1.0 / nrm);
    log_norm.push_back(log_norm.back() + std::log(nrm));
    const double lc = f.log_coefficient(j);
    if (lc != kNegInf) {
      if (lc + log_norm[j] > kLogMax) throw std::overflow_error("eval_matrix_classical: result overflows");
      partial = add(partial, scale(normalized, std::exp(lc + log_norm[j])));
    }

    const double jd = static_cast<double>(j);
    const double log_q = log_norm[j] / jd;
    double log_c = kNegInf;
    for (std::size_t b = 0; b <= j; ++b) log_c = std::max(log_c, log_norm[b] - static_cast<double>(b) * log_q);
    double log_tail = kInf;
    if (f.tag() == SeriesTag::geometric) {
      const double log_x = log_q - std::log(f.lambda());
      if (log_x < 0.0) log_tail = log_c + (jd + 1.0) * log_x - std::log1p(-std::exp(log_x));
    } else {
      // alpha_j <= 1/j! for exp, cosh and sinh.
      const double q = std::exp(log_q);
      if (q < jd + 2.0) log_tail = log_c + (jd + 1.0) * log_q - std::lgamma(jd + 2.0) - std::log1p(-q / (jd + 2.0));
    }
    const double partial_norm = row_sum_norm(partial);
    if (log_tail < kInf && std::exp(log_tail) <= kSeriesTailTolerance * partial_norm) {
      out.terms = j + 1;
      out.tail_bound = std::exp(log_tail);
      break;
    }
    if (j + 1 >= kMaxTerms) {
      throw std::runtime_error("eval_matrix_classical: tail bound not reached after " + std::to_string(kMaxTerms) +
                               " terms");
    }
  }
  for (double v : partial.entries()) {
    if (!std::isfinite(v)) throw std::overflow_error("eval_matrix_classical: result overflows");
  }
  out.value = partial;
  return out;
}

Matrix eval_matrix_classical(const PowerSeries& f, const Matrix& a) { return eval_matrix_classical_detailed(f, a).value; }

namespace {

void validate_poly(std::size_t variables, const std::vector<PolyTerm>& terms, std::size_t args, bool signed_ok,
                   const char* op) {
  if (terms.empty()) throw std::invalid_argument(std::string(op) + ": polynomial has no terms");
  if (args != variables) {
    throw DimensionError(std::string(op) + ": polynomial has " + std::to_string(variables) + " variables, got " +
                         std::to_string(args) + " arguments");
  }
  for (const PolyTerm& t : terms) {
    if (t.exponents.size() != variables) throw DimensionError(std::string(op) + ": exponent count mismatch");
    if (!std::isfinite(t.coefficient) || (!signed_ok && t.coefficient < 0.0)) {
      throw std::invalid_argument(std::string(op) + ": bad coefficient " + format_number(t.coefficient));
    }
  }
}

std::size_t common_size(const std::vector<Matrix>& as, const char* op) {
  if (as.empty()) throw std::invalid_argument(std::string(op) + ": no matrices");
  for (const Matrix& a : as) {
    if (a.size() != as.front().size()) throw DimensionError(std::string(op) + ": dimension mismatch");
  }
  return as.front().size();
}

Matrix term_max(const PolyTerm& t, const std::vector<Matrix>& as) {
  Matrix m = Matrix::identity(as.front().size());
  for (std::size_t v = 0; v < as.size(); ++v) {
    if (t.exponents[v] > 0) m = max_mul(m, max_power(as[v], t.exponents[v]));
  }
  return m;
}

Matrix term_classical(const PolyTerm& t, const std::vector<Matrix>& as) {
  Matrix m = Matrix::identity(as.front().size());
  for (std::size_t v = 0; v < as.size(); ++v) {
    if (t.exponents[v] > 0) m = mul(m, classical_power(as[v], t.exponents[v]));
  }
  return m;
}

double term_scalar(const PolyTerm& t, const std::vector<double>& x) {
  double v = t.coefficient;
  for (std::size_t k = 0; k < x.size(); ++k) v *= std::pow(x[k], static_cast<double>(t.exponents[k]));
  return v;
}

}  // namespace

Matrix eval_max_multipoly(const MaxPolynomial& p, const std::vector<Matrix>& as) {
  const std::size_t n = common_size(as, "eval_max_multipoly");
  validate_poly(p.variables, p.terms, as.size(), false, "eval_max_multipoly");
  Matrix out(n);
  for (const PolyTerm& t : p.terms) out = oplus(out, scale(term_max(t, as), t.coefficient));
  return out;
}

double eval_max_multipoly(const MaxPolynomial& p, const std::vector<double>& x) {
  validate_poly(p.variables, p.terms, x.size(), false, "eval_max_multipoly");
  double out = 0.0;
  for (const PolyTerm& t : p.terms) out = std::max(out, term_scalar(t, x));
  return out;
}

Matrix eval_classical_multipoly(const ClassicalPolynomial& p, const std::vector<Matrix>& as) {
  const std::size_t n = common_size(as, "eval_classical_multipoly");
  validate_poly(p.variables, p.terms, as.size(), true, "eval_classical_multipoly");
  Matrix pos(n), neg(n);
  for (const PolyTerm& t : p.terms) {
    if (t.coefficient > 0.0) pos = add(pos, scale(term_classical(t, as), t.coefficient));
    if (t.coefficient < 0.0) neg = add(neg, scale(term_classical(t, as), -t.coefficient));
  }
  return signed_difference(pos, neg, "eval_classical_multipoly");
}

double eval_classical_multipoly(const ClassicalPolynomial& p, const std::vector<double>& x) {
  validate_poly(p.variables, p.terms, x.size(), true, "eval_classical_multipoly");
  double out = 0.0;
  for (const PolyTerm& t : p.terms) out += term_scalar(t, x);
  return out;
}

bool same_value_set(const std::vector<double>& x, const std::vector<double>& y, double rel_tol) {
  const std::vector<double> a = distinct_values(x, rel_tol);
  const std::vector<double> b = distinct_values(y, rel_tol);
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (rel_gap(a[k], b[k]) > rel_tol) return false;
  }
  return true;
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string s = "{";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + format_number(v[k]);
  return s + "}";
}

/// Per-index and set comparison shared by both spectral mapping checks.
CheckReport compare_spectra(std::string key, std::string statement, const std::vector<double>& got_index,
                            const std::vector<double>& want_index, const std::vector<double>& got_set,
                            const std::vector<double>& want_set, double tol, std::string digest) {
  CheckReport report;
  report.key = std::move(key);
  report.statement = std::move(statement);
  report.digest = std::move(digest);
  std::size_t worst = 0;
  double worst_gap = 0.0;
  for (std::size_t i = 0; i < got_index.size(); ++i) {
    const double g = rel_gap(got_index[i], want_index[i]);
    if (g > worst_gap) {
      worst_gap = g;
      worst = i;
    }
  }
  if (got_index.empty()) {
    report.chain = {0.0, 0.0};
    report.verdict = Verdict::holds;
  } else {
    judge_identity(report, got_index[worst], want_index[worst], tol);
  }
  const bool sets = same_value_set(got_set, want_set, tol);
  if (!sets) report.verdict = Verdict::violated;
  report.note = (got_index.empty() ? std::string("per-index not checked") : "worst index " + std::to_string(worst + 1)) +
                "; spectrum " + join(distinct_values(got_set, tol)) + " vs image " +
                join(distinct_values(want_set, tol)) + (sets ? "" : " (sets differ)");
  return report;
}

}  // namespace

CheckReport check_spectral_map_max(const PowerSeries& f, const Matrix& a) {
  const Matrix fa = eval_matrix_max(f, a);
  const SpectralProfile sa = spectrum(a);
  const SpectralProfile sf = spectrum(fa);
  std::vector<double> want_index, want_set;
  for (double r : sa.r) want_index.push_back(eval_scalar_max(f, r));
  for (double r : sa.sigma_max) want_set.push_back(eval_scalar_max(f, r));
  return compare_spectra("spectral_map_max", "r_{e_i}(f_max(A)) = f_max(r_{e_i}(A)), sigma_max(f_max(A)) = f_max(sigma_max(A))",
                         sf.r, want_index, sf.sigma_max, want_set, kMaxMapTolerance,
                         Digest().add(f.to_string()).add(a).hex());
}

CheckReport check_spectral_map_dist(const PowerSeries& f, const Matrix& a) {
  const Matrix fa = eval_matrix_classical(f, a);
  const SpectralProfile sa = spectrum(a);
  const SpectralProfile sf = spectrum(fa);
  const bool per_index = !f.is_signed() && f.coefficient(1) > 0.0;
  std::vector<double> got_index, want_index, want_set;
  if (per_index) {
    got_index = sf.rho;
    for (double r : sa.rho) want_index.push_back(f.value(r));
  }
  for (double r : sa.sigma_dist) want_set.push_back(f.value(r));
  return compare_spectra("spectral_map_dist", "sigma_D(f(A)) = f(sigma_D(A))", got_index, want_index, sf.sigma_dist,
                         want_set, kDistMapTolerance, Digest().add(f.to_string()).add(a).hex());
}

namespace {

bool close_matrices(const Matrix& x, const Matrix& y, double rel_tol) {
  const double scale = std::max(norm(x), norm(y));
  for (std::size_t k = 0; k < x.entries().size(); ++k) {
    if (std::abs(x.entries()[k] - y.entries()[k]) > rel_tol * scale) return false;
  }
  return true;
}

/// The pieces of a semiring the family check needs.
struct FamilySemiring {
  std::string name;
  std::function<bool(const Matrix&, const Matrix&)> commute;
  std::function<Matrix(const std::vector<Matrix>&)> eval;
  std::function<double(const std::vector<double>&)> eval_scalar;
  /// Per-index values and the class values of a condensation.
  std::function<std::vector<double>(const SpectralProfile&)> per_index;
  std::function<std::vector<double>(const Condensation&)> class_values;
  double tol;
};

bool values_distinct(std::vector<double> v, double tol) { return distinct_values(v, tol).size() == v.size(); }

/// Enumerates every tuple (x_1, .., x_m), x_j drawn from sets[j], with
/// position `fixed` pinned to `pin` when fixed < m.
void for_each_tuple(const std::vector<std::vector<double>>& sets, std::size_t fixed, double pin,
                    const std::function<void(const std::vector<double>&)>& visit) {
  const std::size_t m = sets.size();
  std::vector<double> tuple(m);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == m) {
      visit(tuple);
      return;
    }
    if (k == fixed) {
      tuple[k] = pin;
      rec(k + 1);
      return;
    }
    for (double v : sets[k]) {
      tuple[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
}

double nearest_gap(double x, const std::vector<double>& set) {
  double best = kInf;
  for (double s : set) best = std::min(best, rel_gap(x, s));
  return best;
}

std::vector<CheckReport> family_check(const FamilySemiring& sr, const std::vector<Matrix>& as, const Digest& digest) {
  const std::size_t m = as.size();
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      if (!sr.commute(as[j], as[k])) {
        throw std::invalid_argument("check_commuting_family: matrices " + std::to_string(j + 1) + " and " +
                                    std::to_string(k + 1) + " do not commute in the " + sr.name + " product");
      }
    }
  }
  const Matrix pa = sr.eval(as);
  const std::string hex = digest.hex();
  const Condensation cp = condense(pa);
  const std::vector<double> image_index = sr.per_index(spectrum(pa, cp));
  const std::vector<double> image_set = distinct_values(image_index);
  std::vector<Condensation> cs;
  std::vector<std::vector<double>> index_values, sets;
  for (const Matrix& a : as) {
    cs.push_back(condense(a));
    index_values.push_back(sr.per_index(spectrum(a, cs.back())));
    sets.push_back(distinct_values(index_values.back()));
  }

  std::vector<CheckReport> out;
  {
    CheckReport r;
    r.key = "family_" + sr.name + "_contains";
    r.statement = "each lambda_j in sigma(A_j) extends to a tuple with p(lambda) in sigma(p(A_1, .., A_m))";
    r.digest = hex;
    double worst = 0.0, worst_value = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      for (double lam : sets[j]) {
        double best = kInf, best_value = 0.0;
        for_each_tuple(sets, j, lam, [&](const std::vector<double>& t) {
          const double v = sr.eval_scalar(t);
          const double g = nearest_gap(v, image_set);
          if (g < best) {
            best = g;
            best_value = v;
          }
        });
        if (best >= worst) {
          worst = best;
          worst_value = best_value;
        }
      }
    }
    double nearest = 0.0;
    for (double s : image_set) {
      if (rel_gap(worst_value, s) == nearest_gap(worst_value, image_set)) nearest = s;
    }
    judge_identity(r, worst_value, nearest, sr.tol);
    r.note = "worst tuple image vs nearest spectrum element";
    out.push_back(r);
  }
  {
    CheckReport r;
    r.key = "family_" + sr.name + "_decomposes";
    r.statement = "each lambda in sigma(p(A_1, .., A_m)) equals p(lambda_1, .., lambda_m), lambda_j in sigma(A_j)";
    r.digest = hex;
    double worst = 0.0, worst_lam = 0.0, worst_value = 0.0;
    for (double lam : image_set) {
      double best = kInf, best_value = 0.0;
      for_each_tuple(sets, m, 0.0, [&](const std::vector<double>& t) {
        const double v = sr.eval_scalar(t);
        if (rel_gap(v, lam) < best) {
          best = rel_gap(v, lam);
          best_value = v;
        }
      });
      if (best >= worst) {
        worst = best;
        worst_lam = lam;
        worst_value = best_value;
      }
    }
    judge_identity(r, worst_lam, worst_value, sr.tol);
    r.note = "worst spectrum element vs nearest tuple image";
    out.push_back(r);
  }

  const std::string per_key = "family_" + sr.name + "_per_index";
  const std::string per_statement = "value_{e_i}(p(A_1, .., A_m)) = p(value_{e_k}(A_1), .., value_{e_k}(A_m)) for some k";
  bool irreducible = cp.class_count() == 1;
  for (const Condensation& c : cs) irreducible = irreducible || c.class_count() == 1;
  bool distinct = true;
  for (const Condensation& c : cs) distinct = distinct && values_distinct(sr.class_values(c), sr.tol);
  if (!irreducible && !distinct) {
    out.push_back(not_applicable(per_key, per_statement,
                                 "no matrix is irreducible and some class values coincide"));
    out.back().digest = hex;
    return out;
  }
  CheckReport r;
  r.key = per_key;
  r.statement = per_statement;
  r.digest = hex;
  const std::size_t n = pa.size();
  double worst = -1.0;
  std::size_t worst_i = 0;
  double worst_lhs = 0.0, worst_rhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = kInf, best_rhs = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (irreducible && k != i) continue;
      std::vector<double> x(m);
      for (std::size_t j = 0; j < m; ++j) x[j] = index_values[j][k];
      const double v = sr.eval_scalar(x);
      if (rel_gap(image_index[i], v) < best) {
        best = rel_gap(image_index[i], v);
        best_rhs = v;
      }
    }
    if (best > worst) {
      worst = best;
      worst_i = i;
      worst_lhs = image_index[i];
      worst_rhs = best_rhs;
    }
  }
  judge_identity(r, worst_lhs, worst_rhs, sr.tol);
  r.note = std::string(irreducible ? "irreducible member, k = i" : "distinct class values, k searched") +
           "; worst index " + std::to_string(worst_i + 1);
  out.push_back(r);
  return out;
}

}  // namespace

bool max_commute(const Matrix& a, const Matrix& b, double rel_tol) {
  return close_matrices(max_mul(a, b), max_mul(b, a), rel_tol);
}

bool classical_commute(const Matrix& a, const Matrix& b, double rel_tol) {
  return close_matrices(mul(a, b), mul(b, a), rel_tol);
}

std::vector<CheckReport> check_commuting_family(const MaxPolynomial& p, const std::vector<Matrix>& as) {
  common_size(as, "check_commuting_family");
  validate_poly(p.variables, p.terms, as.size(), false, "check_commuting_family");
  FamilySemiring sr;
  sr.name = "max";
  sr.commute = [](const Matrix& x, const Matrix& y) { return max_commute(x, y); };
  sr.eval = [&](const std::vector<Matrix>& xs) { return eval_max_multipoly(p, xs); };
  sr.eval_scalar = [&](const std::vector<double>& x) { return eval_max_multipoly(p, x); };
  sr.per_index = [](const SpectralProfile& s) { return s.r; };
  sr.class_values = [](const Condensation& c) { return c.mcgm; };
  sr.tol = kMaxMapTolerance;
  Digest d;
  d.add(std::string_view("max")).add(std::span<const Matrix>(as));
  for (const PolyTerm& t : p.terms) {
    d.add(t.coefficient);
    for (unsigned e : t.exponents) d.add(static_cast<std::uint64_t>(e));
  }
  return family_check(sr, as, d);
}

std::vector<CheckReport> check_commuting_family(const ClassicalPolynomial& p, const std::vector<Matrix>& as) {
  common_size(as, "check_commuting_family");
  validate_poly(p.variables, p.terms, as.size(), true, "check_commuting_family");
  FamilySemiring sr;
  sr.name = "dist";
  sr.commute = [](const Matrix& x, const Matrix& y) { return classical_commute(x, y); };
  sr.eval = [&](const std::vector<Matrix>& xs) { return eval_classical_multipoly(p, xs); };
  sr.eval_scalar = [&](const std::vector<double>& x) { return eval_classical_multipoly(p, x); };
  sr.per_index = [](const SpectralProfile& s) { return s.rho; };
  sr.class_values = [](const Condensation& c) { return c.perron; };
  sr.tol = kDistMapTolerance;
  Digest d;
  d.add(std::string_view("dist")).add(std::span<const Matrix>(as));
  for (const PolyTerm& t : p.terms) {
    d.add(t.coefficient);
    for (unsigned e : t.exponents) d.add(static_cast<std::uint64_t>(e));
  }
  return family_check(sr, as, d);
}

}  // namespace maxspec
