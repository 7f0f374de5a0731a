#include "maxspec/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "maxspec/oracles.hpp"
#include "maxspec/specgraph.hpp"

namespace maxspec {

namespace {

using Ms = std::vector<Matrix>;
using Radius = std::function<double(const Matrix&)>;

/// Tolerance for the exact identities (homogeneity, norm identity).
constexpr double kIdentityTolerance = 1e-9;

double r_max(const Matrix& a) { return max_cycle_mean(a); }

Ms hadamard_powers(const Ms& as, const std::vector<double>& alpha) {
  Ms out;
  for (std::size_t j = 0; j < as.size(); ++j) out.push_back(hadamard_power(as[j], alpha[j]));
  return out;
}

/// P_j = A_j .. A_m A_1 .. A_{j-1} under the given product.
Ms cyclic_products(const Ms& as, Matrix (*prod)(std::span<const Matrix>)) {
  const std::size_t m = as.size();
  Ms out;
  for (std::size_t j = 0; j < m; ++j) {
    Ms order;
    for (std::size_t k = 0; k < m; ++k) order.push_back(as[(j + k) % m]);
    out.push_back(prod(order));
  }
  return out;
}

Matrix had(const Ms& as) { return hadamard_product(as); }

Matrix max_chain(const Ms& factors, const std::vector<bool>& transposed) {
  Ms order;
  for (std::size_t k = 0; k < factors.size(); ++k) order.push_back(transposed[k] ? transpose(factors[k]) : factors[k]);
  return max_product(order);
}

double root(double v, std::size_t m) { return std::pow(v, 1.0 / static_cast<double>(m)); }

double product_of_powers(const std::vector<double>& v, const std::vector<double>& alpha) {
  double p = 1.0;
  for (std::size_t j = 0; j < v.size(); ++j) p *= std::pow(v[j], alpha[j]);
  return p;
}

double product_of(const std::vector<double>& v) {
  double p = 1.0;
  for (double x : v) p *= x;
  return p;
}

std::vector<double> radii(const Ms& as, const Radius& rad) {
  std::vector<double> out;
  for (const Matrix& a : as) out.push_back(rad(a));
  return out;
}

// Chains shared by the e_i, x and classical forms.

std::vector<double> wgm_chain(const Ms& as, const std::vector<double>& alpha, const Radius& rad) {
  return {rad(had(hadamard_powers(as, alpha))), product_of_powers(radii(as, rad), alpha)};
}

std::vector<double> hadamard_chain(const Ms& as, const Radius& rad) {
  return {rad(had(as)), product_of(radii(as, rad))};
}

std::vector<double> pj_chain(const Ms& as, Matrix (*prod)(std::span<const Matrix>), const Radius& rad) {
  const Ms ps = cyclic_products(as, prod);
  return {rad(had(as)), root(rad(had(ps)), as.size()), root(product_of(radii(ps, rad)), as.size())};
}

std::vector<double> pair_chain(const Matrix& a, const Matrix& b, const Radius& rad) {
  const Matrix ab = max_mul(a, b), ba = max_mul(b, a);
  return {rad(hadamard(a, b)), std::sqrt(rad(hadamard(ab, ba))), std::sqrt(rad(ab) * rad(ba))};
}

Radius r_at_index(std::size_t i) {
  return [i](const Matrix& a) { return local_r(a, i); };
}

Radius r_at(const Vector& x) {
  return [&x](const Matrix& a) { return local_r_at(a, x); };
}

Radius rho_at(const Vector& x) {
  return [&x](const Matrix& a) { return local_rho_at(a, x); };
}

/// Even m: two products with opposite transpose parity; odd m: one product
/// of length 2m transposing every second factor.
std::vector<double> th5_chain(const Ms& as) {
  const std::size_t m = as.size();
  const double lhs = std::pow(norm(had(as)), 2.0);
  if (m % 2 == 0) {
    std::vector<bool> first(m), second(m);
    for (std::size_t k = 0; k < m; ++k) {
      first[k] = k % 2 == 0;
      second[k] = k % 2 == 1;
    }
    return {lhs, r_max(max_chain(as, first)) * r_max(max_chain(as, second))};
  }
  Ms twice(as);
  twice.insert(twice.end(), as.begin(), as.end());
  std::vector<bool> t(2 * m);
  for (std::size_t k = 0; k < 2 * m; ++k) t[k] = k % 2 == 1;
  return {lhs, r_max(max_chain(twice, t))};
}

void identity_of(CheckReport& r, const std::vector<double>& values, double tol) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  judge_identity(r, *lo, *hi, tol);
  r.chain = values;
}

using Body = std::function<void(CheckReport&, const CheckInputs&)>;

struct Flags {
  bool x = false;
  bool alpha = false;
  bool t = false;
  bool index = false;
};

void add_row(std::vector<InequalityRow>& rows, std::string key, std::string statement, bool proved,
             std::size_t arity, Flags flags, Body body) {
  InequalityRow row;
  row.key = key;
  row.statement = statement;
  row.proved = proved;
  row.arity = arity;
  row.uses_x = flags.x;
  row.uses_alpha = flags.alpha;
  row.uses_t = flags.t;
  row.uses_index = flags.index;
  row.evaluate = [key, statement, body](const CheckInputs& in) {
    CheckReport r;
    r.key = key;
    r.statement = statement;
    r.digest = digest(in);
    body(r, in);
    return r;
  };
  rows.push_back(std::move(row));
}

std::vector<InequalityRow> build_registry() {
  std::vector<InequalityRow> rows;
  const Flags none, idx{.index = true}, x{.x = true};

  add_row(rows, "humu", "r(A_1 o .. o A_m) <= r(P_1 o .. o P_m)^{1/m} <= r(A_1 (x) .. (x) A_m)", true, 0, none,
          [](CheckReport& r, const CheckInputs& in) {
            const Ms& as = in.matrices;
            judge_chain(r, {r_max(had(as)), root(r_max(had(cyclic_products(as, max_product))), as.size()),
                            r_max(max_product(as))});
          });
  add_row(rows, "maxmixmax", "r(A o B) <= r((A (x) B) o (B (x) A))^{1/2} <= r(A (x) B)", true, 2, none,
          [](CheckReport& r, const CheckInputs& in) {
            const Matrix& a = in.matrices[0];
            const Matrix& b = in.matrices[1];
            const Matrix ab = max_mul(a, b);
            judge_chain(r, {r_max(hadamard(a, b)), std::sqrt(r_max(hadamard(ab, max_mul(b, a)))), r_max(ab)});
          });
  add_row(rows, "kvmax", "r(A o B) <= ||A o B|| <= r(A^T (x) B)", true, 2, none,
          [](CheckReport& r, const CheckInputs& in) {
            const Matrix h = hadamard(in.matrices[0], in.matrices[1]);
            judge_chain(r, {r_max(h), norm(h), r_max(max_mul(transpose(in.matrices[0]), in.matrices[1]))});
          });
  add_row(rows, "hadamard_sq", "r((A (x) B) o (B (x) A)) <= r(A^2 (x) B^2)", true, 2, none,
          [](CheckReport& r, const CheckInputs& in) {
            const Matrix& a = in.matrices[0];
            const Matrix& b = in.matrices[1];
            judge_chain(r, {r_max(hadamard(max_mul(a, b), max_mul(b, a))),
                            r_max(max_mul(max_power(a, 2), max_power(b, 2)))});
          });
  add_row(rows, "remark_fixpoint", "r(A (x) B) <= a_ii b_ii for some i implies r(A (x) B) = r(A o B) = a_ii b_ii",
          true, 2, none, [](CheckReport& r, const CheckInputs& in) {
            const Matrix& a = in.matrices[0];
            const Matrix& b = in.matrices[1];
            const double rab = r_max(max_mul(a, b));
            for (std::size_t i = 0; i < a.size(); ++i) {
              const double d = a(i, i) * b(i, i);
              // r(A (x) B) >= a_ii b_ii always, so this is equality up to round-off.
              if (rab <= d * (1 + kLinkTolerance)) {
                identity_of(r, {rab, r_max(hadamard(a, b)), d}, kLinkTolerance);
                r.note = "i = " + std::to_string(i + 1);
                return;
              }
            }
            r.verdict = Verdict::not_applicable;
            r.note = "r(A (x) B) exceeds every a_ii b_ii";
          });
  add_row(rows, "wgm_local_max", "r_i(A_1^(a_1) o .. o A_m^(a_m)) <= r_i(A_1)^{a_1} .. r_i(A_m)^{a_m}", true, 0,
          {.alpha = true, .index = true}, [](CheckReport& r, const CheckInputs& in) {
            judge_chain(r, wgm_chain(in.matrices, in.alpha, r_at_index(in.index)));
          });
  add_row(rows, "had_local_max", "r_i(A_1 o .. o A_m) <= r_i(A_1) .. r_i(A_m)", true, 0, idx,
          [](CheckReport& r, const CheckInputs& in) {
            judge_chain(r, hadamard_chain(in.matrices, r_at_index(in.index)));
          });
  add_row(rows, "pj_local_max", "r_i(A_1 o .. o A_m) <= r_i(P_1 o .. o P_m)^{1/m} <= (r_i(P_1) .. r_i(P_m))^{1/m}",
          true, 0, idx, [](CheckReport& r, const CheckInputs& in) {
            judge_chain(r, pj_chain(in.matrices, max_product, r_at_index(in.index)));
          });
  add_row(rows, "pair_local_max",
          "r_i(A o B) <= r_i((A (x) B) o (B (x) A))^{1/2} <= (r_i(A (x) B) r_i(B (x) A))^{1/2}", true, 2, idx,
          [](CheckReport& r, const CheckInputs& in) {
            judge_chain(r, pair_chain(in.matrices[0], in.matrices[1], r_at_index(in.index)));
          });
  add_row(rows, "lradius_bundle",
          "(1) r_x(A^(t)) = r_x(A)^t; (2)-(5) the weighted mean, Hadamard, P_j and pair bounds with r_x", true, 0,
          {.x = true, .alpha = true, .t = true}, [](CheckReport& r, const CheckInputs& in) {
            const Radius rx = r_at(in.x);
            std::vector<CheckReport> items(5, r);
            const Matrix& a = in.matrices[0];
            identity_of(items[0], {rx(hadamard_power(a, in.t)), std::pow(rx(a), in.t)}, kIdentityTolerance);
            judge_chain(items[1], wgm_chain(in.matrices, in.alpha, rx));
            judge_chain(items[2], hadamard_chain(in.matrices, rx));
            judge_chain(items[3], pj_chain(in.matrices, max_product, rx));
            if (in.matrices.size() >= 2) {
              judge_chain(items[4], pair_chain(in.matrices[0], in.matrices[1], rx));
            } else {
              items.pop_back();
            }
            std::size_t pick = 0;
            std::string note;
            for (std::size_t k = 0; k < items.size(); ++k) {
              note += (k ? ", " : "") + std::string("(") + std::to_string(k + 1) + ") " + to_string(items[k].verdict);
              if (items[k].verdict == Verdict::violated && items[pick].verdict != Verdict::violated) pick = k;
              if (items[pick].verdict == Verdict::holds && items[k].verdict == Verdict::near_tight) pick = k;
            }
            r = items[pick];
            r.note = note;
          });
  add_row(rows, "rho_schur_t", "rho_x(A^(t)) <= rho_x(A)^t for t >= 1", true, 1, {.x = true, .t = true},
          [](CheckReport& r, const CheckInputs& in) {
            const Radius rho = rho_at(in.x);
            judge_chain(r, {rho(hadamard_power(in.matrices[0], in.t)), std::pow(rho(in.matrices[0]), in.t)});
          });
  add_row(rows, "rho_t_chain", "rho_x(A_1^(t) .. A_m^(t)) <= rho_x((A_1 .. A_m)^(t)) <= rho_x(A_1 .. A_m)^t, t >= 1",
          true, 0, {.x = true, .t = true}, [](CheckReport& r, const CheckInputs& in) {
            const Radius rho = rho_at(in.x);
            std::vector<Matrix> powered;
            for (const Matrix& a : in.matrices) powered.push_back(hadamard_power(a, in.t));
            const Matrix p = product(in.matrices);
            judge_chain(r, {rho(product(powered)), rho(hadamard_power(p, in.t)), std::pow(rho(p), in.t)});
          });
  add_row(rows, "rho_wgm",
          "rho_x(A_1^(a_1) o .. o A_m^(a_m)) <= rho_x(A_1)^{a_1} .. rho_x(A_m)^{a_m}, a_1 + .. + a_m >= 1", true, 0,
          {.x = true, .alpha = true}, [](CheckReport& r, const CheckInputs& in) {
            judge_chain(r, wgm_chain(in.matrices, in.alpha, rho_at(in.x)));
          });
  add_row(rows, "rho_B_chain",
          "B = prod_i (A_i1^(a_1) o .. o A_im^(a_m)): rho_x(B) <= rho_x(o_j (A_1j .. A_lj)^(a_j)) <= prod_j "
          "rho_x(A_1j .. A_lj)^{a_j}",
          true, 0, {.x = true, .alpha = true}, [](CheckReport& r, const CheckInputs& in) {
            const std::size_t l = in.rows;
            const std::size_t m = in.matrices.size() / l;
            const Radius rho = rho_at(in.x);
            Ms factors, columns;
            for (std::size_t i = 0; i < l; ++i) {
              const Ms row(in.matrices.begin() + static_cast<std::ptrdiff_t>(i * m),
                           in.matrices.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
              factors.push_back(had(hadamard_powers(row, in.alpha)));
            }
            for (std::size_t j = 0; j < m; ++j) {
              Ms column;
              for (std::size_t i = 0; i < l; ++i) column.push_back(in.matrices[i * m + j]);
              columns.push_back(product(column));
            }
            judge_chain(r, {rho(product(factors)), rho(had(hadamard_powers(columns, in.alpha))),
                            product_of_powers(radii(columns, rho), in.alpha)});
          });
  add_row(rows, "rho_hadamard", "rho_x(A_1 o .. o A_m) <= rho_x(A_1) .. rho_x(A_m)", true, 0, x,
          [](CheckReport& r, const CheckInputs& in) { judge_chain(r, hadamard_chain(in.matrices, rho_at(in.x))); });
  add_row(rows, "rho_pj", "rho_x(A_1 o .. o A_m) <= rho_x(P_1 o .. o P_m)^{1/m} <= (rho_x(P_1) .. rho_x(P_m))^{1/m}",
          true, 0, x,
          [](CheckReport& r, const CheckInputs& in) { judge_chain(r, pj_chain(in.matrices, product, rho_at(in.x))); });
  add_row(rows, "norm_sq_identity", "||A||^2 = r(A^T (x) A) = r(A (x) A^T)", true, 1, none,
          [](CheckReport& r, const CheckInputs& in) {
            const Matrix& a = in.matrices[0];
            identity_of(r, {norm(a) * norm(a), r_max(max_mul(transpose(a), a)), r_max(max_mul(a, transpose(a)))},
                        kIdentityTolerance);
          });
  add_row(rows, "jordan_pair_refined", "||A o B|| <= r((A^T (x) B) o (B^T (x) A))^{1/2} <= r(A^T (x) B)", true, 2,
          none, [](CheckReport& r, const CheckInputs& in) {
            const Matrix& a = in.matrices[0];
            const Matrix& b = in.matrices[1];
            const Matrix atb = max_mul(transpose(a), b);
            judge_chain(r, {norm(hadamard(a, b)), std::sqrt(r_max(hadamard(atb, max_mul(transpose(b), a)))),
                            r_max(atb)});
          });
  add_row(rows, "th5_even",
          "m even: ||A_1 o .. o A_m||^2 <= r(A_1^T (x) A_2 (x) A_3^T (x) .. (x) A_m) r(A_1 (x) A_2^T (x) .. (x) A_m^T)",
          true, 0, none, [](CheckReport& r, const CheckInputs& in) {
            if (in.matrices.size() % 2 != 0) {
              r.verdict = Verdict::not_applicable;
              r.note = "needs an even number of matrices";
              return;
            }
            judge_chain(r, th5_chain(in.matrices));
          });
  add_row(rows, "th5_odd",
          "m odd: ||A_1 o .. o A_m||^2 <= r(A_1 (x) A_2^T (x) .. (x) A_m (x) A_1^T (x) A_2 (x) .. (x) A_m^T)", true, 0,
          none, [](CheckReport& r, const CheckInputs& in) {
            if (in.matrices.size() % 2 != 1) {
              r.verdict = Verdict::not_applicable;
              r.note = "needs an odd number of matrices";
              return;
            }
            judge_chain(r, th5_chain(in.matrices));
          });
  add_row(rows, "jordan_triple", "||A o B^T o A|| <= ||A (x) B (x) A||", true, 2, none,
          [](CheckReport& r, const CheckInputs& in) {
            const Matrix& a = in.matrices[0];
            const Matrix& b = in.matrices[1];
            judge_chain(r, {norm(hadamard_product(std::vector<Matrix>{a, transpose(b), a})),
                            norm(max_product(std::vector<Matrix>{a, b, a}))});
          });

  // Local analogues that fail in general; kept as must-violate fixtures.
  add_row(rows, "kvmax_local", "r_i(A o B) <= r_i(A^T (x) B)", false, 2, idx,
          [](CheckReport& r, const CheckInputs& in) {
            judge_chain(r, {local_r(hadamard(in.matrices[0], in.matrices[1]), in.index),
                            local_r(max_mul(transpose(in.matrices[0]), in.matrices[1]), in.index)});
          });
  add_row(rows, "maxmix_local", "r_i(A o B) <= r_i(A (x) B)", false, 2, idx,
          [](CheckReport& r, const CheckInputs& in) {
            judge_chain(r, {local_r(hadamard(in.matrices[0], in.matrices[1]), in.index),
                            local_r(max_mul(in.matrices[0], in.matrices[1]), in.index)});
          });
  add_row(rows, "maxprod_local", "r_i(A (x) B) <= r_i(A) r_i(B)", false, 2, idx,
          [](CheckReport& r, const CheckInputs& in) {
            judge_chain(r, {local_r(max_mul(in.matrices[0], in.matrices[1]), in.index),
                            local_r(in.matrices[0], in.index) * local_r(in.matrices[1], in.index)});
          });
  add_row(rows, "swap_local", "r_i(A (x) B) <= r_i(B (x) A)", false, 2, idx,
          [](CheckReport& r, const CheckInputs& in) {
            judge_chain(r, {local_r(max_mul(in.matrices[0], in.matrices[1]), in.index),
                            local_r(max_mul(in.matrices[1], in.matrices[0]), in.index)});
          });
  return rows;
}

/// Reason the inputs fall outside the row's hypotheses, or empty.
std::string hypothesis_failure(const InequalityRow& row, const CheckInputs& in) {
  const Ms& as = in.matrices;
  if (as.empty()) return "no matrices";
  for (const Matrix& a : as) {
    if (a.size() != as.front().size()) return "matrices differ in dimension";
  }
  const std::size_t n = as.front().size();
  if (n == 0) return "empty matrices";
  if (row.key == "rho_B_chain") {
    if (in.rows == 0 || as.size() % in.rows != 0) return "matrix count is not a multiple of the row count";
  } else if (row.arity != 0 && as.size() != row.arity) {
    return "needs exactly " + std::to_string(row.arity) + " matrices";
  }
  if (row.uses_index && in.index >= n) return "index out of range";
  if (row.uses_x && in.x.size() != n) return "x has the wrong dimension";
  if (row.uses_t) {
    if (!(in.t > 0.0) || !std::isfinite(in.t)) return "needs t > 0";
    if (row.key != "lradius_bundle" && in.t < 1.0) return "needs t >= 1";
  }
  if (row.uses_alpha) {
    const std::size_t m = row.key == "rho_B_chain" ? as.size() / in.rows : as.size();
    if (in.alpha.size() != m) return "needs one weight per matrix";
    double sum = 0.0;
    for (double a : in.alpha) {
      if (!(a > 0.0) || !std::isfinite(a)) return "weights must be positive";
      sum += a;
    }
    if ((row.key == "rho_wgm" || row.key == "rho_B_chain") && sum < 1.0 - 1e-15) return "weights must sum to at least 1";
  }
  return {};
}

}  // namespace

const std::vector<InequalityRow>& registry() {
  static const std::vector<InequalityRow> rows = build_registry();
  return rows;
}

const InequalityRow& registry_row(const std::string& key) {
  for (const InequalityRow& row : registry()) {
    if (row.key == key) return row;
  }
  throw std::out_of_range("unknown inequality '" + key + "'");
}

CheckReport run_check(const std::string& key, const CheckInputs& inputs) {
  const InequalityRow& row = registry_row(key);
  const std::string why = hypothesis_failure(row, inputs);
  if (!why.empty()) {
    CheckReport r = not_applicable(row.key, row.statement, why);
    r.digest = digest(inputs);
    return r;
  }
  return row.evaluate(inputs);
}

std::string digest(const CheckInputs& in) {
  Digest d;
  d.add(std::span<const Matrix>(in.matrices));
  d.add(static_cast<std::uint64_t>(in.rows)).add(in.x);
  d.add(static_cast<std::uint64_t>(in.alpha.size()));
  for (double a : in.alpha) d.add(a);
  d.add(in.t).add(static_cast<std::uint64_t>(in.index));
  return d.hex();
}

CheckInputs draw_inputs(const SuiteConfig& config, std::size_t trial) {
  std::mt19937_64 rng(config.seed * 0x9e3779b97f4a7c15ULL + trial);
  auto pick = [&](const auto& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };

  oracles::GeneratorSpec spec;
  spec.n_min = spec.n_max = std::uniform_int_distribution<std::size_t>(config.n_min, config.n_max)(rng);
  spec.density = pick(config.densities);
  const std::size_t n = spec.n_min;
  const std::size_t m = pick(config.family_sizes);

  CheckInputs in;
  for (std::size_t j = 0; j < m; ++j) in.matrices.push_back(oracles::generate(spec, rng));

  // Dirichlet weights scaled to the drawn total.
  std::gamma_distribution<double> gamma(1.0, 1.0);
  const double total = pick(config.alpha_sums);
  double sum = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    in.alpha.push_back(std::max(gamma(rng), 1e-3));
    sum += in.alpha.back();
  }
  for (double& a : in.alpha) a *= total / sum;

  // x with full, singleton or half support.
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t support = std::vector<std::size_t>{n, 1, (n + 1) / 2}[trial % 3];
  std::vector<double> xs(n, 0.0);
  for (std::size_t k = 0; k < support; ++k) xs[order[k]] = u(rng);
  in.x = Vector(xs);

  in.t = pick(config.t_values);
  in.index = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  return in;
}

namespace {

/// Inputs adapted to a row: two-operand rows take the first two matrices,
/// single-operand rows the first, the grid row a 2 x m grid.
CheckInputs inputs_for(const InequalityRow& row, const CheckInputs& in, std::mt19937_64& rng,
                       const oracles::GeneratorSpec& spec) {
  CheckInputs out = in;
  if (row.key == "rho_B_chain") {
    out.rows = 2;
    for (std::size_t j = 0; j < in.matrices.size(); ++j) out.matrices.push_back(oracles::generate(spec, rng));
    return out;
  }
  if (row.arity != 0) {
    while (out.matrices.size() < row.arity) out.matrices.push_back(out.matrices.front());
    out.matrices.resize(row.arity);
    out.alpha.resize(std::min(out.alpha.size(), row.arity));
  }
  return out;
}

}  // namespace

SuiteResult run_suite(const SuiteConfig& config) {
  if (config.trials == 0) throw std::invalid_argument("run_suite: trials must be at least 1");
  SuiteResult result;
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const CheckInputs in = draw_inputs(config, trial);
    std::mt19937_64 rng(config.seed ^ (trial * 0xbf58476d1ce4e5b9ULL));
    oracles::GeneratorSpec spec;
    spec.n_min = spec.n_max = in.matrices.front().size();
    spec.density = 0.7;
    for (const InequalityRow& row : registry()) {
      if (!row.proved) continue;
      const CheckInputs row_in = inputs_for(row, in, rng, spec);
      CheckReport r = run_check(row.key, row_in);
      if (r.verdict == Verdict::violated) {
        ++result.violations;
        if (config.dump_dir) {
          std::filesystem::create_directories(*config.dump_dir);
          const auto path = *config.dump_dir / (row.key + "-" + r.digest + ".json");
          std::ofstream(path) << reproducer_json(row.key, row_in, r) << '\n';
          result.dumps.push_back(path);
        }
      }
      result.reports.push_back(std::move(r));
    }
  }
  return result;
}

std::string reproducer_json(const std::string& key, const CheckInputs& in, const CheckReport& report) {
  nlohmann::json j;
  j["key"] = key;
  j["matrices"] = nlohmann::json::array();
  for (const Matrix& a : in.matrices) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::vector<double> row;
      for (std::size_t c = 0; c < a.size(); ++c) row.push_back(a(i, c));
      rows.push_back(row);
    }
    j["matrices"].push_back(rows);
  }
  j["rows"] = in.rows;
  j["x"] = std::vector<double>(in.x.entries().begin(), in.x.entries().end());
  j["alpha"] = in.alpha;
  j["t"] = in.t;
  j["index"] = in.index + 1;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["chain"] = report.chain;
  j["verdict"] = to_string(report.verdict);
  return j.dump();
}

std::vector<Fixture> pinned_fixtures() {
  // Pair with r_{e_2}(A (x) B) = 1 while r_{e_2}(B (x) A) = r_{e_2}(A) r_{e_2}(B) = 0.
  CheckInputs example;
  example.matrices = {Matrix{{1, 0}, {0, 0}}, Matrix{{1, 2}, {3, 4}}};
  example.index = 1;
  // Pair with r_{e_1}(A o B) = 1/2 above r_{e_1}(A (x) B) = r_{e_1}(A^T (x) B) = 1/4.
  CheckInputs swap;
  swap.matrices = {Matrix{{0, 1}, {1, 0}}, Matrix{{0, 1}, {0.25, 0}}};
  swap.index = 0;
  CheckInputs single;
  single.matrices = {Matrix{{0, 1}, {0.25, 0}}};

  return {
      {"product pair, maxprod", "maxprod_local", example, Verdict::violated, 1.0, 0.0},
      {"product pair, swap", "swap_local", example, Verdict::violated, 1.0, 0.0},
      {"product pair, Hadamard form", "had_local_max", example, Verdict::near_tight, 0.0, 0.0},
      {"two-cycle pair, kvmax", "kvmax_local", swap, Verdict::violated, 0.5, 0.25},
      {"two-cycle pair, maxmix", "maxmix_local", swap, Verdict::violated, 0.5, 0.25},
      {"two-cycle pair, global kvmax", "kvmax", swap, Verdict::near_tight, 0.5, 1.0},
      {"two-cycle, norm identity", "norm_sq_identity", single, Verdict::holds, 1.0, 1.0},
  };
}

}  // namespace maxspec
