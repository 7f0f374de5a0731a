#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "maxspec/inequalities.hpp"
#include "maxspec/oracles.hpp"
#include "maxspec/specgraph.hpp"
#include "test_util.hpp"

using namespace maxspec;
using maxspec::testing::rel_close;

namespace {

CheckInputs pair(const Matrix& a, const Matrix& b, std::size_t index = 0) {
  CheckInputs in;
  in.matrices = {a, b};
  in.index = index;
  return in;
}

}  // namespace

TEST_CASE("registry keys are unique and complete") {
  std::set<std::string> keys;
  for (const InequalityRow& row : registry()) {
    CHECK(keys.insert(row.key).second);
    CHECK_FALSE(row.statement.empty());
  }
  for (const char* key :
       {"humu", "maxmixmax", "kvmax", "hadamard_sq", "remark_fixpoint", "wgm_local_max", "had_local_max",
        "pj_local_max", "pair_local_max", "lradius_bundle", "rho_schur_t", "rho_t_chain", "rho_wgm", "rho_B_chain",
        "rho_hadamard", "rho_pj", "norm_sq_identity", "jordan_pair_refined", "th5_even", "th5_odd",
        "jordan_triple"}) {
    INFO(key);
    CHECK(registry_row(key).proved);
  }
  CHECK_FALSE(registry_row("kvmax_local").proved);
  CHECK_THROWS_AS(registry_row("nope"), std::out_of_range);
}

TEST_CASE("chain judging") {
  CheckReport r;
  judge_chain(r, {1.0, 2.0, 3.0});
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.slack == 2.0);
  judge_chain(r, {1.0, 1.0 + 1e-13, 3.0});
  CHECK(r.verdict == Verdict::near_tight);
  judge_chain(r, {1.0, 1.0 - 1e-13});
  CHECK(r.verdict == Verdict::near_tight);
  judge_chain(r, {1.0, 0.999});
  CHECK(r.verdict == Verdict::violated);
  judge_chain(r, {2e-12, 0.0});
  CHECK(r.verdict == Verdict::violated);
  judge_identity(r, 1.0, 1.0 + 1e-10, 1e-9);
  CHECK(r.verdict == Verdict::holds);
  CHECK(Digest().add(1.0).hex() != Digest().add(2.0).hex());
  CHECK(Digest().add(0.0).hex() == Digest().add(-0.0).hex());
}

TEST_CASE("pinned counterexamples") {
  for (const Fixture& f : pinned_fixtures()) {
    const CheckReport r = run_check(f.key, f.inputs);
    INFO(f.name, " ", to_string(r.verdict));
    CHECK(r.verdict == f.expected);
    CHECK(rel_close(r.lhs, f.expected_lhs, 1e-12));
    CHECK(rel_close(r.rhs, f.expected_rhs, 1e-12));
  }
  // Direct values on the product pair.
  const Matrix a{{1, 0}, {0, 0}}, b{{1, 2}, {3, 4}};
  CHECK(local_r(max_mul(a, b), 0) == 1.0);
  CHECK(local_r(max_mul(a, b), 1) == 1.0);
  CHECK(local_r(max_mul(b, a), 0) == 1.0);
  CHECK(local_r(max_mul(b, a), 1) == 0.0);
  // On the two-cycle pair the Hadamard and Jordan forms still hold.
  const CheckInputs two = pair(Matrix{{0, 1}, {1, 0}}, Matrix{{0, 1}, {0.25, 0}});
  CHECK(run_check("maxmixmax", two).passed());
  CHECK(run_check("pair_local_max", two).passed());
}

TEST_CASE("norm identity by hand") {
  CheckInputs in;
  in.matrices = {Matrix{{0, 1}, {0.25, 0}}};
  const CheckReport r = run_check("norm_sq_identity", in);
  CHECK(r.verdict == Verdict::holds);
  // B^T (x) B = diag(1/16, 1): largest loop is 1.
  CHECK(r.lhs == 1.0);
  CHECK(r.rhs == 1.0);
}

TEST_CASE("diagonal fixpoint identity on a dominant pair") {
  const CheckInputs in = pair(Matrix{{2, 0.1}, {0.1, 1}}, Matrix{{3, 0.1}, {0.1, 1}});
  const CheckReport r = run_check("remark_fixpoint", in);
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.chain == std::vector<double>{6, 6, 6});
  CHECK(run_check("remark_fixpoint", pair(Matrix{{0, 1}, {1, 0}}, Matrix{{0, 1}, {1, 0}})).verdict ==
        Verdict::not_applicable);
}

TEST_CASE("transpose pattern of the norm bounds") {
  std::mt19937_64 rng(51);
  oracles::GeneratorSpec spec;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Matrix> as;
    for (int k = 0; k < 4; ++k) as.push_back(oracles::generate(spec, rng));
    const std::size_t n = as[0].size();
    for (Matrix& a : as) {
      if (a.size() != n) a = oracles::generate(oracles::GeneratorSpec{n, n}, rng);
    }
    auto t = [](const Matrix& a) { return transpose(a); };
    CheckInputs two;
    two.matrices = {as[0], as[1]};
    const CheckReport even2 = run_check("th5_even", two);
    CHECK(rel_close(even2.rhs, max_cycle_mean(max_mul(t(as[0]), as[1])) * max_cycle_mean(max_mul(as[0], t(as[1]))),
                    1e-14));
    CheckInputs three;
    three.matrices = {as[0], as[1], as[2]};
    const CheckReport odd3 = run_check("th5_odd", three);
    const std::vector<Matrix> long_chain{as[0], t(as[1]), as[2], t(as[0]), as[1], t(as[2])};
    CHECK(rel_close(odd3.rhs, max_cycle_mean(max_product(long_chain)), 1e-14));
    CheckInputs four;
    four.matrices = as;
    const CheckReport even4 = run_check("th5_even", four);
    const std::vector<Matrix> first{t(as[0]), as[1], t(as[2]), as[3]};
    const std::vector<Matrix> second{as[0], t(as[1]), as[2], t(as[3])};
    CHECK(rel_close(even4.rhs, max_cycle_mean(max_product(first)) * max_cycle_mean(max_product(second)), 1e-14));
    CHECK(run_check("th5_odd", four).verdict == Verdict::not_applicable);
    CHECK(even4.passed());
    CHECK(odd3.passed());
  }
}

TEST_CASE("hypotheses are reported, not evaluated") {
  CheckInputs in = pair(Matrix{{1, 2}, {3, 4}}, Matrix{{1, 0}, {1, 1}});
  in.x = Vector{1, 1};
  in.alpha = {0.2, 0.3};
  CHECK(run_check("rho_wgm", in).verdict == Verdict::not_applicable);
  in.alpha = {0.0, 1.0};
  CHECK(run_check("wgm_local_max", in).verdict == Verdict::not_applicable);
  in.alpha = {0.5, 0.7};
  CHECK(run_check("rho_wgm", in).verdict != Verdict::not_applicable);
  in.t = 0.5;
  CHECK(run_check("rho_schur_t", CheckInputs{{in.matrices[0]}, 1, in.x, {}, 0.5, 0}).verdict ==
        Verdict::not_applicable);
  in.index = 2;
  CHECK(run_check("had_local_max", in).verdict == Verdict::not_applicable);
  CHECK(run_check("maxmixmax", CheckInputs{{in.matrices[0]}}).verdict == Verdict::not_applicable);
  in.x = Vector{1, 1, 1};
  CHECK(run_check("rho_hadamard", in).verdict == Verdict::not_applicable);
}

TEST_CASE("all-zero inputs hold with equality") {
  CheckInputs in;
  in.matrices = {Matrix(3), Matrix(3), Matrix(3)};
  in.x = Vector{1, 0, 1};
  in.alpha = {0.5, 0.5, 0.5};
  in.rows = 1;
  for (const InequalityRow& row : registry()) {
    if (!row.proved) continue;
    CheckInputs adapted = in;
    if (row.arity) {
      adapted.matrices.resize(row.arity);
      adapted.alpha.resize(row.arity);
    }
    const CheckReport r = run_check(row.key, adapted);
    INFO(row.key, " ", to_string(r.verdict), " ", r.note);
    CHECK(r.passed());
    if (r.verdict != Verdict::not_applicable) {
      CHECK(r.lhs == 0.0);
      CHECK(r.rhs == 0.0);
    }
  }
}

TEST_CASE("suite draws are deterministic and varied") {
  SuiteConfig config;
  const CheckInputs a = draw_inputs(config, 7);
  const CheckInputs b = draw_inputs(config, 7);
  CHECK(digest(a) == digest(b));
  CHECK(digest(a) != digest(draw_inputs(config, 8)));
  double sum = 0.0;
  for (double w : a.alpha) sum += w;
  CHECK((rel_close(sum, 1.0, 1e-12) || rel_close(sum, 1.5, 1e-12) || rel_close(sum, 3.0, 1e-12)));
}

TEST_CASE("random suite finds no violations") {
  SuiteConfig config;
  config.trials = 200;
  config.seed = 52;
  const SuiteResult result = run_suite(config);
  for (const CheckReport& r : result.reports) {
    if (r.verdict == Verdict::violated) {
      INFO(r.key, " lhs ", r.lhs, " rhs ", r.rhs, " ", r.note);
      CHECK(false);
    }
  }
  CHECK(result.violations == 0);
}

TEST_CASE("violations write reproducers") {
  const Fixture f = pinned_fixtures().front();
  const CheckReport r = run_check(f.key, f.inputs);
  const std::string json = reproducer_json(f.key, f.inputs, r);
  CHECK(json.find("\"key\":\"maxprod_local\"") != std::string::npos);
  CHECK(json.find("\"index\":2") != std::string::npos);
}
