#include <doctest.h>

#include <cmath>
#include <random>

#include "maxspec/inequalities.hpp"
#include "maxspec/oracles.hpp"
#include "maxspec/report.hpp"

using namespace maxspec;

TEST_CASE("spectrum report of the diagonal limit matrix") {
  const SpectrumReport r = spectrum_report(Matrix{{1, 0}, {0, 2}}, true);
  CHECK(r.profile.sigma_max == std::vector<double>{1.0, 2.0});
  REQUIRE(r.max_vectors->size() == 2);
  CHECK((*r.max_vectors)[1].witness == 1);
  CHECK((*r.max_vectors)[1].vector == Vector{0.0, 1.0});
  const std::string json = to_json(r);
  CHECK(json.find("\"classes\":[[1],[2]]") != std::string::npos);
  CHECK(json.find("\"sigma_max\":[1.0,2.0]") != std::string::npos);
  CHECK(to_text(r).find("sigma_max  = {1, 2}") != std::string::npos);
}

TEST_CASE("zero matrix spectrum") {
  const SpectrumReport r = spectrum_report(Matrix(3), true);
  CHECK(r.profile.sigma_max == std::vector<double>{0.0});
  CHECK(r.profile.sigma_dist == std::vector<double>{0.0});
  CHECK((*r.dist_vectors)[0].residual == 0.0);
}

TEST_CASE("spectrum json round-trips exactly") {
  std::mt19937_64 rng(71);
  oracles::GeneratorSpec spec;
  spec.n_max = 8;
  spec.structure = oracles::Structure::block_triangular;
  spec.blocks = 3;
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = oracles::generate(spec, rng);
    const SpectrumReport r = spectrum_report(a, trial % 2 == 0);
    const SpectrumReport back = spectrum_report_from_json(to_json(r));
    CHECK(back == r);
    CHECK(to_json(back) == to_json(r));
  }
  CHECK_THROWS_AS(spectrum_report_from_json("[1,2]"), std::invalid_argument);
  CHECK_THROWS_AS(spectrum_report_from_json("{\"n\":2}"), std::invalid_argument);
}

TEST_CASE("check report json round-trips exactly") {
  for (const Fixture& f : pinned_fixtures()) {
    const CheckReport r = run_check(f.key, f.inputs);
    const std::string line = to_json(r);
    CHECK(line.find('\n') == std::string::npos);
    const CheckReport back = check_report_from_json(line);
    CHECK(back.key == r.key);
    CHECK(back.chain == r.chain);
    CHECK(back.lhs == r.lhs);
    CHECK(back.rhs == r.rhs);
    CHECK(back.verdict == r.verdict);
    CHECK(back.digest == r.digest);
  }
  CheckReport r;
  r.key = "x";
  r.lhs = 1.0 / 3.0;
  CHECK(check_report_from_json(to_json(r)).lhs == 1.0 / 3.0);
  CHECK(to_text(r).find("not-applicable") == 0);
}

TEST_CASE("text uses six significant digits") {
  CHECK(format_text(1.0 / 3.0) == "0.333333");
  CHECK(format_text(2.0) == "2");
  CHECK(format_text(123456789.0) == "1.23457e+08");
}

TEST_CASE("trace rendering") {
  const Matrix a{{2, 0}, {0, 3}};
  const LimitTrace t = schur_trace(a, 1, geometric_grid(4));
  const TraceCheck c = check_trace(t);
  const std::string json = to_json(t, c);
  CHECK(json.find("\"index\":2") != std::string::npos);
  CHECK(json.find("\"ok\":true") != std::string::npos);
  const std::string text = to_text(t, c);
  CHECK(text.find("all trace invariants hold") != std::string::npos);
  const LimitTrace b = bapat_trace(a, 8);
  CHECK(to_json(b, check_trace(b)).find("\"index\"") == std::string::npos);
}
