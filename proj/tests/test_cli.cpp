#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "maxspec/matrix_io.hpp"
#include "maxspec/oracles.hpp"
#include "maxspec/report.hpp"

using namespace maxspec;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "maxspec");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "maxspec_cli_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("spectrum of the diagonal limit matrix and the zero matrix") {
  const Run r = run({"spectrum", "--input", write_temp("lim.csv", "1,0\n0,2\n"), "--json"});
  CHECK(r.code == 0);
  const SpectrumReport rep = spectrum_report_from_json(r.out);
  CHECK(rep.profile.sigma_max == std::vector<double>{1.0, 2.0});
  CHECK(rep.profile.sigma_dist == std::vector<double>{1.0, 2.0});

  const Run z = run({"spectrum", "--input", write_temp("zero.json", R"({"n": 3, "rows": [[0,0,0],[0,0,0],[0,0,0]]})"),
                     "--eigenvectors"});
  CHECK(z.code == 0);
  CHECK(z.out.find("sigma_max  = {0}") != std::string::npos);
  CHECK(z.out.find("sigma_dist = {0}") != std::string::npos);
}

TEST_CASE("spectrum json output replays to the in-memory profile") {
  std::mt19937_64 rng(81);
  oracles::GeneratorSpec spec;
  spec.n_max = 7;
  spec.structure = oracles::Structure::block_triangular;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = oracles::generate(spec, rng);
    const std::string path = write_temp("rt" + std::to_string(trial) + ".json", to_json(a));
    const Run r = run({"spectrum", "--input", path, "--format", "json", "--eigenvectors"});
    REQUIRE(r.code == 0);
    CHECK(spectrum_report_from_json(r.out) == spectrum_report(load_matrix(path), true));
  }
}

TEST_CASE("asymptotics subcommand") {
  const std::string diag = write_temp("diag.csv", "2,0\n0,3\n");
  const Run s = run({"asymptotics", "--input", diag, "--which", "schur", "--index", "2"});
  CHECK(s.code == 0);
  CHECK(s.out.find("all trace invariants hold") != std::string::npos);

  const Run c = run({"asymptotics", "--input", write_temp("sym.csv", "0,0.3333333333333333\n0.3333333333333333,0\n"),
                     "--which", "classpow", "--index", "1", "--json"});
  CHECK(c.code == 0);
  CHECK(c.out.find("\"ok\":true") != std::string::npos);

  std::mt19937_64 rng(82);
  oracles::GeneratorSpec spec;
  spec.n_min = spec.n_max = 5;
  const std::string rand5 = write_temp("rand5.json", to_json(oracles::generate(spec, rng)));
  CHECK(run({"asymptotics", "--input", rand5, "--which", "bapat"}).code == 0);

  CHECK(run({"asymptotics", "--input", diag, "--which", "schur"}).code == 2);
  CHECK(run({"asymptotics", "--input", diag, "--which", "schur", "--index", "3"}).code == 2);
  CHECK(run({"asymptotics", "--input", diag, "--which", "nope"}).code == 2);
  CHECK(run({"asymptotics", "--input", diag, "--which", "maxpow", "--index", "1", "--tolerance", "0"}).code == 2);
}

TEST_CASE("calculus subcommand") {
  const std::string sym = write_temp("sym2.csv", "0,0.3333333333333333\n0.3333333333333333,0\n");
  const Run r = run({"calculus", "--input", sym, "--series", "cosh"});
  CHECK(r.code == 0);
  CHECK(r.out.find("spectral_map_dist") != std::string::npos);
  CHECK(run({"calculus", "--input", sym, "--series", "geom:0.2"}).code == 2);
  CHECK(run({"calculus", "--input", sym, "--series", "bogus"}).code == 2);
  CHECK(run({"calculus", "--input", sym, "--series", "coeffs:1,-0.5", "--json"}).code == 0);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"spectrum"}).code == 2);
  CHECK(run({"spectrum", "--input", "/nonexistent/matrix.csv"}).code == 2);
  CHECK(run({"spectrum", "--input", write_temp("neg.csv", "1,-1\n0,1\n")}).code == 2);
  CHECK(run({"spectrum", "--input", write_temp("ragged.csv", "1,1\n0\n")}).code == 2);
  CHECK(run({"spectrum", "--input", "x", "--format", "xml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify passes by default and prints one report per line") {
  const Run r = run({"verify", "--trials", "40", "--json"});
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.size() > 40);
  for (const std::string& row : rows) {
    const CheckReport rep = check_report_from_json(row);
    CHECK_FALSE(rep.key.empty());
    CHECK(rep.verdict != Verdict::violated);
  }
  CHECK(run({"verify", "--trials", "40", "--json"}).out == r.out);
}

TEST_CASE("verify flags a corrupted fixture expectation") {
  const std::string config = write_temp("corrupt.json", R"({"trials": 10, "fixtures": {"two-cycle pair, kvmax": "holds"}})");
  const Run r = run({"verify", "--config", config});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(run({"verify", "--config", write_temp("unknown.json", R"({"fixtures": {"nope": "holds"}})")}).code == 2);
  CHECK(run({"verify", "--config", write_temp("badkey.json", R"({"colour": 1})")}).code == 2);
  CHECK(run({"verify", "--config", write_temp("badjson.json", "{")}).code == 2);
}
