#include <doctest.h>

#include <cmath>
#include <random>

#include "maxspec/matrix.hpp"
#include "maxspec/matrix_io.hpp"
#include "maxspec/oracles.hpp"
#include "test_util.hpp"

using namespace maxspec;
using maxspec::testing::rel_close;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double density = 0.7) {
  oracles::GeneratorSpec spec;
  spec.n_min = spec.n_max = n;
  spec.density = density;
  return oracles::generate(spec, rng);
}

bool all_close(const Matrix& a, const Matrix& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!rel_close(a(i, j), b(i, j), tol)) return false;
  return true;
}

}  // namespace

TEST_CASE("matrix invariants are enforced") {
  CHECK_THROWS_AS(Matrix(2, std::vector<double>{1, 2, 3}), DimensionError);
  CHECK_THROWS(Matrix({{1, -1}, {0, 0}}));
  CHECK_THROWS(Matrix({{1, NAN}, {0, 0}}));
  CHECK_THROWS(Matrix({{1, INFINITY}, {0, 0}}));
  CHECK_THROWS(Matrix({{1, 2}, {3}}));
  CHECK_THROWS(Vector({1.0, -2.0}));
}

TEST_CASE("max_mul") {
  const Matrix a{{1, 0}, {0, 0}};
  const Matrix b{{1, 2}, {3, 4}};
  CHECK(max_mul(a, b) == Matrix{{1, 2}, {0, 0}});
  CHECK(max_mul(Matrix::identity(2), b) == b);
  CHECK_THROWS_AS(max_mul(a, Matrix(3)), DimensionError);

  std::mt19937_64 rng(11);
  const Matrix x = random_matrix(rng, 3), y = random_matrix(rng, 3);
  const Matrix z = max_mul(x, y);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      double m = 0.0;
      for (std::size_t k = 0; k < 3; ++k) m = std::max(m, x(i, k) * y(k, j));
      CHECK(z(i, j) == m);
    }
  }
}

TEST_CASE("max_vec_mul") {
  const Matrix a{{1, 2}, {0, 0}};
  CHECK(max_vec_mul(a, Vector::unit(2, 1)) == Vector{2.0, 0.0});
  CHECK(max_vec_mul(a, Vector(2)) == Vector(2));
  CHECK_THROWS_AS(max_vec_mul(a, Vector(3)), DimensionError);

  std::mt19937_64 rng(12);
  const Matrix m = random_matrix(rng, 4);
  const Vector x{0.5, 0.0, 2.0, 1.0};
  Matrix col(4);
  for (std::size_t i = 0; i < 4; ++i) col.set(i, 0, x[i]);
  const Vector got = max_vec_mul(m, x);
  const Matrix want = max_mul(m, col);
  for (std::size_t i = 0; i < 4; ++i) CHECK(got[i] == want(i, 0));
}

TEST_CASE("max_power") {
  const Matrix a{{0, 1.0 / 3}, {1.0 / 3, 0}};
  const Matrix a2 = max_power(a, 2);
  CHECK(rel_close(a2(0, 0), 1.0 / 9, 1e-15));
  CHECK(a2(0, 1) == 0.0);
  CHECK(max_power(a, 0) == Matrix::identity(2));
  CHECK(max_power(a, 1) == a);

  const std::vector<double> d{0.5, 2.0, 3.0};
  const Matrix dk = max_power(Matrix::diagonal(d), 4);
  for (std::size_t i = 0; i < 3; ++i) CHECK(rel_close(dk(i, i), std::pow(d[i], 4), 1e-15));

  std::mt19937_64 rng(13);
  const Matrix m = random_matrix(rng, 4);
  Matrix fold = m;
  for (int k = 1; k < 5; ++k) fold = max_mul(fold, m);
  CHECK(all_close(max_power(m, 5), fold, 1e-14));
}

TEST_CASE("oplus and hadamard") {
  const Matrix a{{1, 2}, {3, 4}};
  CHECK(oplus(a, a) == a);
  CHECK(oplus(a, Matrix(2)) == a);
  CHECK(oplus(a, Matrix{{4, 3}, {2, 1}}) == Matrix{{4, 3}, {3, 4}});

  const Matrix p{{0, 1}, {1, 0}};
  const Matrix q{{0, 1}, {0.25, 0}};
  CHECK(hadamard(p, q) == q);
  CHECK(hadamard(a, Matrix::ones(2)) == a);
}

TEST_CASE("hadamard_power") {
  const Matrix a{{0, 2}, {3, 0.5}};
  CHECK(hadamard_power(a, 1.0) == a);
  CHECK(hadamard_power(a, 2.0)(0, 0) == 0.0);
  CHECK_THROWS(hadamard_power(a, 0.0));
  CHECK_THROWS(hadamard_power(a, -1.0));

  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_matrix(rng, 4);
    for (double t : {0.5, 2.0, 7.0}) {
      CHECK(rel_close(norm(hadamard_power(m, t)), std::pow(norm(m), t), 1e-12));
      CHECK(all_close(max_power(hadamard_power(m, t), 3), hadamard_power(max_power(m, 3), t), 1e-12));
    }
  }
}

TEST_CASE("classical products") {
  const Matrix a{{0, 1.0 / 3}, {1.0 / 3, 0}};
  const Matrix a2 = classical_power(a, 2);
  CHECK(rel_close(a2(0, 0), 1.0 / 9, 1e-15));
  CHECK(a2(0, 1) == 0.0);
  CHECK(classical_power(a, 0) == Matrix::identity(2));
  CHECK(mul(a, Matrix::identity(2)) == a);

  std::mt19937_64 rng(15);
  const Matrix x = random_matrix(rng, 3), y = random_matrix(rng, 3);
  const Matrix z = mul(x, y);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += x(i, k) * y(k, j);
      CHECK(rel_close(z(i, j), s, 1e-15));
    }
  }
}

TEST_CASE("norm and transpose") {
  CHECK(norm(Matrix{{1, 2}, {3, 4}}) == 4.0);
  CHECK(norm(Matrix(3)) == 0.0);
  std::mt19937_64 rng(16);
  const Matrix m = random_matrix(rng, 5);
  CHECK(transpose(transpose(m)) == m);
  CHECK(transpose(m)(1, 3) == m(3, 1));
}

TEST_CASE("semiring laws on random triples") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_matrix(rng, 4), b = random_matrix(rng, 4), c = random_matrix(rng, 4);
    CHECK(all_close(max_mul(max_mul(a, b), c), max_mul(a, max_mul(b, c)), 1e-12));
    CHECK(all_close(max_mul(a, oplus(b, c)), oplus(max_mul(a, b), max_mul(a, c)), 1e-12));
    CHECK(all_close(oplus(a, b), oplus(b, a), 0.0));
  }
}

TEST_CASE("entrywise domination properties") {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_matrix(rng, 4), b = random_matrix(rng, 4);
    const Matrix c = random_matrix(rng, 4), d = random_matrix(rng, 4);
    const double t = 1.0 + 3.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    const Matrix lhs = mul(hadamard_power(a, t), hadamard_power(b, t));
    const Matrix rhs = hadamard_power(mul(a, b), t);
    const Matrix mixed_l = max_mul(hadamard(a, b), hadamard(c, d));
    const Matrix mixed_r = hadamard(max_mul(a, c), max_mul(b, d));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        CHECK(lhs(i, j) <= rhs(i, j) * (1 + 1e-12));
        CHECK(mixed_l(i, j) <= mixed_r(i, j) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("folds") {
  const std::vector<Matrix> fs{Matrix{{1, 2}, {0, 1}}, Matrix{{0, 1}, {1, 0}}, Matrix{{2, 0}, {0, 3}}};
  CHECK(max_product(fs) == max_mul(max_mul(fs[0], fs[1]), fs[2]));
  CHECK(product(fs) == mul(mul(fs[0], fs[1]), fs[2]));
  CHECK(hadamard_product(fs) == hadamard(hadamard(fs[0], fs[1]), fs[2]));
  CHECK_THROWS(max_product(std::span<const Matrix>{}));
}

TEST_CASE("matrix file formats") {
  const Matrix a{{0, 0.1}, {1.0 / 3, 2}};
  CHECK(parse_csv(to_csv(a)) == a);
  CHECK(parse_json(to_json(a)) == a);
  CHECK(parse_matrix(to_json(a)) == a);
  CHECK(parse_matrix("1, 2\n3, 4\n") == Matrix{{1, 2}, {3, 4}});
  CHECK(parse_matrix(R"({"n": 2, "rows": [[1, 0], [0, 2]]})") == Matrix{{1, 0}, {0, 2}});
  CHECK_THROWS_AS(parse_matrix("1, -2\n3, 4\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("1, 2\n3\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("1, x\n3, 4\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix(R"({"n": 3, "rows": [[1, 0], [0, 2]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix(R"({"n": 2, "rows": [[1, 0], [0, "a"]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix("{"), ParseError);
  CHECK_THROWS_AS(parse_matrix(""), ParseError);
}
