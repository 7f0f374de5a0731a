#include <doctest.h>

#include <cmath>
#include <random>

#include "maxspec/oracles.hpp"
#include "maxspec/specgraph.hpp"
#include "test_util.hpp"

using namespace maxspec;
using maxspec::testing::rel_close;

namespace {

oracles::GeneratorSpec spec_for(std::size_t n_max, double density,
                                oracles::Structure s = oracles::Structure::general) {
  oracles::GeneratorSpec spec;
  spec.n_min = 1;
  spec.n_max = n_max;
  spec.density = density;
  spec.structure = s;
  return spec;
}

}  // namespace

TEST_CASE("condense on small fixtures") {
  const Matrix a{{1, 0}, {1, 2}};
  const Condensation c = condense(a);
  REQUIRE(c.class_count() == 2);
  CHECK(c.classes[0] == std::vector<std::size_t>{0});
  CHECK(c.classes[1] == std::vector<std::size_t>{1});
  CHECK(c.access[1][0]);
  CHECK_FALSE(c.access[0][1]);
  CHECK(c.access[0][0]);
  CHECK(c.mcgm == std::vector<double>{1.0, 2.0});

  const Condensation d = condense(Matrix{{2, 0}, {0, 3}});
  CHECK(d.class_count() == 2);
  CHECK_FALSE(d.access[0][1]);
  CHECK_FALSE(d.access[1][0]);
  CHECK(d.mcgm == std::vector<double>{2.0, 3.0});
  CHECK(rel_close(d.perron[0], 2.0, 1e-12));
  CHECK(rel_close(d.perron[1], 3.0, 1e-12));
}

TEST_CASE("condense matches mutual reachability") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = oracles::generate(spec_for(8, 0.3), rng);
    const Condensation c = condense(a);
    const auto reach = oracles::reachability(a);
    for (std::size_t u = 0; u < a.size(); ++u) {
      for (std::size_t v = 0; v < a.size(); ++v) {
        CHECK((c.class_of[u] == c.class_of[v]) == (reach[u][v] && reach[v][u]));
        CHECK(c.access[c.class_of[u]][c.class_of[v]] == reach[u][v]);
      }
    }
    for (std::size_t mu = 0; mu < c.class_count(); ++mu) {
      CHECK(c.mcgm[mu] <= norm(a) * (1 + 1e-15));
      CHECK(c.perron[mu] <= a.size() * norm(a) * (1 + 1e-12));
      if (c.cyclic(mu)) {
        CHECK(c.mcgm[mu] <= c.perron[mu] * (1 + 1e-12));
        CHECK(c.perron[mu] <= c.classes[mu].size() * c.mcgm[mu] * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("max_cycle_mean") {
  CHECK(rel_close(max_cycle_mean(Matrix{{0, 1}, {0.25, 0}}), 0.5, 1e-15));
  CHECK(max_cycle_mean(Matrix{{0, 1, 2}, {0, 0, 3}, {0, 0, 0}}) == 0.0);
  CHECK(max_cycle_mean(Matrix{{0.5, 0}, {0, 4}}) == 4.0);
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix a = oracles::generate(spec_for(7, 0.5), rng);
    CHECK(rel_close(max_cycle_mean(a), oracles::mcgm_enumerate(a), 1e-12));
  }
}

TEST_CASE("perron root") {
  CHECK(rel_close(perron_root(Matrix{{0, 1.0 / 3}, {1.0 / 3, 0}}), 1.0 / 3, 1e-12));
  CHECK(perron_root(Matrix{{2.5}}) == 2.5);
  CHECK(rel_close(perron_root(Matrix{{1, 1}, {1, 1}}), 2.0, 1e-12));
  CHECK_THROWS(perron(Matrix{{1, 0}, {1, 1}}));

  const auto res = perron(Matrix{{0, 1, 0}, {0, 0, 1}, {8, 0, 0}});
  CHECK(rel_close(res.value, 2.0, 1e-12));
  CHECK(res.lower <= res.value);
  CHECK(res.value <= res.upper);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    oracles::GeneratorSpec spec = spec_for(4, 1.0);
    spec.n_min = 4;
    const Matrix b = oracles::generate(spec, rng);
    const double r = perron_root(b);
    const double gelfand = std::pow(norm(classical_power(scale(b, 1.0 / r), 4096)), 1.0 / 4096) * r;
    CHECK(rel_close(r, gelfand, 5e-3));
  }
}

TEST_CASE("perron root on badly scaled blocks") {
  // Entries spanning 12 orders of magnitude around a single long cycle.
  const Matrix b{{0, 1e6, 0, 0}, {0, 0, 1e-6, 0}, {0, 0, 0, 1e6}, {1e-6, 1e-3, 0, 0}};
  const double r = perron_root(b);
  CHECK(r > 0.0);
  CHECK(rel_close(r, spectral_radius(b), 1e-12));
  const auto res = perron(b);
  CHECK(dist_residual(b, Vector(res.vector), res.value) < 1e-9);
}

TEST_CASE("local radii on the product example") {
  const Matrix ab{{1, 2}, {0, 0}};
  const Matrix ba{{1, 0}, {3, 0}};
  CHECK(local_r(ab, 0) == 1.0);
  CHECK(local_r(ab, 1) == 1.0);
  CHECK(local_r(ba, 0) == 1.0);
  CHECK(local_r(ba, 1) == 0.0);
  CHECK_THROWS_AS(local_r(ab, 2), std::out_of_range);
  CHECK_THROWS_AS(local_rho(ab, 2), std::out_of_range);

  const Matrix sym{{0, 1.0 / 3}, {1.0 / 3, 0}};
  CHECK(rel_close(local_rho(sym, 0), 1.0 / 3, 1e-12));
  CHECK(rel_close(local_rho(sym, 1), 1.0 / 3, 1e-12));
  CHECK(local_rho(Matrix{{2, 0}, {0, 5}}, 1) == 5.0);
  CHECK(local_r(Matrix{{2, 0}, {0, 5}}, 0) == 2.0);
}

TEST_CASE("local_r equals the cycle and reachability oracle") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix a = oracles::generate(spec_for(7, 0.35), rng);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(rel_close(local_r(a, i), oracles::local_r_enumerate(a, i), 1e-12));
    }
  }
}

TEST_CASE("local radii agree with the limit oracles") {
  std::mt19937_64 rng(25);
  oracles::GeneratorSpec spec = spec_for(5, 0.4);
  spec.n_min = 5;
  spec.magnitude_lo = 0.1;
  spec.magnitude_hi = 10.0;
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix a = oracles::generate(spec, rng);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double r = local_r(a, i);
      const double rho = local_rho(a, i);
      const double r_lim = oracles::local_r_limit(a, i, 64 * a.size());
      const double rho_lim = oracles::local_rho_limit(a, i, 64 * a.size());
      if (r == 0.0) {
        CHECK(r_lim == 0.0);
      } else {
        CHECK(rel_close(r, r_lim, 5e-2));
      }
      if (rho == 0.0) {
        CHECK(rho_lim == 0.0);
      } else {
        CHECK(rel_close(rho, rho_lim, 5e-2));
      }
    }
  }
}

TEST_CASE("local radii at a vector") {
  const Matrix a{{1, 0, 0}, {1, 3, 0}, {0, 0, 2}};
  CHECK(local_r_at(a, Vector{1, 0, 0}) == local_r(a, 0));
  CHECK(local_r_at(a, Vector{0, 0, 1}) == 2.0);
  CHECK(local_r_at(a, Vector::ones(3)) == max_cycle_mean(a));
  CHECK(rel_close(local_rho_at(a, Vector::ones(3)), spectral_radius(a), 1e-15));
  CHECK(local_r_at(a, Vector(3)) == 0.0);
  CHECK_THROWS_AS(local_r_at(a, Vector(2)), DimensionError);

  std::mt19937_64 rng(26);
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix m = oracles::generate(spec_for(6, 0.4), rng);
    std::vector<double> x(m.size());
    double want_r = 0.0, want_rho = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = coin(rng) ? 1.5 : 0.0;
      if (x[i] > 0) {
        want_r = std::max(want_r, local_r(m, i));
        want_rho = std::max(want_rho, local_rho(m, i));
      }
    }
    CHECK(local_r_at(m, Vector(x)) == want_r);
    CHECK(local_rho_at(m, Vector(x)) == want_rho);
  }
}

TEST_CASE("spectrum fixtures") {
  const SpectralProfile lim = spectrum(Matrix{{1, 0}, {0, 2}});
  CHECK(lim.sigma_max == std::vector<double>{1.0, 2.0});
  CHECK(lim.sigma_dist.size() == 2);
  for (int k = 1; k <= 5; ++k) {
    const SpectralProfile p = spectrum(Matrix{{1, 0}, {1.0 / k, 2}});
    CHECK(p.sigma_max == std::vector<double>{2.0});
    REQUIRE(p.sigma_dist.size() == 1);
    CHECK(rel_close(p.sigma_dist[0], 2.0, 1e-12));
  }
  const SpectralProfile zero = spectrum(Matrix(3));
  CHECK(zero.sigma_max == std::vector<double>{0.0});
  CHECK(zero.sigma_dist == std::vector<double>{0.0});
  CHECK(distinct_values({1.0, 1.0 + 1e-12, 2.0, 0.0}) == std::vector<double>{0.0, 1.0, 2.0});
}

TEST_CASE("spectral invariants and identities") {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = oracles::generate(spec_for(8, trial % 2 ? 0.3 : 0.7), rng);
    const std::size_t n = a.size();
    const SpectralProfile p = spectrum(a);
    double rmax = 0.0, rhomax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(p.r[i] <= p.rho[i] * (1 + 1e-12));
      CHECK(p.rho[i] <= n * p.r[i] * (1 + 1e-12));
      rmax = std::max(rmax, p.r[i]);
      rhomax = std::max(rhomax, p.rho[i]);
    }
    CHECK(rmax == max_cycle_mean(a));
    CHECK(rhomax == spectral_radius(a));

    const double t = 0.5 + trial % 4;
    const Matrix at = hadamard_power(a, t);
    const Matrix a3 = max_power(a, 3);
    const Matrix c2 = classical_power(a, 2);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(rel_close(local_r(at, i), std::pow(p.r[i], t), 1e-9));
      CHECK(rel_close(local_r(a3, i), std::pow(p.r[i], 3), 1e-9));
      CHECK(rel_close(local_rho(c2, i), std::pow(p.rho[i], 2), 1e-9));
    }
  }
}

TEST_CASE("gelfand formula in max algebra") {
  std::mt19937_64 rng(28);
  oracles::GeneratorSpec spec = spec_for(6, 0.5);
  spec.magnitude_lo = 0.1;
  spec.magnitude_hi = 10.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = oracles::generate(spec, rng);
    const double r = max_cycle_mean(a);
    const auto seq = oracles::gelfand_max_sequence(a, 64 * a.size());
    double inf = seq.front();
    for (double v : seq) {
      CHECK(v >= r * (1 - 1e-12));
      inf = std::min(inf, v);
    }
    if (r > 0) CHECK(rel_close(inf, r, 5e-2));
  }
}

TEST_CASE("log-domain products") {
  const Matrix a{{0, 2}, {0.5, 1}};
  const Matrix b{{1, 0}, {3, 0.25}};
  const LogMatrix la(a), lb(b);
  const Matrix mm = log_max_mul(la, lb).exp();
  const Matrix cm = log_mul(la, lb).exp();
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(rel_close(mm(i, j), max_mul(a, b)(i, j), 1e-14));
      CHECK(rel_close(cm(i, j), mul(a, b)(i, j), 1e-14));
    }
  }
  CHECK(rel_close(la.hadamard_power(3).exp()(0, 1), 8.0, 1e-14));
  CHECK(la.hadamard_power(3).exp()(0, 0) == 0.0);
}

TEST_CASE("max eigenvectors") {
  const Matrix b{{0, 1}, {0.25, 0}};
  const Vector v = max_eigenvector(b, 0.5, 0);
  CHECK(v[0] > 0.0);
  CHECK(v[1] > 0.0);
  CHECK(max_residual(b, v, 0.5) < 1e-12);
  CHECK(max_eigenvector(Matrix{{1, 0}, {0, 2}}, 1.0, 0) == Vector{1.0, 0.0});
  CHECK_THROWS_AS(max_eigenvector(b, 0.7, 0), std::invalid_argument);
  CHECK_THROWS_AS(max_eigenvector(b, 0.0, 0), std::invalid_argument);
  // Vertex 1 is fed only by the source 0; its value 0 has eigenvector e_0.
  const Matrix chain{{0, 2, 0}, {0, 0, 0}, {0, 0, 1}};
  CHECK(max_eigenvector(chain, 0.0, 1) == Vector{1.0, 0.0, 0.0});
  CHECK(dist_eigenvector(chain, 0.0, 1) == Vector{1.0, 0.0, 0.0});
  CHECK(max_residual(chain, Vector{1.0, 0.0, 0.0}, 0.0) == 0.0);
  CHECK_THROWS_AS(max_eigenvector(chain, 0.0, 2), std::invalid_argument);
}

TEST_CASE("distinguished eigenvectors") {
  const Matrix s{{0, 1.0 / 3}, {1.0 / 3, 0}};
  const Vector v = dist_eigenvector(s, 1.0 / 3, 0);
  CHECK(rel_close(v[0], v[1], 1e-12));
  const Vector e = dist_eigenvector(Matrix{{1, 0}, {0, 2}}, 2.0, 1);
  CHECK(e[0] == 0.0);
  CHECK(e[1] > 0.0);
  CHECK_THROWS_AS(dist_eigenvector(s, 0.5, 0), std::invalid_argument);
}

TEST_CASE("eigenvectors for every spectral value of reducible matrices") {
  std::mt19937_64 rng(29);
  oracles::GeneratorSpec spec = spec_for(6, 0.6, oracles::Structure::block_triangular);
  spec.n_min = 6;
  spec.blocks = 3;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = oracles::generate(spec, rng);
    const SpectralProfile p = spectrum(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Vector v = max_eigenvector(a, p.r[i], i);
      CHECK(norm(v) > 0.0);
      CHECK(max_residual(a, v, p.r[i]) < 1e-9);
      const Vector u = dist_eigenvector(a, p.rho[i], i);
      CHECK(norm(u) > 0.0);
      CHECK(dist_residual(a, u, p.rho[i]) < 1e-9);
    }
  }
}
