#pragma once

// Brute-force reference computations and seeded random matrix generators.
// Nothing here touches the condensation, Karp or Perron code paths.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "maxspec/matrix.hpp"

namespace maxspec::oracles {

/// Max over all simple cycles (DFS enumeration) of the cycle geometric mean.
/// Requires n <= 9.
double mcgm_enumerate(const Matrix& a);

/// Reflexive-transitive reachability closure (Floyd-Warshall): reach[u][v]
/// iff a path u -> ... -> v exists.
std::vector<std::vector<bool>> reachability(const Matrix& a);

/// r_{e_i} from the cycle characterization: max geometric mean over simple
/// cycles containing a vertex that reaches i. Requires n <= 9.
double local_r_enumerate(const Matrix& a, std::size_t i);

/// ||A^k (x) e_i||^{1/k} at k = k_max, by renormalized vector iteration.
double local_r_limit(const Matrix& a, std::size_t i, std::size_t k_max);

/// max over k in [k_max/2, k_max] of ||A^k e_i||^{1/k}.
double local_rho_limit(const Matrix& a, std::size_t i, std::size_t k_max);

/// ||A^k_max||^{1/k} for k = 1..k_max.
std::vector<double> gelfand_max_sequence(const Matrix& a, std::size_t k_max);

enum class Structure { general, irreducible, diagonal, permutation, block_triangular, symmetric };

struct GeneratorSpec {
  std::size_t n_min = 2;
  std::size_t n_max = 6;
  /// Probability that an entry is nonzero.
  double density = 0.5;
  /// Nonzero magnitudes are log-uniform over [lo, hi].
  double magnitude_lo = 1e-3;
  double magnitude_hi = 1e3;
  Structure structure = Structure::general;
  std::size_t blocks = 2;
};

/// Deterministic under (spec, seed).
Matrix generate(const GeneratorSpec& spec, std::uint64_t seed);
Matrix generate(const GeneratorSpec& spec, std::mt19937_64& rng);

}  // namespace maxspec::oracles
