#pragma once

#include <span>
#include <vector>

#include "maxspec/specgraph.hpp"

namespace maxspec::detail {

/// Max cycle mean of ln-weights on the subgraph induced by a strongly
/// connected vertex set (Karp). -inf if the set carries no cycle.
double karp_log_mcgm(const LogMatrix& w, std::span<const std::size_t> members);

struct LogPerron {
  double log_value = kNegInf;
  /// ln of a positive Perron vector on the members, in member order.
  std::vector<double> log_vector;
  double scaled_lower = 0.0;
  double scaled_upper = 0.0;
  std::size_t iterations = 0;
};

/// Perron root of the diagonal block on a strongly connected vertex set,
/// computed after a diagonal similarity that puts every entry at or below
/// the block's cycle mean.
LogPerron perron_log(const LogMatrix& w, std::span<const std::size_t> members);

/// Strongly connected components in reverse topological order.
std::vector<std::vector<std::size_t>> tarjan(const LogMatrix& w);

}  // namespace maxspec::detail
