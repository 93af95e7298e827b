#pragma once

#include <span>
#include <vector>

#include "cosa/dissimilarity.hpp"
#include "cosa/distances.hpp"
#include "cosa/parallel.hpp"

namespace cosa::detail {

// Evaluates fn(i, j, d_ij.) for every pair, parallel over condensed columns.
template <typename Fn>
DissimilarityMatrix pairwise(const AttributeDistances& dist, Fn&& fn) {
  const std::size_t n = dist.objects();
  DissimilarityMatrix out(n);
  auto values = out.values();
  parallel_for(n > 0 ? n - 1 : 0, [&](std::size_t begin, std::size_t end) {
    std::vector<double> buf(dist.attributes());
    for (std::size_t j = begin; j < end; ++j) {
      std::size_t idx = condensed_index(n, j + 1, j);
      for (std::size_t i = j + 1; i < n; ++i, ++idx) {
        dist.pair(i, j, buf);
        values[idx] = fn(i, j, std::span<const double>(buf));
      }
    }
  });
  return out;
}

}  // namespace cosa::detail
