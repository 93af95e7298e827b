#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cosa/hclust.hpp"

namespace cosa {

/// Adjusted Rand Index between two labelings of the same objects.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

struct BestCut {
  std::size_t k = 0;
  double ari = 0.0;
};

/**
 * Best k-cut of a dendrogram against planted labels. Only objects with a
 * nonzero truth label take part; every k in [2, N] is tried and the smallest
 * k reaching the maximum ARI wins.
 */
BestCut best_cut_ari(const Dendrogram& dend, std::span<const int> truth);

}  // namespace cosa
