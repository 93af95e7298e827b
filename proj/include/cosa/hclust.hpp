#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "cosa/dissimilarity.hpp"

namespace cosa {

enum class Linkage { Single, Complete, Average, Ward };

const char* to_string(Linkage linkage);
Linkage parse_linkage(const std::string& name);

struct Merge {
  std::size_t left;   // smaller node id
  std::size_t right;  // larger node id
  double height;
  std::size_t size;
};

/**
 * Agglomeration result. Leaves are nodes 0..N-1 and merge t creates node N+t.
 * leaf_order is the left-first traversal of the tree, which draws without
 * crossings.
 */
struct Dendrogram {
  std::size_t n = 0;
  std::vector<Merge> merges;
  std::vector<std::size_t> leaf_order;
  Linkage linkage = Linkage::Average;
  bool has_inversions = false;
};

/// Scales D so the sum of squares over the stored triangle equals N.
DissimilarityMatrix normalize_ss(const DissimilarityMatrix& d);

/**
 * Lance-Williams agglomeration.
 *
 * At every step the active pair with smallest dissimilarity merges; ties go
 * to the lexicographically smallest (min node id, max node id).
 *
 * Ward uses the squared-input convention (R's ward.D2): the recurrence
 *   d2(k, i+j) = ((n_i+n_k) d2(k,i) + (n_j+n_k) d2(k,j) - n_k d2(i,j)) / (n_i+n_j+n_k)
 * runs on squared dissimilarities and merge heights are reported as sqrt(d2).
 */
Dendrogram agglomerate(const DissimilarityMatrix& d, Linkage linkage);

struct CutHeight {
  double height;
};
struct CutCount {
  std::size_t k;
};
using CutSpec = std::variant<CutHeight, CutCount>;

/// Group labels: 0 is background, groups are 1..G. index[g-1] lists group g's objects.
struct GroupAssignment {
  std::vector<int> labels;
  std::vector<std::vector<std::size_t>> index;

  static GroupAssignment from_labels(std::vector<int> labels);
};

/**
 * Non-interactive cluster extraction. Merges above the height (or beyond the
 * first N-k) are dropped; clusters smaller than min_size become background and
 * the rest are numbered by first appearance in leaf_order.
 */
GroupAssignment cut(const Dendrogram& dend, const CutSpec& by, std::size_t min_size = 2);

}  // namespace cosa
