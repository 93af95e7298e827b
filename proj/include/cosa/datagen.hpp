#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cosa/data_matrix.hpp"

namespace cosa {

struct PlantedDesign {
  DataMatrix x;
  std::vector<int> object_labels;                        // 0 = background
  std::vector<std::vector<std::size_t>> attribute_sets;  // per group, ascending
  std::uint64_t seed = 0;
};

/**
 * Two 15-object groups in a background of N-30 standard-normal objects.
 * With o and a seeded permutations of objects and attributes:
 *   group 1 = o[0..14]:  N(+1.5, 0.2) on a[0..14],  N(-1.5, 0.2) on a[15..29]
 *   group 2 = o[15..29]: N(-1.5, 0.2) on a[15..29], N(+1.5, 0.2) on a[30..44]
 * Planted cells reuse their background draw as z * 0.2 +- 1.5. Columns are
 * standardised afterwards (mean 0, sample sd 1).
 */
PlantedDesign gen_design2(std::uint64_t seed, std::size_t n = 100, std::size_t p = 1000);

/**
 * Three equal groups of N/3 objects sharing one 50-attribute signal set with
 * means -1.5, 0, +1.5 and sd 0.2; standard normal elsewhere; standardised.
 */
PlantedDesign gen_design1(std::uint64_t seed, std::size_t n = 60, std::size_t p = 500);

}  // namespace cosa
