#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "cosa/dissimilarity.hpp"

namespace cosa::cli {

/**
 * Text dissimilarity file:
 *
 *   cosa-dist v1
 *   n <N>
 *   flags <comma-separated tokens, or ->
 *   <one value per line, condensed pair order>
 *
 * Values use the shortest round-trip representation, so read followed by
 * write reproduces a file written here byte for byte.
 */
struct DistFile {
  DissimilarityMatrix d;
  std::vector<std::string> flags;
};

void write_dist(std::ostream& out, const DistFile& file);
void write_dist(const std::string& path, const DistFile& file);
DistFile read_dist(std::istream& in);
DistFile read_dist(const std::string& path);

}  // namespace cosa::cli
