#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cosa/distances.hpp"

namespace cosa {

/// Normaliser of the dispersion sum: 1/N_l^2 (group) or 1/N^2 (global).
enum class ImportanceNorm { Group, Global };

inline constexpr double kImportanceEpsilon = 1e-12;

/// S_kl = c * sum_{i,j in group} d_ijk over ordered pairs.
double dispersion(const AttributeDistances& dist, std::span<const std::size_t> group, std::size_t k,
                  ImportanceNorm norm = ImportanceNorm::Group);

struct ImportanceReport {
  std::vector<std::size_t> group;
  std::vector<std::size_t> att;
  std::vector<double> imp;
  std::vector<double> disp;
  std::vector<std::vector<double>> null_curves;  // times x range
  std::vector<double> null_mean;
  std::uint64_t seed = 0;
};

/**
 * Attribute importance I = 1 / (S + eps) for one group, sorted descending and
 * truncated to `range`. With times > 0, also scores `times` random groups of
 * the same size drawn from all objects; repetition r uses Rng(seed, r).
 */
ImportanceReport attimp(const AttributeDistances& dist, std::span<const std::size_t> group,
                        std::size_t range, int times = 0, std::uint64_t seed = 0,
                        ImportanceNorm norm = ImportanceNorm::Group);

}  // namespace cosa
