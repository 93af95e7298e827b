#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cosa/data_matrix.hpp"
#include "cosa/dissimilarity.hpp"

namespace cosa {

enum class ScaleMethod { Std, Mad, Preset };

struct ScaleFactors {
  std::vector<double> s;
  ScaleMethod method = ScaleMethod::Std;
};

/**
 * Per-attribute scale factors.
 *
 * Std is the sample standard deviation (divisor N-1), Mad the mean absolute
 * deviation about the mean. Categorical attributes get 1 under both. Preset
 * passes `preset` through unchanged after validation.
 */
ScaleFactors compute_scale_factors(const DataMatrix& x, ScaleMethod method,
                                   std::optional<std::span<const double>> preset = std::nullopt);

enum class TargetMode { None, SingleHigh, SingleLow, Dual };

/// Targets per attribute. In Dual mode t is the high target and u the low one.
struct TargetSpec {
  TargetMode mode = TargetMode::None;
  std::vector<double> t;
  std::vector<double> u;
};

/// One attribute's share of a TargetSpec.
struct TargetSlice {
  TargetMode mode = TargetMode::None;
  double t = 0.0;
  double u = 0.0;
};

/// Default targets from the data: high = column max, low = column min.
TargetSpec make_target_spec(const DataMatrix& x, TargetMode mode);

/// d_k(xi, xj): |xi - xj| / s for numeric, I(xi != xj) / s for categorical.
inline double attr_distance(double xi, double xj, AttributeKind kind, double s) noexcept {
  if (kind == AttributeKind::Categorical) return (xi != xj ? 1.0 : 0.0) / s;
  const double diff = xi - xj;
  return (diff < 0 ? -diff : diff) / s;
}

/// Single target: max of both objects' distance to t. Dual: min over the two targets.
double targeted_attr_distance(double xi, double xj, const TargetSlice& target, AttributeKind kind,
                              double s) noexcept;

/**
 * The d_ijk primitive bound to a data matrix, its scale factors and targets.
 *
 * Targeting applies to numeric attributes only; categorical attributes always
 * use the plain indicator distance. Every composite dissimilarity in the
 * library goes through `pair`, which fills d_ijk for k = 0..P-1 in order.
 */
class AttributeDistances {
 public:
  AttributeDistances(const DataMatrix& x, ScaleFactors scales, TargetSpec targets = {});

  std::size_t objects() const noexcept { return n_; }
  std::size_t attributes() const noexcept { return p_; }
  const ScaleFactors& scales() const noexcept { return scales_; }
  const TargetSpec& targets() const noexcept { return targets_; }

  double operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept;
  void pair(std::size_t i, std::size_t j, std::span<double> out) const noexcept;

 private:
  std::size_t n_;
  std::size_t p_;
  std::vector<double> values_;
  std::vector<AttributeKind> kinds_;
  ScaleFactors scales_;
  TargetSpec targets_;
  bool all_numeric_;
};

/// D_ij = sum_k d_ijk.
DissimilarityMatrix l1_dissimilarity(const AttributeDistances& dist);

/// D_ij = sum_k d_ijk^2.
DissimilarityMatrix sqeuclid_dissimilarity(const AttributeDistances& dist);

/// D_ij = sum_k w_k d_ijk^power with one weight vector shared by all objects.
DissimilarityMatrix fixed_weight_dissimilarity(const AttributeDistances& dist,
                                               std::span<const double> weights, int power = 1);

}  // namespace cosa
