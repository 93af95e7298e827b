#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cosa/data_matrix.hpp"
#include "cosa/dissimilarity.hpp"
#include "cosa/distances.hpp"

namespace cosa {

/// N x P per-object attribute weights; each row lies on the probability simplex.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t n, std::size_t p, double fill) : n_(n), p_(p), w_(n * p, fill) {}

  static WeightMatrix uniform(std::size_t n, std::size_t p) { return {n, p, 1.0 / static_cast<double>(p)}; }

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return p_; }

  double operator()(std::size_t i, std::size_t k) const noexcept { return w_[i * p_ + k]; }
  double& operator()(std::size_t i, std::size_t k) noexcept { return w_[i * p_ + k]; }
  std::span<const double> row(std::size_t i) const noexcept { return {w_.data() + i * p_, p_}; }
  std::span<double> row(std::size_t i) noexcept { return {w_.data() + i * p_, p_}; }
  std::span<const double> values() const noexcept { return w_; }

  /// Largest |row sum - 1| over rows; +inf if any entry leaves [0, 1].
  double simplex_violation() const noexcept;

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::vector<double> w_;
};

using NeighborSets = std::vector<std::vector<std::size_t>>;

/**
 * The K nearest objects of every object under D.
 *
 * Ties break by ascending object index. With include_self, object i is its
 * own first neighbour and the remaining K-1 slots follow the same rule.
 */
NeighborSets knn_sets(const DissimilarityMatrix& d, std::size_t k, bool include_self = false);

/// Closed-form minimiser of the linearised criterion for fixed neighbours.
WeightMatrix update_weights(const AttributeDistances& dist, const NeighborSets& neighbors,
                            std::size_t k, double lambda);

/**
 * Inverse-exponential homotopy dissimilarity.
 *
 * With m_k = max(w_ik, w_jk) and M = sum_k m_k (1 <= M <= 2),
 *   D_ij = -eta * M * log sum_k (m_k / M) exp(-d_ijk / eta),
 * evaluated in log-sum-exp form. For M = 1 this is -eta log sum_k m_k exp(-d_ijk / eta).
 * It increases monotonically in eta towards sum_k m_k d_ijk, the max-weight L1 dissimilarity.
 */
DissimilarityMatrix invexp_dissimilarity(const AttributeDistances& dist, const WeightMatrix& w,
                                         double eta);

/// sum_k max(w_ik, w_jk) d_ijk^power.
DissimilarityMatrix maxweight_dissimilarity(const AttributeDistances& dist, const WeightMatrix& w,
                                            int power = 1);

/// Weighted L1 COSA dissimilarity (power 1 of the above).
inline DissimilarityMatrix maxweight_l1_dissimilarity(const AttributeDistances& dist,
                                                       const WeightMatrix& w) {
  return maxweight_dissimilarity(dist, w, 1);
}

/// Q(W) with row-i weights on the neighbour distances and 0 log 0 = 0.
double criterion(const AttributeDistances& dist, const WeightMatrix& w, const NeighborSets& neighbors,
                 std::size_t k, double lambda);

/// Mean squared difference over the full square, i.e. 2 sum_{i>j} diff^2 / (N(N-1)).
double msd(const DissimilarityMatrix& l1w, const DissimilarityMatrix& eta);

struct CosaParams {
  double lambda = 0.2;
  std::optional<std::size_t> knn;        // floor(sqrt(N))
  std::optional<double> eta_init;        // lambda
  std::optional<double> eta_step;        // 0.1 * lambda
  int max_outer = 100;
  int max_inner = 50;
  double inner_tol = 1e-4;
  double outer_tol = 0.0;     // 0 runs the full eta schedule
  TargetMode targ = TargetMode::None;
  std::optional<TargetSpec> targets;     // explicit targets override `targ`
  ScaleMethod scale_method = ScaleMethod::Std;
  std::vector<double> scale_preset;
  bool knn_includes_self = false;
  std::uint64_t seed = 0;  // the iteration is deterministic; kept for the run record
};

/// CosaParams with every optional resolved against an N-object data set.
struct ResolvedParams {
  double lambda;
  std::size_t knn;
  double eta_init;
  double eta_step;
  int max_outer;
  int max_inner;
  double inner_tol;
  double outer_tol;
  bool knn_includes_self;
};

ResolvedParams resolve(const CosaParams& params, std::size_t n);

struct IterationRecord {
  double wchange = 0.0;
  int iit = 0;
  int oit = 0;
  int it = 0;
  double eta = 0.0;
  double msd = 0.0;
  double crit = 0.0;
};

struct Tunpar {
  double crit = 0.0;
  double lambda = 0.0;
  double homotopy = 0.0;
  double msd = 0.0;
  std::size_t knn = 0;
  int noit = 0;
  int totit = 0;
};

struct CosaResult {
  DissimilarityMatrix d;
  WeightMatrix w;
  std::vector<IterationRecord> log;
  Tunpar tunpar;
  ScaleFactors scales;
  TargetSpec targets;
};

using IterationObserver = std::function<void(const IterationRecord&, const WeightMatrix&)>;

/**
 * Runs the homotopy iteration.
 *
 * Starting from uniform weights, outer step t (1-based) fixes
 * eta = eta_init + t * eta_step and alternates inverse-exponential distances,
 * KNN sets and the closed-form weight update until Wchange < inner_tol or
 * max_inner inner steps. The run stops once the weights move less than
 * outer_tol across a whole outer step, or after max_outer steps. The observer
 * sees every record together with the weights it describes.
 */
CosaResult run_cosa(const DataMatrix& x, const CosaParams& params,
                    const IterationObserver& observer = {});

/// Column header matching format_log_line.
std::string log_header();

/// "wchange iit oit it eta msd crit" with wchange to 6 decimals and eta to 4 significant digits.
std::string format_log_line(const IterationRecord& rec);

}  // namespace cosa
