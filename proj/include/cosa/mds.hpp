#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cosa/dissimilarity.hpp"

namespace cosa {

struct IntervalTransform {
  double alpha = 0.0;
  double beta = 1.0;
};

struct Embedding {
  Eigen::MatrixXd z;             // N x p, columns centred
  double stress = 0.0;
  std::vector<double> history;   // history[0] is the stress of the start configuration
  std::size_t p = 2;
  std::optional<IntervalTransform> transform;
  bool negative_eigenvalues = false;  // classical scaling only
};

/// Raw stress over the full square: 2 * sum_{i>j} (dhat_ij - ||z_i - z_j||)^2.
double stress(const Eigen::MatrixXd& z, const DissimilarityMatrix& dhat);

/// Euclidean distances between the rows of z.
DissimilarityMatrix configuration_distances(const Eigen::MatrixXd& z);

/// Torgerson-Gower scaling of -1/2 J D^2 J. Eigenvector signs are fixed so the
/// largest-magnitude entry of each column is positive.
Embedding classical_mds(const DissimilarityMatrix& d, std::size_t p = 2);

enum class SmacofInit { Classical, Random };

struct SmacofOptions {
  std::size_t p = 2;
  int niter = 100;
  bool interc = true;
  double tol = 1e-6;
  SmacofInit init = SmacofInit::Classical;
  std::uint64_t seed = 0;
};

/**
 * SMACOF with unit weights.
 *
 * Each iteration applies one Guttman transform and, with interc, refits
 * dhat = alpha + beta * D by least squares against the current distances,
 * restricted to beta > 0 and min dhat >= 0 and rescaled so that sum dhat^2
 * equals sum D^2. Both steps are non-increasing in stress, so the history is
 * monotone.
 */
Embedding smacof(const DissimilarityMatrix& d, const SmacofOptions& options = {});

}  // namespace cosa
