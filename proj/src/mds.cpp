#include "cosa/mds.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "cosa/error.hpp"
#include "cosa/rng.hpp"

namespace cosa {

namespace {

void check_dims(const DissimilarityMatrix& d, std::size_t p) {
  if (d.size() < 2) throw Error(ErrorCode::DimensionTooSmall, "MDS needs at least 2 objects");
  if (p < 1 || p > d.size() - 1)
    throw Error(ErrorCode::InvalidArgument, "dimension p = " + std::to_string(p) + " outside [1, " +
                                                std::to_string(d.size() - 1) + "]");
}

void center_columns(Eigen::MatrixXd& z) { z.rowwise() -= z.colwise().mean(); }

double row_distance(const Eigen::MatrixXd& z, std::size_t i, std::size_t j) {
  return (z.row(static_cast<Eigen::Index>(i)) - z.row(static_cast<Eigen::Index>(j))).norm();
}

}  // namespace

DissimilarityMatrix configuration_distances(const Eigen::MatrixXd& z) {
  const auto n = static_cast<std::size_t>(z.rows());
  DissimilarityMatrix out(n);
  auto v = out.values();
  for_each_pair(n, [&](std::size_t i, std::size_t j, std::size_t idx) { v[idx] = row_distance(z, i, j); });
  return out;
}

double stress(const Eigen::MatrixXd& z, const DissimilarityMatrix& dhat) {
  if (static_cast<std::size_t>(z.rows()) != dhat.size())
    throw Error(ErrorCode::SizeMismatch, "configuration has " + std::to_string(z.rows()) + " rows, dissimilarities " +
                                             std::to_string(dhat.size()));
  const auto dh = dhat.values();
  double sum = 0.0;
  for_each_pair(dhat.size(), [&](std::size_t i, std::size_t j, std::size_t idx) {
    const double r = dh[idx] - row_distance(z, i, j);
    sum += r * r;
  });
  return 2.0 * sum;
}

Embedding classical_mds(const DissimilarityMatrix& d, std::size_t p) {
  check_dims(d, p);
  const auto n = static_cast<Eigen::Index>(d.size());
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      b(i, j) = v * v;
    }
  // -1/2 J D^2 J
  const Eigen::VectorXd row_mean = b.rowwise().mean();
  const double grand = row_mean.mean();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) b(i, j) = -0.5 * (b(i, j) - row_mean(i) - row_mean(j) + grand);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  const Eigen::VectorXd& values = eig.eigenvalues();  // ascending
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double floor = 1e-12 * scale;
  if (values(n - 1) <= floor) throw Error(ErrorCode::DegenerateRank, "no positive eigenvalue in -1/2 J D^2 J");

  Embedding out;
  out.p = p;
  out.z = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(p));
  for (std::size_t c = 0; c < p; ++c) {
    const Eigen::Index src = n - 1 - static_cast<Eigen::Index>(c);
    const double lambda = values(src);
    if (lambda <= floor) {
      if (lambda < -floor) out.negative_eigenvalues = true;
      continue;
    }
    Eigen::VectorXd vec = eig.eigenvectors().col(src);
    Eigen::Index arg = 0;
    vec.cwiseAbs().maxCoeff(&arg);
    if (vec(arg) < 0) vec = -vec;
    out.z.col(static_cast<Eigen::Index>(c)) = vec * std::sqrt(lambda);
  }
  center_columns(out.z);
  out.stress = stress(out.z, d);
  return out;
}

namespace {

// Least-squares fit of dhat = a + beta * (D - Dmin) to target distances with
// a >= 0 and beta > 0. Returns false when the best fit would need beta <= 0.
bool fit_interval(std::span<const double> dis, double dmin, std::span<const double> target, double& a, double& beta) {
  const double m = static_cast<double>(dis.size());
  double se = 0, sy = 0, see = 0, sey = 0, syy = 0;
  for (std::size_t t = 0; t < dis.size(); ++t) {
    const double e = dis[t] - dmin;
    se += e;
    sy += target[t];
    see += e * e;
    sey += e * target[t];
    syy += target[t] * target[t];
  }
  auto residual = [&](double aa, double bb) {
    return syy + m * aa * aa + bb * bb * see - 2 * aa * sy - 2 * bb * sey + 2 * aa * bb * se;
  };
  const double det = m * see - se * se;
  if (det > 0) {
    const double bu = (m * sey - se * sy) / det;
    const double au = (sy - bu * se) / m;
    if (au >= 0 && bu > 0) {
      a = au;
      beta = bu;
      return true;
    }
  }
  // Boundary rays: a = 0 (smallest dhat pinned at 0) or beta = 0 (constant dhat).
  const double b_ray = see > 0 ? sey / see : 0.0;
  const double a_ray = sy / m;
  if (!(b_ray > 0) || residual(0.0, b_ray) > residual(a_ray, 0.0)) return false;
  a = 0.0;
  beta = b_ray;
  return true;
}

}  // namespace

Embedding smacof(const DissimilarityMatrix& d, const SmacofOptions& options) {
  check_dims(d, options.p);
  const std::size_t n = d.size();
  const auto p = static_cast<Eigen::Index>(options.p);

  Embedding out;
  out.p = options.p;
  if (options.init == SmacofInit::Classical) {
    out.z = classical_mds(d, options.p).z;
  } else {
    Rng rng(options.seed);
    out.z.resize(static_cast<Eigen::Index>(n), p);
    for (Eigen::Index i = 0; i < out.z.rows(); ++i)
      for (Eigen::Index c = 0; c < p; ++c) out.z(i, c) = rng.normal();
    center_columns(out.z);
  }

  const auto dis = d.values();
  const double dmin = dis.empty() ? 0.0 : *std::min_element(dis.begin(), dis.end());
  double ss_dis = 0.0;
  for (double v : dis) ss_dis += v * v;

  DissimilarityMatrix dhat = d;
  IntervalTransform transform;
  double current = stress(out.z, dhat);
  out.history.push_back(current);

  Eigen::MatrixXd next(out.z.rows(), p);
  for (int iter = 0; iter < options.niter; ++iter) {
    // Guttman transform with unit weights: z_i <- (1/N) sum_{j != i} (dhat_ij / d_ij) (z_i - z_j)
    next.setZero();
    const auto dh = dhat.values();
    for_each_pair(n, [&](std::size_t i, std::size_t j, std::size_t idx) {
      const double dist = row_distance(out.z, i, j);
      if (dist <= 0) return;
      const double ratio = dh[idx] / dist;
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      const Eigen::RowVectorXd delta = ratio * (out.z.row(ii) - out.z.row(jj));
      next.row(ii) += delta;
      next.row(jj) -= delta;
    });
    out.z = next / static_cast<double>(n);
    center_columns(out.z);

    if (options.interc) {
      const DissimilarityMatrix fitted = configuration_distances(out.z);
      double a = 0.0, beta = 0.0;
      if (fit_interval(dis, dmin, fitted.values(), a, beta)) {
        auto target = dhat.values();
        double ss = 0.0;
        for (std::size_t t = 0; t < dis.size(); ++t) {
          target[t] = a + beta * (dis[t] - dmin);
          ss += target[t] * target[t];
        }
        const double c = ss > 0 ? std::sqrt(ss_dis / ss) : 1.0;
        for (double& v : target) v *= c;
        transform.alpha = c * (a - beta * dmin);
        transform.beta = c * beta;
      }
    }

    const double prev = current;
    current = stress(out.z, dhat);
    out.history.push_back(current);
    if (current <= 0 || (prev - current) / prev < options.tol) break;
  }

  out.stress = current;
  if (options.interc) out.transform = transform;
  return out;
}

}  // namespace cosa
