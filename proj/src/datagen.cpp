#include "cosa/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cosa/error.hpp"
#include "cosa/rng.hpp"

namespace cosa {

namespace {

constexpr double kSignalSd = 0.2;
constexpr double kSignalShift = 1.5;

std::vector<double> normal_matrix(Rng& rng, std::size_t n, std::size_t p) {
  std::vector<double> v(n * p);
  for (double& x : v) x = rng.normal();
  return v;
}

void plant(std::vector<double>& v, std::size_t p, std::span<const std::size_t> objects,
           std::span<const std::size_t> attributes, double mean) {
  for (std::size_t i : objects)
    for (std::size_t k : attributes) v[i * p + k] = v[i * p + k] * kSignalSd + mean;
}

// Column standardisation to mean 0 and sample sd 1, two-pass.
void standardize(std::vector<double>& v, std::size_t n, std::size_t p) {
  for (std::size_t k = 0; k < p; ++k) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += v[i * p + k];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i * p + k] -= mean;
      ss += v[i * p + k] * v[i * p + k];
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    for (std::size_t i = 0; i < n; ++i) v[i * p + k] /= sd;
  }
}

std::vector<std::size_t> sorted(std::span<const std::size_t> ids) {
  std::vector<std::size_t> out(ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PlantedDesign gen_design2(std::uint64_t seed, std::size_t n, std::size_t p) {
  if (n < 30 || p < 45)
    throw Error(ErrorCode::DimensionTooSmall, "design 2 needs N >= 30 and P >= 45");
  Rng rng(seed);
  std::vector<double> v = normal_matrix(rng, n, p);
  const std::vector<std::size_t> o = rng.permutation(n);
  const std::vector<std::size_t> a = rng.permutation(p);
  const std::span<const std::size_t> os(o), as(a);

  plant(v, p, os.subspan(0, 15), as.subspan(0, 15), +kSignalShift);
  plant(v, p, os.subspan(0, 15), as.subspan(15, 15), -kSignalShift);
  plant(v, p, os.subspan(15, 15), as.subspan(15, 15), -kSignalShift);
  plant(v, p, os.subspan(15, 15), as.subspan(30, 15), +kSignalShift);
  standardize(v, n, p);

  std::vector<int> labels(n, 0);
  for (std::size_t t = 0; t < 30; ++t) labels[o[t]] = t < 15 ? 1 : 2;
  return PlantedDesign{DataMatrix(n, p, std::move(v)), std::move(labels),
                       {sorted(as.subspan(0, 30)), sorted(as.subspan(15, 30))}, seed};
}

PlantedDesign gen_design1(std::uint64_t seed, std::size_t n, std::size_t p) {
  if (n < 60 || n % 3 != 0 || p < 50)
    throw Error(ErrorCode::DimensionTooSmall, "design 1 needs N >= 60 (multiple of 3) and P >= 50");
  Rng rng(seed);
  std::vector<double> v = normal_matrix(rng, n, p);
  const std::vector<std::size_t> o = rng.permutation(n);
  const std::vector<std::size_t> a = rng.permutation(p);
  const std::span<const std::size_t> os(o), signal = std::span<const std::size_t>(a).subspan(0, 50);
  const std::size_t g = n / 3;
  const double means[3] = {-kSignalShift, 0.0, +kSignalShift};

  std::vector<int> labels(n, 0);
  for (std::size_t c = 0; c < 3; ++c) {
    plant(v, p, os.subspan(c * g, g), signal, means[c]);
    for (std::size_t t = c * g; t < (c + 1) * g; ++t) labels[o[t]] = static_cast<int>(c + 1);
  }
  standardize(v, n, p);
  return PlantedDesign{DataMatrix(n, p, std::move(v)), std::move(labels), {sorted(signal)}, seed};
}

}  // namespace cosa
