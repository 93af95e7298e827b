#include "cosa/importance.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cosa/error.hpp"
#include "cosa/parallel.hpp"
#include "cosa/rng.hpp"

namespace cosa {

namespace {

// Dispersion of every attribute for one group, in attribute order.
std::vector<double> dispersions(const AttributeDistances& dist, std::span<const std::size_t> group,
                                ImportanceNorm norm) {
  const std::size_t p = dist.attributes();
  std::vector<double> sums(p, 0.0), buf(p);
  for (std::size_t a = 1; a < group.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      dist.pair(group[a], group[b], buf);
      for (std::size_t k = 0; k < p; ++k) sums[k] += buf[k];
    }
  const double m = static_cast<double>(norm == ImportanceNorm::Group ? group.size() : dist.objects());
  const double c = 2.0 / (m * m);  // ordered pairs: each unordered pair twice
  for (double& s : sums) s *= c;
  return sums;
}

void check_group(const AttributeDistances& dist, std::span<const std::size_t> group) {
  if (group.size() < 2) throw Error(ErrorCode::GroupTooSmall, "group needs at least 2 objects");
  for (std::size_t i : group)
    if (i >= dist.objects()) throw Error(ErrorCode::InvalidArgument, "object id " + std::to_string(i) + " out of range");
}

std::vector<double> sorted_curve(const std::vector<double>& disp, std::size_t range) {
  std::vector<double> imp(disp.size());
  for (std::size_t k = 0; k < disp.size(); ++k) imp[k] = 1.0 / (disp[k] + kImportanceEpsilon);
  std::partial_sort(imp.begin(), imp.begin() + static_cast<std::ptrdiff_t>(range), imp.end(), std::greater<>());
  imp.resize(range);
  return imp;
}

}  // namespace

double dispersion(const AttributeDistances& dist, std::span<const std::size_t> group, std::size_t k,
                  ImportanceNorm norm) {
  check_group(dist, group);
  if (k >= dist.attributes()) throw Error(ErrorCode::InvalidArgument, "attribute out of range");
  double sum = 0.0;
  for (std::size_t i : group)
    for (std::size_t j : group)
      if (i != j) sum += dist(i, j, k);
  const double m = static_cast<double>(norm == ImportanceNorm::Group ? group.size() : dist.objects());
  return sum / (m * m);
}

ImportanceReport attimp(const AttributeDistances& dist, std::span<const std::size_t> group, std::size_t range,
                        int times, std::uint64_t seed, ImportanceNorm norm) {
  check_group(dist, group);
  const std::size_t p = dist.attributes();
  if (range < 1 || range > p)
    throw Error(ErrorCode::RangeTooLarge, "range " + std::to_string(range) + " outside [1, " + std::to_string(p) + "]");

  ImportanceReport rep;
  rep.group.assign(group.begin(), group.end());
  rep.seed = seed;

  const std::vector<double> disp = dispersions(dist, group, norm);
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return disp[a] < disp[b]; });
  for (std::size_t r = 0; r < range; ++r) {
    const std::size_t k = order[r];
    rep.att.push_back(k);
    rep.disp.push_back(disp[k]);
    rep.imp.push_back(1.0 / (disp[k] + kImportanceEpsilon));
  }

  if (times > 0) {
    rep.null_curves.resize(static_cast<std::size_t>(times));
    parallel_for(rep.null_curves.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t r = begin; r < end; ++r) {
        Rng rng(seed, r);
        const std::vector<std::size_t> draw = rng.sample(dist.objects(), group.size());
        rep.null_curves[r] = sorted_curve(dispersions(dist, draw, norm), range);
      }
    });
    rep.null_mean.assign(range, 0.0);
    for (const auto& curve : rep.null_curves)
      for (std::size_t r = 0; r < range; ++r) rep.null_mean[r] += curve[r];
    for (double& v : rep.null_mean) v /= static_cast<double>(times);
  }
  return rep;
}

}  // namespace cosa
