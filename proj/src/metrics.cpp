#include "cosa/metrics.hpp"

#include <map>
#include <utility>

#include "cosa/error.hpp"

namespace cosa {

namespace {
double choose2(double v) { return v * (v - 1.0) / 2.0; }
}  // namespace

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::SizeMismatch, "ARI labelings differ in length");
  const double n = static_cast<double>(a.size());
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  double sum_joint = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [_, c] : joint) sum_joint += choose2(c);
  for (const auto& [_, c] : rows) sum_rows += choose2(c);
  for (const auto& [_, c] : cols) sum_cols += choose2(c);
  const double expected = sum_rows * sum_cols / choose2(n);
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return sum_joint == max_index ? 1.0 : 0.0;
  return (sum_joint - expected) / (max_index - expected);
}

BestCut best_cut_ari(const Dendrogram& dend, std::span<const int> truth) {
  if (truth.size() != dend.n) throw Error(ErrorCode::SizeMismatch, "truth labels vs dendrogram size");
  std::vector<std::size_t> planted;
  std::vector<int> truth_sub;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] != 0) {
      planted.push_back(i);
      truth_sub.push_back(truth[i]);
    }
  BestCut best;
  best.ari = -1.0;
  std::vector<int> pred(planted.size());
  for (std::size_t k = 2; k <= dend.n; ++k) {
    const GroupAssignment g = cut(dend, CutCount{k}, 1);
    for (std::size_t t = 0; t < planted.size(); ++t) pred[t] = g.labels[planted[t]];
    const double ari = adjusted_rand_index(pred, truth_sub);
    if (ari > best.ari) best = {k, ari};
  }
  return best;
}

}  // namespace cosa
