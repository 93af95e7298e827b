#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "cosa/error.hpp"
#include "cosa/hclust.hpp"
#include "cosa/metrics.hpp"
#include "oracles.hpp"

using namespace cosa;

namespace {

// Points 0, 1, 3 on a line.
DissimilarityMatrix line3() { return DissimilarityMatrix(3, {1, 3, 2}); }

double sum_sq(const DissimilarityMatrix& d) {
  double s = 0;
  for (double v : d.values()) s += v * v;
  return s;
}

}  // namespace

TEST_CASE("sum-of-squares normalisation") {
  CHECK(normalize_ss(DissimilarityMatrix(3, {1, 1, 1})) == DissimilarityMatrix(3, {1, 1, 1}));
  CHECK(normalize_ss(DissimilarityMatrix(3, {2, 2, 2})) == DissimilarityMatrix(3, {1, 1, 1}));
  Rng rng(2);
  for (std::size_t n : {4u, 9u, 30u}) {
    DissimilarityMatrix d(n);
    for (double& v : d.values()) v = rng.uniform() * 10;
    CHECK(sum_sq(normalize_ss(d)) == doctest::Approx(static_cast<double>(n)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(normalize_ss(DissimilarityMatrix(3)), Error);
}

TEST_CASE("three points on a line") {
  const auto single = agglomerate(line3(), Linkage::Single);
  REQUIRE(single.merges.size() == 2);
  CHECK(single.merges[0].left == 0);
  CHECK(single.merges[0].right == 1);
  CHECK(single.merges[0].height == 1.0);
  CHECK(single.merges[1].left == 2);
  CHECK(single.merges[1].right == 3);
  CHECK(single.merges[1].height == 2.0);
  CHECK(single.merges[1].size == 3);

  const auto complete = agglomerate(line3(), Linkage::Complete);
  CHECK(complete.merges[1].height == 3.0);
  CHECK(agglomerate(line3(), Linkage::Average).merges[1].height == 2.5);
}

TEST_CASE("two objects merge once at their distance") {
  for (auto l : {Linkage::Single, Linkage::Complete, Linkage::Average, Linkage::Ward}) {
    const auto d = agglomerate(DissimilarityMatrix(2, {0.75}), l);
    REQUIRE(d.merges.size() == 1);
    CHECK(d.merges[0].height == 0.75);
    CHECK(d.leaf_order == std::vector<std::size_t>{0, 1});
  }
}

TEST_CASE("ward on Euclidean points matches the centroid formula") {
  // 1-D points 0, 1, 5: first merge {0,1} at 1, then sqrt(2*2*1/3) * |0.5 - 5|
  const auto d = agglomerate(DissimilarityMatrix(3, {1, 5, 4}), Linkage::Ward);
  CHECK(d.merges[0].height == 1.0);
  CHECK(d.merges[1].height == doctest::Approx(std::sqrt(4.0 / 3.0) * 4.5).epsilon(1e-14));
}

TEST_CASE("agglomerate matches the naive reference on 200 instances") {
  std::string failure;
  CHECK_MESSAGE(oracle::agglomerate_suite(200, 99, &failure) == 0, failure);
}

TEST_CASE("heights are monotone and leaf order is a permutation") {
  Rng rng(6);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 3 + rng.below(20);
    DissimilarityMatrix d(n);
    for (double& v : d.values()) v = rng.uniform();
    for (auto l : {Linkage::Single, Linkage::Complete, Linkage::Average, Linkage::Ward}) {
      const auto dend = agglomerate(d, l);
      bool monotone = true;
      for (std::size_t m = 1; m < dend.merges.size(); ++m)
        monotone = monotone && dend.merges[m].height >= dend.merges[m - 1].height;
      if (l != Linkage::Ward) CHECK(monotone);
      CHECK(dend.has_inversions == !monotone);
      std::vector<std::size_t> sorted = dend.leaf_order;
      std::sort(sorted.begin(), sorted.end());
      std::vector<std::size_t> ids(n);
      std::iota(ids.begin(), ids.end(), std::size_t{0});
      CHECK(sorted == ids);
      CHECK(dend.merges.back().size == n);
    }
  }
}

TEST_CASE("cut examples") {
  const auto dend = agglomerate(line3(), Linkage::Single);
  const auto all = cut(dend, CutHeight{10.0});
  CHECK(all.labels == std::vector<int>{1, 1, 1});
  const auto mid = cut(dend, CutHeight{1.5});
  CHECK(mid.labels == std::vector<int>{1, 1, 0});
  REQUIRE(mid.index.size() == 1);
  CHECK(mid.index[0] == std::vector<std::size_t>{0, 1});
  CHECK(cut(dend, CutCount{3}).labels == std::vector<int>{0, 0, 0});
  CHECK(cut(dend, CutCount{3}, 1).labels.size() == 3);
  CHECK(cut(dend, CutCount{2}).labels == std::vector<int>{1, 1, 0});
  CHECK_THROWS_AS(cut(dend, CutCount{0}), Error);
  CHECK_THROWS_AS(cut(dend, CutCount{4}), Error);
}

TEST_CASE("labels and index agree") {
  Rng rng(10);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 5 + rng.below(25);
    DissimilarityMatrix d(n);
    for (double& v : d.values()) v = rng.uniform();
    const auto dend = agglomerate(d, Linkage::Average);
    const auto g = cut(dend, CutCount{1 + rng.below(n)}, 1 + rng.below(3));
    CHECK(GroupAssignment::from_labels(g.labels).index == g.index);
    for (std::size_t c = 0; c < g.index.size(); ++c)
      for (std::size_t i : g.index[c]) CHECK(g.labels[i] == static_cast<int>(c + 1));
  }
}

TEST_CASE("linkage names") {
  for (auto l : {Linkage::Single, Linkage::Complete, Linkage::Average, Linkage::Ward})
    CHECK(parse_linkage(to_string(l)) == l);
  CHECK_THROWS(parse_linkage("centroid"));
}

TEST_CASE("adjusted rand index") {
  const std::vector<int> a{1, 1, 2, 2, 3, 3};
  CHECK(adjusted_rand_index(a, a) == doctest::Approx(1.0));
  const std::vector<int> relabelled{5, 5, 7, 7, 9, 9};
  CHECK(adjusted_rand_index(a, relabelled) == doctest::Approx(1.0));
  // hand count: contingency [[1,1],[1,1]] on 4 objects gives ARI -0.5
  const std::vector<int> x{1, 1, 2, 2}, y{1, 2, 1, 2};
  CHECK(adjusted_rand_index(x, y) == doctest::Approx(-0.5));
}

TEST_CASE("best cut ignores background objects") {
  // two tight pairs plus a background object far away from both
  const DissimilarityMatrix d(5, {0.1, 5, 5, 9, 5, 5, 9, 0.1, 9, 9});
  const auto dend = agglomerate(d, Linkage::Average);
  const std::vector<int> truth{1, 1, 2, 2, 0};
  const auto best = best_cut_ari(dend, truth);
  CHECK(best.ari == doctest::Approx(1.0));
  CHECK(best.k == 3);  // k = 2 only splits off the background object
}
