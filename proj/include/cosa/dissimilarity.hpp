#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace cosa {

/// Condensed lower-triangle index of pair (i, j), i != j, over n objects.
/// Pairs are ordered (1,0), (2,0), ..., (n-1,0), (2,1), ... as in R's `dist`.
constexpr std::size_t condensed_index(std::size_t n, std::size_t i, std::size_t j) noexcept {
  if (i < j) {
    const std::size_t t = i;
    i = j;
    j = t;
  }
  return j * n - j * (j + 1) / 2 + i - j - 1;
}

constexpr std::size_t pair_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

/**
 * Symmetric, zero-diagonal dissimilarities over n objects in condensed form.
 *
 * Only the strict lower triangle is stored.
 */
class DissimilarityMatrix {
 public:
  DissimilarityMatrix() = default;
  explicit DissimilarityMatrix(std::size_t n) : n_(n), values_(pair_count(n), 0.0) {}
  DissimilarityMatrix(std::size_t n, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return i == j ? 0.0 : values_[condensed_index(n_, i, j)];
  }
  double& at(std::size_t i, std::size_t j) noexcept {
    assert(i != j);
    return values_[condensed_index(n_, i, j)];
  }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  friend bool operator==(const DissimilarityMatrix&, const DissimilarityMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Calls fn(i, j, index) for every stored pair in condensed order.
template <typename Fn>
void for_each_pair(std::size_t n, Fn&& fn) {
  std::size_t idx = 0;
  for (std::size_t j = 0; j + 1 < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i) fn(i, j, idx++);
}

}  // namespace cosa
