#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cosa {

enum class AttributeKind { Numeric, Categorical };

/**
 * N x P attribute-value table, stored row-major.
 *
 * Categorical attributes hold non-negative integer codes. Construction
 * validates shape, finiteness and code ranges, so every downstream routine
 * can assume a well-formed matrix.
 */
class DataMatrix {
 public:
  DataMatrix(std::size_t n, std::size_t p, std::vector<double> values,
             std::vector<AttributeKind> kinds = {},
             std::vector<std::string> row_ids = {},
             std::vector<std::string> col_ids = {});

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return p_; }

  double operator()(std::size_t i, std::size_t k) const noexcept { return values_[i * p_ + k]; }
  std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * p_, p_}; }
  std::span<const double> values() const noexcept { return values_; }

  AttributeKind kind(std::size_t k) const noexcept { return kinds_[k]; }
  const std::vector<AttributeKind>& kinds() const noexcept { return kinds_; }
  const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }
  const std::vector<std::string>& col_ids() const noexcept { return col_ids_; }

  /// Returns a copy with numeric column k multiplied by c.
  DataMatrix with_scaled_column(std::size_t k, double c) const;

 private:
  std::size_t n_;
  std::size_t p_;
  std::vector<double> values_;
  std::vector<AttributeKind> kinds_;
  std::vector<std::string> row_ids_;
  std::vector<std::string> col_ids_;
};

}  // namespace cosa
