#include "cosa/data_matrix.hpp"

#include <cmath>
#include <string>

#include "cosa/error.hpp"

namespace cosa {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroDispersion: return "ZeroDispersion";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::DegenerateRank: return "DegenerateRank";
    case ErrorCode::GroupTooSmall: return "GroupTooSmall";
    case ErrorCode::RangeTooLarge: return "RangeTooLarge";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

DataMatrix::DataMatrix(std::size_t n, std::size_t p, std::vector<double> values,
                       std::vector<AttributeKind> kinds, std::vector<std::string> row_ids,
                       std::vector<std::string> col_ids)
    : n_(n), p_(p), values_(std::move(values)), kinds_(std::move(kinds)),
      row_ids_(std::move(row_ids)), col_ids_(std::move(col_ids)) {
  if (n_ < 2) throw Error(ErrorCode::DimensionTooSmall, "need at least 2 objects");
  if (p_ < 1) throw Error(ErrorCode::DimensionTooSmall, "need at least 1 attribute");
  if (values_.size() != n_ * p_)
    throw Error(ErrorCode::LengthMismatch, "value count " + std::to_string(values_.size()) +
                                               " != " + std::to_string(n_) + "x" + std::to_string(p_));
  if (kinds_.empty()) kinds_.assign(p_, AttributeKind::Numeric);
  if (kinds_.size() != p_) throw Error(ErrorCode::LengthMismatch, "attribute kinds");
  if (row_ids_.empty())
    for (std::size_t i = 0; i < n_; ++i) row_ids_.push_back(std::to_string(i + 1));
  if (col_ids_.empty())
    for (std::size_t k = 0; k < p_; ++k) col_ids_.push_back("a" + std::to_string(k + 1));
  if (row_ids_.size() != n_) throw Error(ErrorCode::LengthMismatch, "row ids");
  if (col_ids_.size() != p_) throw Error(ErrorCode::LengthMismatch, "column ids");

  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < p_; ++k) {
      const double v = values_[i * p_ + k];
      if (!std::isfinite(v))
        throw Error(ErrorCode::InvalidArgument,
                    "non-finite value at row " + std::to_string(i) + ", column " + std::to_string(k));
      if (kinds_[k] == AttributeKind::Categorical && (v < 0 || v != std::floor(v)))
        throw Error(ErrorCode::InvalidArgument, "categorical code must be a non-negative integer at row " +
                                                    std::to_string(i) + ", column " + std::to_string(k));
    }
  }
}

DataMatrix DataMatrix::with_scaled_column(std::size_t k, double c) const {
  std::vector<double> v = values_;
  for (std::size_t i = 0; i < n_; ++i) v[i * p_ + k] *= c;
  return DataMatrix(n_, p_, std::move(v), kinds_, row_ids_, col_ids_);
}

}  // namespace cosa
