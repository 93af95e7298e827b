#include "cosa/distances.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cosa/error.hpp"
#include "pairwise.hpp"

namespace cosa {

DissimilarityMatrix::DissimilarityMatrix(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (values_.size() != pair_count(n))
    throw Error(ErrorCode::LengthMismatch, "condensed length " + std::to_string(values_.size()) +
                                               " does not match N = " + std::to_string(n));
}

ScaleFactors compute_scale_factors(const DataMatrix& x, ScaleMethod method,
                                   std::optional<std::span<const double>> preset) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  ScaleFactors out;
  out.method = method;

  if (method == ScaleMethod::Preset) {
    if (!preset || preset->size() != p)
      throw Error(ErrorCode::LengthMismatch, "preset scale vector must have " + std::to_string(p) + " entries");
    out.s.assign(preset->begin(), preset->end());
    for (std::size_t k = 0; k < p; ++k)
      if (!(out.s[k] > 0) || !std::isfinite(out.s[k]))
        throw Error(ErrorCode::ZeroDispersion, "preset scale for attribute " + std::to_string(k) + " is not positive");
    return out;
  }

  out.s.resize(p);
  for (std::size_t k = 0; k < p; ++k) {
    if (x.kind(k) == AttributeKind::Categorical) {
      out.s[k] = 1.0;
      continue;
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x(i, k);
    mean /= static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = x(i, k) - mean;
      acc += method == ScaleMethod::Std ? dev * dev : std::abs(dev);
    }
    const double s = method == ScaleMethod::Std ? std::sqrt(acc / static_cast<double>(n - 1))
                                                : acc / static_cast<double>(n);
    bool constant = true;
    for (std::size_t i = 1; i < n && constant; ++i) constant = x(i, k) == x(0, k);
    if (constant || !(s > 0))
      throw Error(ErrorCode::ZeroDispersion, "attribute " + std::to_string(k) + " (" + x.col_ids()[k] +
                                                 ") has zero dispersion");
    out.s[k] = s;
  }
  return out;
}

TargetSpec make_target_spec(const DataMatrix& x, TargetMode mode) {
  TargetSpec spec;
  spec.mode = mode;
  if (mode == TargetMode::None) return spec;
  const std::size_t p = x.cols();
  std::vector<double> hi(p), lo(p);
  for (std::size_t k = 0; k < p; ++k) {
    hi[k] = lo[k] = x(0, k);
    for (std::size_t i = 1; i < x.rows(); ++i) {
      hi[k] = std::max(hi[k], x(i, k));
      lo[k] = std::min(lo[k], x(i, k));
    }
  }
  switch (mode) {
    case TargetMode::SingleHigh: spec.t = std::move(hi); break;
    case TargetMode::SingleLow: spec.t = std::move(lo); break;
    case TargetMode::Dual:
      spec.t = std::move(hi);
      spec.u = std::move(lo);
      break;
    case TargetMode::None: break;
  }
  return spec;
}

double targeted_attr_distance(double xi, double xj, const TargetSlice& target, AttributeKind kind,
                              double s) noexcept {
  auto single = [&](double t) {
    return std::max(attr_distance(xi, t, kind, s), attr_distance(xj, t, kind, s));
  };
  switch (target.mode) {
    case TargetMode::None: return attr_distance(xi, xj, kind, s);
    case TargetMode::SingleHigh:
    case TargetMode::SingleLow: return single(target.t);
    case TargetMode::Dual: return std::min(single(target.t), single(target.u));
  }
  return attr_distance(xi, xj, kind, s);
}

AttributeDistances::AttributeDistances(const DataMatrix& x, ScaleFactors scales, TargetSpec targets)
    : n_(x.rows()), p_(x.cols()), values_(x.values().begin(), x.values().end()), kinds_(x.kinds()),
      scales_(std::move(scales)), targets_(std::move(targets)) {
  if (scales_.s.size() != p_) throw Error(ErrorCode::LengthMismatch, "scale factors");
  for (double s : scales_.s)
    if (!(s > 0)) throw Error(ErrorCode::ZeroDispersion, "scale factors must be positive");
  if (targets_.mode != TargetMode::None) {
    if (targets_.t.size() != p_) throw Error(ErrorCode::LengthMismatch, "target vector t");
    if (targets_.mode == TargetMode::Dual) {
      if (targets_.u.size() != p_) throw Error(ErrorCode::LengthMismatch, "target vector u");
      for (std::size_t k = 0; k < p_; ++k)
        if (targets_.t[k] < targets_.u[k])
          throw Error(ErrorCode::InvalidArgument, "dual targets need t >= u at attribute " + std::to_string(k));
    }
  }
  all_numeric_ = std::all_of(kinds_.begin(), kinds_.end(), [](AttributeKind k) { return k == AttributeKind::Numeric; });
}

double AttributeDistances::operator()(std::size_t i, std::size_t j, std::size_t k) const noexcept {
  const double xi = values_[i * p_ + k];
  const double xj = values_[j * p_ + k];
  if (targets_.mode == TargetMode::None || kinds_[k] == AttributeKind::Categorical)
    return attr_distance(xi, xj, kinds_[k], scales_.s[k]);
  const TargetSlice slice{targets_.mode, targets_.t[k], targets_.mode == TargetMode::Dual ? targets_.u[k] : 0.0};
  return targeted_attr_distance(xi, xj, slice, kinds_[k], scales_.s[k]);
}

void AttributeDistances::pair(std::size_t i, std::size_t j, std::span<double> out) const noexcept {
  const double* xi = values_.data() + i * p_;
  const double* xj = values_.data() + j * p_;
  const double* s = scales_.s.data();
  if (all_numeric_ && targets_.mode == TargetMode::None) {
    for (std::size_t k = 0; k < p_; ++k) out[k] = std::abs(xi[k] - xj[k]) / s[k];
    return;
  }
  for (std::size_t k = 0; k < p_; ++k) out[k] = (*this)(i, j, k);
}

DissimilarityMatrix l1_dissimilarity(const AttributeDistances& dist) {
  return detail::pairwise(dist, [](std::size_t, std::size_t, std::span<const double> d) {
    double sum = 0.0;
    for (double v : d) sum += v;
    return sum;
  });
}

DissimilarityMatrix sqeuclid_dissimilarity(const AttributeDistances& dist) {
  return detail::pairwise(dist, [](std::size_t, std::size_t, std::span<const double> d) {
    double sum = 0.0;
    for (double v : d) sum += v * v;
    return sum;
  });
}

DissimilarityMatrix fixed_weight_dissimilarity(const AttributeDistances& dist, std::span<const double> weights,
                                               int power) {
  if (weights.size() != dist.attributes())
    throw Error(ErrorCode::LengthMismatch, "weight vector must have " + std::to_string(dist.attributes()) + " entries");
  if (power != 1 && power != 2) throw Error(ErrorCode::InvalidArgument, "power must be 1 or 2");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w)) throw Error(ErrorCode::InvalidArgument, "weights must be non-negative");
    total += w;
  }
  if (!(total > 0)) throw Error(ErrorCode::AllZeroWeights, "weights sum to zero");
  return detail::pairwise(dist, [&](std::size_t, std::size_t, std::span<const double> d) {
    double sum = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) sum += weights[k] * (power == 1 ? d[k] : d[k] * d[k]);
    return sum;
  });
}

}  // namespace cosa
