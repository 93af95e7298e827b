#include "cosa/engine.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "cosa/error.hpp"
#include "cosa/parallel.hpp"
#include "pairwise.hpp"

namespace cosa {

double WeightMatrix::simplex_violation() const noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double sum = 0.0;
    for (double v : row(i)) {
      if (!(v >= 0.0 && v <= 1.0)) return std::numeric_limits<double>::infinity();
      sum += v;
    }
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

NeighborSets knn_sets(const DissimilarityMatrix& d, std::size_t k, bool include_self) {
  const std::size_t n = d.size();
  if (k < 1 || k > n - 1)
    throw Error(ErrorCode::InvalidK, "K = " + std::to_string(k) + " outside [1, " + std::to_string(n - 1) + "]");
  const std::size_t others = include_self ? k - 1 : k;
  NeighborSets out(n);
  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    cand.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) cand.emplace_back(d(i, j), j);
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(others), cand.end());
    auto& nb = out[i];
    nb.reserve(k);
    if (include_self) nb.push_back(i);
    for (std::size_t r = 0; r < others; ++r) nb.push_back(cand[r].second);
  }
  return out;
}

WeightMatrix update_weights(const AttributeDistances& dist, const NeighborSets& neighbors, std::size_t k,
                            double lambda) {
  const std::size_t n = dist.objects();
  const std::size_t p = dist.attributes();
  if (neighbors.size() != n) throw Error(ErrorCode::SizeMismatch, "neighbour sets");
  if (!(lambda > 0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  WeightMatrix w(n, p, 0.0);
  const double temperature = static_cast<double>(k) * lambda;
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> buf(p), acc(p);
    for (std::size_t i = begin; i < end; ++i) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t j : neighbors[i]) {
        dist.pair(i, j, buf);
        for (std::size_t a = 0; a < p; ++a) acc[a] += buf[a];
      }
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < p; ++a) {
        acc[a] = -acc[a] / temperature;
        top = std::max(top, acc[a]);
      }
      double total = 0.0;
      for (std::size_t a = 0; a < p; ++a) {
        acc[a] = std::exp(acc[a] - top);
        total += acc[a];
      }
      auto row = w.row(i);
      for (std::size_t a = 0; a < p; ++a) row[a] = acc[a] / total;
    }
  });
  return w;
}

DissimilarityMatrix invexp_dissimilarity(const AttributeDistances& dist, const WeightMatrix& w, double eta) {
  if (!(eta > 0)) throw Error(ErrorCode::InvalidArgument, "eta must be positive");
  if (w.rows() != dist.objects() || w.cols() != dist.attributes())
    throw Error(ErrorCode::SizeMismatch, "weight matrix shape");
  const std::size_t p = dist.attributes();
  std::vector<double> logw(w.values().size());
  std::transform(w.values().begin(), w.values().end(), logw.begin(), [](double v) { return std::log(v); });

  const double inv_eta = 1.0 / eta;
  return detail::pairwise(dist, [&](std::size_t i, std::size_t j, std::span<const double> d) {
    thread_local std::vector<double> terms;
    terms.resize(p);
    const double* li = logw.data() + i * p;
    const double* lj = logw.data() + j * p;
    const auto wi = w.row(i);
    const auto wj = w.row(j);
    double mass = 0.0, upper = 0.0, dmin = std::numeric_limits<double>::infinity();
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < p; ++k) {
      const double m = std::max(wi[k], wj[k]);
      mass += m;
      upper += m * d[k];
      dmin = std::min(dmin, d[k]);
      terms[k] = std::max(li[k], lj[k]) - d[k] * inv_eta;
      top = std::max(top, terms[k]);
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < p; ++k) sum += std::exp(terms[k] - top);
    // soft minimum of d under the normalised max-weights, scaled back by their mass;
    // the exact value lies in [mass * min d, sum m d], clamping removes rounding spill
    const double v = -eta * mass * (top + std::log(sum) - std::log(mass));
    return std::clamp(v, mass * dmin, upper);
  });
}

DissimilarityMatrix maxweight_dissimilarity(const AttributeDistances& dist, const WeightMatrix& w, int power) {
  if (w.rows() != dist.objects() || w.cols() != dist.attributes())
    throw Error(ErrorCode::SizeMismatch, "weight matrix shape");
  if (power != 1 && power != 2) throw Error(ErrorCode::InvalidArgument, "power must be 1 or 2");
  return detail::pairwise(dist, [&](std::size_t i, std::size_t j, std::span<const double> d) {
    const auto wi = w.row(i);
    const auto wj = w.row(j);
    double sum = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k)
      sum += std::max(wi[k], wj[k]) * (power == 1 ? d[k] : d[k] * d[k]);
    return sum;
  });
}

double criterion(const AttributeDistances& dist, const WeightMatrix& w, const NeighborSets& neighbors,
                 std::size_t k, double lambda) {
  const std::size_t n = dist.objects();
  const std::size_t p = dist.attributes();
  std::vector<double> buf(p);
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto wi = w.row(i);
    double fit = 0.0;
    for (std::size_t j : neighbors[i]) {
      dist.pair(i, j, buf);
      double dij = 0.0;
      for (std::size_t a = 0; a < p; ++a) dij += wi[a] * buf[a];
      fit += dij;
    }
    double entropy = 0.0;
    for (double v : wi)
      if (v > 0) entropy += v * std::log(v);
    q += fit / static_cast<double>(k) + lambda * entropy;
  }
  return q;
}

double msd(const DissimilarityMatrix& l1w, const DissimilarityMatrix& eta) {
  if (l1w.size() != eta.size()) throw Error(ErrorCode::SizeMismatch, "MSD inputs differ in N");
  const std::size_t n = l1w.size();
  if (n < 2) return 0.0;
  const auto a = l1w.values();
  const auto b = eta.values();
  double sum = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double diff = a[t] - b[t];
    sum += diff * diff;
  }
  return sum * 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
}

ResolvedParams resolve(const CosaParams& params, std::size_t n) {
  ResolvedParams r{};
  r.lambda = params.lambda;
  if (!(r.lambda > 0) || !std::isfinite(r.lambda)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  r.knn = params.knn.value_or(static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n)))));
  if (r.knn < 1 || r.knn > n - 1)
    throw Error(ErrorCode::InvalidK, "knn = " + std::to_string(r.knn) + " outside [1, " + std::to_string(n - 1) + "]");
  r.eta_init = params.eta_init.value_or(r.lambda);
  if (r.eta_init < r.lambda) throw Error(ErrorCode::InvalidArgument, "eta_init must be >= lambda");
  r.eta_step = params.eta_step.value_or(0.1 * r.lambda);
  if (!(r.eta_step > 0)) throw Error(ErrorCode::InvalidArgument, "eta_step must be positive");
  r.max_outer = params.max_outer;
  r.max_inner = params.max_inner;
  if (r.max_outer < 1 || r.max_inner < 1) throw Error(ErrorCode::InvalidArgument, "iteration caps must be >= 1");
  r.inner_tol = params.inner_tol;
  r.outer_tol = params.outer_tol;
  r.knn_includes_self = params.knn_includes_self;
  return r;
}

namespace {

double weight_change(const WeightMatrix& a, const WeightMatrix& b) {
  const auto va = a.values();
  const auto vb = b.values();
  double sum = 0.0;
  for (std::size_t t = 0; t < va.size(); ++t) sum += std::abs(va[t] - vb[t]);
  return sum;
}

}  // namespace

CosaResult run_cosa(const DataMatrix& x, const CosaParams& params, const IterationObserver& observer) {
  const ResolvedParams rp = resolve(params, x.rows());
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();

  ScaleFactors scales =
      params.scale_method == ScaleMethod::Preset
          ? compute_scale_factors(x, params.scale_method, std::span<const double>(params.scale_preset))
          : compute_scale_factors(x, params.scale_method);
  TargetSpec targets = params.targets ? *params.targets : make_target_spec(x, params.targ);
  const AttributeDistances dist(x, scales, targets);

  CosaResult result;
  result.w = WeightMatrix::uniform(n, p);
  int it = 0;
  for (int oit = 1; oit <= rp.max_outer; ++oit) {
    const double eta = rp.eta_init + oit * rp.eta_step;
    const WeightMatrix outer_start = result.w;
    DissimilarityMatrix d_eta = invexp_dissimilarity(dist, result.w, eta);
    for (int iit = 1; iit <= rp.max_inner; ++iit) {
      const NeighborSets nb = knn_sets(d_eta, rp.knn, rp.knn_includes_self);
      WeightMatrix next = update_weights(dist, nb, rp.knn, rp.lambda);

      IterationRecord rec;
      rec.wchange = weight_change(next, result.w);
      rec.iit = iit;
      rec.oit = oit;
      rec.it = ++it;
      rec.eta = eta;
      result.w = std::move(next);
      if (rec.wchange > 0) d_eta = invexp_dissimilarity(dist, result.w, eta);
      rec.msd = msd(maxweight_l1_dissimilarity(dist, result.w), d_eta);
      rec.crit = criterion(dist, result.w, nb, rp.knn, rp.lambda);
      result.log.push_back(rec);
      if (observer) observer(rec, result.w);
      if (rec.wchange < rp.inner_tol) break;
    }
    if (weight_change(result.w, outer_start) < rp.outer_tol) break;
  }

  result.d = maxweight_l1_dissimilarity(dist, result.w);
  const IterationRecord& last = result.log.back();
  result.tunpar = Tunpar{last.crit, rp.lambda, last.eta, last.msd, rp.knn, last.oit, last.it};
  result.scales = std::move(scales);
  result.targets = std::move(targets);
  return result;
}

std::string log_header() {
  return fmt::format("{:>12} {:>8} {:>4} {:>4}   {:<8} {:>14} {:>14}", "Wchange", "#iit", "#oit", "#it", "Eta",
                     "MSD", "Crit");
}

std::string format_log_line(const IterationRecord& rec) {
  return fmt::format("{:12.6f} {:8d} {:4d} {:4d}   {:<8} {:14.6g} {:14.6g}", rec.wchange, rec.iit, rec.oit, rec.it,
                     fmt::format("{:#.4g}", rec.eta), rec.msd, rec.crit);
}

}  // namespace cosa
