#include "cosa/hclust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "cosa/error.hpp"

namespace cosa {

const char* to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::Single: return "single";
    case Linkage::Complete: return "complete";
    case Linkage::Average: return "average";
    case Linkage::Ward: return "ward";
  }
  return "average";
}

Linkage parse_linkage(const std::string& name) {
  if (name == "single") return Linkage::Single;
  if (name == "complete") return Linkage::Complete;
  if (name == "average") return Linkage::Average;
  if (name == "ward") return Linkage::Ward;
  throw Error(ErrorCode::InvalidArgument, "unknown linkage '" + name + "'");
}

DissimilarityMatrix normalize_ss(const DissimilarityMatrix& d) {
  double ss = 0.0;
  for (double v : d.values()) ss += v * v;
  if (!(ss > 0)) throw Error(ErrorCode::AllZero, "cannot normalise an all-zero dissimilarity matrix");
  const double c = std::sqrt(static_cast<double>(d.size()) / ss);
  DissimilarityMatrix out = d;
  for (double& v : out.values()) v *= c;
  return out;
}

namespace {

// Ordering key of a candidate merge: dissimilarity, then node-id pair.
struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::size_t lo = std::numeric_limits<std::size_t>::max();
  std::size_t hi = std::numeric_limits<std::size_t>::max();

  bool operator<(const Candidate& o) const { return std::tie(value, lo, hi) < std::tie(o.value, o.lo, o.hi); }
};

void fill_leaf_order(Dendrogram& dend) {
  const std::size_t n = dend.n;
  dend.leaf_order.clear();
  dend.leaf_order.reserve(n);
  std::vector<std::size_t> stack{n + dend.merges.size() - 1};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    if (node < n) {
      dend.leaf_order.push_back(node);
      continue;
    }
    const Merge& m = dend.merges[node - n];
    stack.push_back(m.right);
    stack.push_back(m.left);
  }
}

}  // namespace

Dendrogram agglomerate(const DissimilarityMatrix& d, Linkage linkage) {
  const std::size_t n = d.size();
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "agglomeration needs at least 2 objects");

  // Working copy indexed by slot; a merged cluster reuses the slot of its
  // smaller-slot child. Ward works on squared values.
  DissimilarityMatrix work = d;
  if (linkage == Linkage::Ward)
    for (double& v : work.values()) v *= v;

  std::vector<std::size_t> node(n), size(n, 1);
  std::vector<bool> active(n, true);
  for (std::size_t s = 0; s < n; ++s) node[s] = s;

  auto key = [&](std::size_t a, std::size_t b) {
    const std::size_t na = node[a], nb = node[b];
    return Candidate{work(a, b), std::min(na, nb), std::max(na, nb)};
  };
  std::vector<std::size_t> nn(n);
  std::vector<Candidate> nn_key(n);
  auto rescan = [&](std::size_t a) {
    Candidate best;
    std::size_t arg = a;
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || !active[b]) continue;
      const Candidate c = key(a, b);
      if (c < best) {
        best = c;
        arg = b;
      }
    }
    nn[a] = arg;
    nn_key[a] = best;
  };
  for (std::size_t a = 0; a < n; ++a) rescan(a);

  Dendrogram dend;
  dend.n = n;
  dend.linkage = linkage;
  dend.merges.reserve(n - 1);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = n;
    for (std::size_t s = 0; s < n; ++s)
      if (active[s] && (a == n || nn_key[s] < nn_key[a])) a = s;
    std::size_t b = nn[a];
    if (b < a) std::swap(a, b);  // keep the lower slot

    const double merged_value = work(a, b);
    const double ni = static_cast<double>(size[a]);
    const double nj = static_cast<double>(size[b]);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      const double dik = work(a, k);
      const double djk = work(b, k);
      double v = 0.0;
      switch (linkage) {
        case Linkage::Single: v = std::min(dik, djk); break;
        case Linkage::Complete: v = std::max(dik, djk); break;
        case Linkage::Average: v = (ni * dik + nj * djk) / (ni + nj); break;
        case Linkage::Ward: {
          const double nk = static_cast<double>(size[k]);
          v = ((ni + nk) * dik + (nj + nk) * djk - nk * merged_value) / (ni + nj + nk);
          break;
        }
      }
      work.at(a, k) = v;
    }

    Merge m;
    m.left = std::min(node[a], node[b]);
    m.right = std::max(node[a], node[b]);
    m.height = linkage == Linkage::Ward ? std::sqrt(std::max(merged_value, 0.0)) : merged_value;
    m.size = size[a] + size[b];
    if (!dend.merges.empty() && m.height < dend.merges.back().height) dend.has_inversions = true;
    dend.merges.push_back(m);

    node[a] = n + step;
    size[a] = m.size;
    active[b] = false;

    rescan(a);
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a) continue;
      if (nn[k] == a || nn[k] == b) {
        rescan(k);
      } else {
        const Candidate c = key(k, a);
        if (c < nn_key[k]) {
          nn[k] = a;
          nn_key[k] = c;
        }
      }
    }
  }

  fill_leaf_order(dend);
  return dend;
}

GroupAssignment GroupAssignment::from_labels(std::vector<int> labels) {
  GroupAssignment g;
  int groups = 0;
  for (int l : labels) groups = std::max(groups, l);
  g.index.resize(static_cast<std::size_t>(groups));
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] > 0) g.index[static_cast<std::size_t>(labels[i] - 1)].push_back(i);
  g.labels = std::move(labels);
  return g;
}

GroupAssignment cut(const Dendrogram& dend, const CutSpec& by, std::size_t min_size) {
  const std::size_t n = dend.n;
  std::size_t kept = 0;
  std::vector<bool> keep(dend.merges.size(), false);
  if (const auto* ck = std::get_if<CutCount>(&by)) {
    if (ck->k < 1 || ck->k > n)
      throw Error(ErrorCode::InvalidK, "cut k = " + std::to_string(ck->k) + " outside [1, " + std::to_string(n) + "]");
    kept = n - ck->k;
    for (std::size_t t = 0; t < kept; ++t) keep[t] = true;
  } else {
    const double h = std::get<CutHeight>(by).height;
    for (std::size_t t = 0; t < dend.merges.size(); ++t) keep[t] = dend.merges[t].height <= h;
  }

  // union-find over node ids
  std::vector<std::size_t> parent(2 * n - 1);
  for (std::size_t v = 0; v < parent.size(); ++v) parent[v] = v;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t t = 0; t < dend.merges.size(); ++t) {
    if (!keep[t]) continue;
    const std::size_t id = n + t;
    parent[find(dend.merges[t].left)] = id;
    parent[find(dend.merges[t].right)] = id;
  }

  std::vector<std::size_t> root(n), count(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) ++count[root[i] = find(i)];

  std::vector<int> label_of(2 * n - 1, -1);
  std::vector<int> labels(n, 0);
  int next = 0;
  for (std::size_t leaf : dend.leaf_order) {
    const std::size_t r = root[leaf];
    if (count[r] < min_size) continue;
    if (label_of[r] < 0) label_of[r] = ++next;
    labels[leaf] = label_of[r];
  }
  return GroupAssignment::from_labels(std::move(labels));
}

}  // namespace cosa
