#include "guiact/dedup.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "guiact/errors.h"
#include "guiact/image.h"
#include "guiact/parallel.h"

namespace guiact {
namespace {

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }

  size_t Find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void Unite(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<size_t> parent_;
};

enum Criterion : unsigned { kImage = 1, kLayout = 2, kEmbedding = 4 };

}  // namespace

double CosineSimilarity(const std::vector<double>& a,
                        const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatchError("embedding dimensions differ");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

DedupResult Dedup(const std::vector<DedupItem>& input,
                  const DedupThresholds& thresholds, int workers) {
  std::vector<DedupItem> items = input;
  std::sort(items.begin(), items.end(),
            [](const DedupItem& a, const DedupItem& b) { return a.id < b.id; });
  for (size_t i = 1; i < items.size(); ++i) {
    if (items[i].id == items[i - 1].id) {
      throw InputError("duplicate record id '" + items[i].id + "'");
    }
  }
  std::optional<size_t> dim;
  for (const auto& it : items) {
    if (!it.embedding) continue;
    for (double v : *it.embedding) {
      if (!std::isfinite(v)) {
        throw InputError("non-finite embedding for '" + it.id + "'");
      }
    }
    if (!dim) dim = it.embedding->size();
    if (*dim != it.embedding->size()) {
      throw DimensionMismatchError("embedding for '" + it.id + "' has dimension " +
                                   std::to_string(it.embedding->size()) +
                                   ", expected " + std::to_string(*dim));
    }
  }

  const size_t n = items.size();
  // Row i lists (j, criteria) for j > i.
  std::vector<std::vector<std::pair<size_t, unsigned>>> links(n);
  ParallelFor(n, workers, [&](size_t i) {
    const DedupItem& a = items[i];
    for (size_t j = i + 1; j < n; ++j) {
      const DedupItem& b = items[j];
      unsigned mask = 0;
      if (a.image_hash && b.image_hash &&
          HammingDistance(*a.image_hash, *b.image_hash) <= thresholds.hamming_max) {
        mask |= kImage;
      }
      if (a.layout_fingerprint && b.layout_fingerprint &&
          *a.layout_fingerprint == *b.layout_fingerprint) {
        mask |= kLayout;
      }
      if (a.embedding && b.embedding &&
          CosineSimilarity(*a.embedding, *b.embedding) >= thresholds.cosine_min) {
        mask |= kEmbedding;
      }
      if (mask != 0) links[i].emplace_back(j, mask);
    }
  });

  UnionFind uf(n);
  for (size_t i = 0; i < n; ++i) {
    for (const auto& [j, mask] : links[i]) uf.Unite(i, j);
  }

  // Roots are the smallest index, i.e. the smallest id, of each cluster.
  std::map<size_t, unsigned> criteria;
  std::map<size_t, std::vector<std::string>> members;
  for (size_t i = 0; i < n; ++i) {
    members[uf.Find(i)].push_back(items[i].id);
    for (const auto& [j, mask] : links[i]) criteria[uf.Find(i)] |= mask;
  }

  DedupResult result;
  for (auto& [root, ids] : members) {
    result.kept.push_back(items[root].id);
    if (ids.size() < 2) continue;
    DuplicateCluster c;
    c.representative = items[root].id;
    c.members = std::move(ids);
    const unsigned mask = criteria[root];
    if (mask & kEmbedding) c.criteria.push_back("embedding");
    if (mask & kImage) c.criteria.push_back("image");
    if (mask & kLayout) c.criteria.push_back("layout");
    result.clusters.push_back(std::move(c));
  }
  return result;
}

}  // namespace guiact
