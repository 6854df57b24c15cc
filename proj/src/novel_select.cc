#include "guiact/novel_select.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "guiact/errors.h"
#include "guiact/parallel.h"
#include "guiact/rng.h"

namespace guiact {

double EmbeddingDistance(const std::vector<double>& a,
                         const std::vector<double>& b, DistanceMetric metric) {
  if (a.size() != b.size()) {
    throw DimensionMismatchError("embedding dimensions differ");
  }
  if (metric == DistanceMetric::kEuclidean) {
    double ss = 0.0;
    for (size_t i = 0; i < a.size(); ++i) ss += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(ss);
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 1.0;
  return std::max(0.0, 1.0 - dot / (std::sqrt(na) * std::sqrt(nb)));
}

NoveltyIndex::NoveltyIndex(std::vector<CandidateEmbedding> pool,
                           const NoveltyParams& params, int workers)
    : pool_(std::move(pool)), params_(params) {
  const size_t n = pool_.size();
  if (n < 2) throw ConfigError("novelty pool needs at least 2 embeddings");
  if (params.k < 1 || static_cast<size_t>(params.k) >= n) {
    throw ConfigError("k must satisfy 1 <= k < pool size");
  }
  if (!(params.alpha >= 0.0) || !(params.beta >= 0.0)) {
    throw ConfigError("alpha and beta must be >= 0");
  }
  const size_t dim = pool_.front().vector.size();
  std::vector<std::string> ids;
  for (const auto& c : pool_) {
    if (c.vector.size() != dim) {
      throw DimensionMismatchError("embedding '" + c.id + "' has dimension " +
                                   std::to_string(c.vector.size()) +
                                   ", expected " + std::to_string(dim));
    }
    for (double v : c.vector) {
      if (!std::isfinite(v)) throw InputError("non-finite embedding '" + c.id + "'");
    }
    ids.push_back(c.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InputError("duplicate embedding ids");
  }

  dist_.assign(n * n, 0.0);
  ParallelFor(n, workers, [&](size_t i) {
    for (size_t j = 0; j < n; ++j) {
      if (i != j) {
        dist_[i * n + j] =
            EmbeddingDistance(pool_[i].vector, pool_[j].vector, params_.metric);
      }
    }
  });

  density_.assign(n, 0.0);
  ParallelFor(n, workers, [&](size_t j) {
    std::vector<double> row;
    row.reserve(n - 1);
    for (size_t i = 0; i < n; ++i) {
      if (i != j) row.push_back(dist_[j * n + i]);
    }
    std::partial_sort(row.begin(), row.begin() + params_.k, row.end());
    double sum = 0.0;
    for (int m = 0; m < params_.k; ++m) sum += row[m];
    density_[j] = sum / params_.k;
  });
}

size_t NoveltyIndex::IndexOf(const std::string& id) const {
  for (size_t i = 0; i < pool_.size(); ++i) {
    if (pool_[i].id == id) return i;
  }
  throw InputError("unknown embedding id '" + id + "'");
}

double NoveltyIndex::RankWeightValue(size_t rank) const {
  return params_.weight == RankWeight::kInverse ? 1.0 / rank
                                                : std::exp(-double(rank));
}

double NoveltyIndex::Score(size_t x, std::span<const size_t> selected) const {
  if (selected.empty()) throw ConfigError("novelty needs a non-empty selected set");
  std::vector<size_t> order(selected.begin(), selected.end());
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const double da = Distance(x, a);
    const double db = Distance(x, b);
    if (da != db) return da < db;
    return pool_[a].id < pool_[b].id;
  });
  double v = 0.0;
  for (size_t r = 0; r < order.size(); ++r) {
    const size_t z = order[r];
    v += std::pow(RankWeightValue(r + 1), params_.alpha) *
         std::pow(Density(z), params_.beta) * Distance(x, z);
  }
  return v;
}

size_t NoveltyIndex::Medoid() const {
  size_t best = 0;
  double best_sum = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < size(); ++i) {
    double sum = 0.0;
    for (size_t j = 0; j < size(); ++j) sum += Distance(i, j);
    if (sum < best_sum || (sum == best_sum && pool_[i].id < pool_[best].id)) {
      best = i;
      best_sum = sum;
    }
  }
  return best;
}

double NoveltyScore(const CandidateEmbedding& x,
                    const std::vector<CandidateEmbedding>& selected,
                    const std::vector<CandidateEmbedding>& pool,
                    const NoveltyParams& params) {
  if (selected.empty()) throw ConfigError("novelty needs a non-empty selected set");
  NoveltyIndex index(pool, params);
  // Ranks over the selected set.
  std::vector<std::pair<double, const CandidateEmbedding*>> ranked;
  for (const auto& z : selected) {
    ranked.emplace_back(EmbeddingDistance(x.vector, z.vector, params.metric), &z);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second->id < b.second->id;
  });
  double v = 0.0;
  for (size_t r = 0; r < ranked.size(); ++r) {
    const double w = params.weight == RankWeight::kInverse
                         ? 1.0 / double(r + 1)
                         : std::exp(-double(r + 1));
    const double sigma = index.Density(index.IndexOf(ranked[r].second->id));
    v += std::pow(w, params.alpha) * std::pow(sigma, params.beta) * ranked[r].first;
  }
  return v;
}

std::vector<std::string> NovelSelect(const std::vector<CandidateEmbedding>& pool,
                                     const NoveltyParams& params,
                                     int workers) {
  if (params.budget < 1 || static_cast<size_t>(params.budget) > pool.size()) {
    throw ConfigError("budget must satisfy 1 <= budget <= pool size");
  }
  NoveltyIndex index(pool, params, workers);
  const size_t n = index.size();

  size_t first = 0;
  if (params.seed_policy == SeedPolicy::kMedoid) {
    first = index.Medoid();
  } else {
    Rng rng(params.seed);
    first = static_cast<size_t>(rng.Below(n));
  }

  std::vector<size_t> selected{first};
  std::vector<bool> taken(n, false);
  taken[first] = true;
  std::vector<double> scores(n);
  while (selected.size() < static_cast<size_t>(params.budget)) {
    ParallelFor(n, workers, [&](size_t i) {
      scores[i] = taken[i] ? -1.0 : index.Score(i, selected);
    });
    size_t best = n;
    for (size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      if (best == n || scores[i] > scores[best] ||
          (scores[i] == scores[best] && index.at(i).id < index.at(best).id)) {
        best = i;
      }
    }
    taken[best] = true;
    selected.push_back(best);
  }

  std::vector<std::string> out;
  for (size_t i : selected) out.push_back(index.at(i).id);
  return out;
}

}  // namespace guiact
