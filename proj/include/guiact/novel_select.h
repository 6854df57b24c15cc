#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace guiact {

struct CandidateEmbedding {
  std::string id;
  std::vector<double> vector;
};

enum class DistanceMetric { kEuclidean, kCosine };
// Weight of the selected point with 1-based distance rank r: 1/r or exp(-r).
enum class RankWeight { kInverse, kExponential };
enum class SeedPolicy { kMedoid, kRandom };

struct NoveltyParams {
  double alpha = 1.0;
  double beta = 0.5;
  int k = 10;       // neighbors for the density factor
  int budget = 1;
  DistanceMetric metric = DistanceMetric::kEuclidean;
  RankWeight weight = RankWeight::kInverse;
  SeedPolicy seed_policy = SeedPolicy::kMedoid;
  uint64_t seed = 0;  // used by SeedPolicy::kRandom
};

// Precomputes pairwise distances and per-point density over a fixed pool.
class NoveltyIndex {
 public:
  // Throws ConfigError when k or the weights are invalid for the pool, and
  // DimensionMismatchError/InputError on ragged, non-finite or duplicate ids.
  NoveltyIndex(std::vector<CandidateEmbedding> pool, const NoveltyParams& params,
               int workers = 1);

  size_t size() const { return pool_.size(); }
  const CandidateEmbedding& at(size_t i) const { return pool_[i]; }
  size_t IndexOf(const std::string& id) const;

  double Distance(size_t i, size_t j) const { return dist_[i * size() + j]; }
  // Mean distance from point j to its k nearest other pool points.
  double Density(size_t j) const { return density_[j]; }

  // Sum over z in `selected` of w(rank)^alpha * density(z)^beta * d(x, z),
  // ranks taken over `selected` sorted by ascending distance from x (ties by
  // id). Throws ConfigError when `selected` is empty.
  double Score(size_t x, std::span<const size_t> selected) const;

  // Minimal total distance to the pool; ties go to the smaller id.
  size_t Medoid() const;

  const NoveltyParams& params() const { return params_; }

 private:
  double RankWeightValue(size_t rank) const;

  std::vector<CandidateEmbedding> pool_;
  NoveltyParams params_;
  std::vector<double> dist_;
  std::vector<double> density_;
};

double EmbeddingDistance(const std::vector<double>& a,
                         const std::vector<double>& b, DistanceMetric metric);

// Novelty of `x` against the selected set, with density measured over `pool`.
double NoveltyScore(const CandidateEmbedding& x,
                    const std::vector<CandidateEmbedding>& selected,
                    const std::vector<CandidateEmbedding>& pool,
                    const NoveltyParams& params);

// Greedy selection: seeds with the medoid (or a seeded random point), then
// repeatedly appends the highest-scoring candidate, ties broken by smaller
// id, until `budget` ids are chosen. Throws ConfigError when budget is not in
// [1, pool size].
std::vector<std::string> NovelSelect(const std::vector<CandidateEmbedding>& pool,
                                     const NoveltyParams& params,
                                     int workers = 1);

}  // namespace guiact
