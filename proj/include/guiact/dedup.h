#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace guiact {

struct DedupItem {
  std::string id;
  std::optional<uint64_t> image_hash;
  std::optional<std::string> layout_fingerprint;
  // Instruction-action pair embedding.
  std::optional<std::vector<double>> embedding;
};

struct DedupThresholds {
  int hamming_max = 5;
  double cosine_min = 0.95;
};

// Criteria that linked a cluster: "image", "layout", "embedding".
struct DuplicateCluster {
  std::string representative;
  std::vector<std::string> members;  // sorted, includes the representative
  std::vector<std::string> criteria;  // sorted, unique
};

struct DedupResult {
  std::vector<std::string> kept;  // sorted
  std::vector<DuplicateCluster> clusters;  // size > 1 only, by representative
};

double CosineSimilarity(const std::vector<double>& a,
                        const std::vector<double>& b);

// Links pairs whose hashes differ in at most hamming_max bits, whose layout
// fingerprints are identical, or whose embeddings have cosine >= cosine_min,
// then closes the links transitively. Each cluster keeps its lexicographically
// smallest id. Throws DimensionMismatchError on ragged embeddings and
// InputError on duplicate ids.
DedupResult Dedup(const std::vector<DedupItem>& items,
                  const DedupThresholds& thresholds = {}, int workers = 1);

}  // namespace guiact
