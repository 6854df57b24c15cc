#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace guiact {

// One sampled response: per-token log-probabilities under the current, the
// rollout (old) and the reference policy, plus its scalar reward.
struct ResponseRecord {
  std::vector<double> logp_current;
  std::vector<double> logp_old;
  std::vector<double> logp_ref;
  double reward = 0.0;
};

struct ResponseGroup {
  std::string sample_id;
  std::vector<ResponseRecord> responses;
  std::optional<std::vector<double>> advantages;
};

// Token: ratio per token. Sequence: one ratio exp(sum of log-ratios) shared by
// every token of a response.
enum class RatioLevel { kToken, kSequence };

struct GrpoConfig {
  double epsilon = 0.2;
  double beta = 0.04;
  RatioLevel ratio_level = RatioLevel::kToken;
};

// Throws InputError on G < 2, ragged or empty sequences, or positive
// log-probabilities.
void ValidateGroup(const ResponseGroup& group);

std::vector<double> Rewards(const ResponseGroup& group);

// (r - mean) / population std. Throws DegenerateGroupError when all rewards
// are equal.
std::vector<double> GroupAdvantages(std::span<const double> rewards);

// k3 estimator u - log(u) - 1 with u = pi_ref / pi_theta.
double KlEstimate(double logp_theta, double logp_ref);

// Keep iff at least one reward is > 0 and at least one is < 0.
bool DynamicFilter(std::span<const double> rewards);

// Keep iff the CPT-policy group is neither entirely > 0 nor entirely < 0.
bool StaticFilterKeeps(std::span<const double> rewards);

struct ScoredSample {
  std::string sample_id;
  std::vector<double> rewards;
};

// Returns the ids of samples that survive static filtering, in input order.
std::vector<std::string> StaticFilter(const std::vector<ScoredSample>& samples);

// Clipped group-relative surrogate minus the KL penalty, averaged over tokens
// and then over the group. Uses group.advantages when present, else computes
// them from the rewards (throwing on a degenerate group).
double SurrogateObjective(const ResponseGroup& group, const GrpoConfig& config);

// Per-token surrogate term min(rA, clip(r)A).
double ClippedTerm(double ratio, double advantage, double epsilon);

struct GroupVerdict {
  std::string sample_id;
  bool kept = false;
  std::optional<double> objective;
  std::optional<std::vector<double>> advantages;
};

struct BatchResult {
  std::vector<GroupVerdict> verdicts;  // sorted by sample id
  std::optional<double> mean_objective;  // over kept groups
  size_t kept = 0;
  size_t dropped = 0;
};

// Applies dynamic filtering and evaluates the objective on kept groups. The
// reduction runs in sample-id order, so results do not depend on input order
// or on `workers`.
BatchResult EvaluateBatch(std::vector<ResponseGroup> groups,
                          const GrpoConfig& config, int workers = 1);

}  // namespace guiact
