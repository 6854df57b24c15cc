#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "guiact/dfgrpo.h"
#include "guiact/reward.h"

namespace guiact {

// A single-step "screen bandit": each context shows one target, the policy
// taps one of grid_size^2 cell centers and is scored by the composite reward.

struct ScreenSize {
  int width = 1080;
  int height = 2400;
};

struct ToyTask {
  int context_id = 0;
  ScreenSize screen;
  Point target_center;
  GroundTruth gt;
};

// Softmax policy over grid cells, one row of logits per context.
class TabularPolicy {
 public:
  TabularPolicy(int contexts, int grid_size, double temperature = 1.0);

  int contexts() const { return contexts_; }
  int grid_size() const { return grid_size_; }
  int cells() const { return grid_size_ * grid_size_; }
  double temperature() const { return temperature_; }

  std::span<double> Logits(int context);
  std::span<const double> Logits(int context) const;

  // softmax(logits / temperature) and its logarithm.
  std::vector<double> Probabilities(int context) const;
  std::vector<double> LogProbabilities(int context) const;

  // Normalized center of a cell, row-major.
  Point CellCenter(int cell) const;

  bool IsFinite() const;

  bool operator==(const TabularPolicy&) const = default;

 private:
  int contexts_;
  int grid_size_;
  double temperature_;
  std::vector<double> logits_;
};

// Each context targets the center of a seeded random cell.
std::vector<ToyTask> MakeTasks(int contexts, int grid_size, ScreenSize screen,
                               uint64_t seed);

// The model output for tapping `cell` on the task's screen.
std::string CellResponseText(const TabularPolicy& policy, const ToyTask& task,
                             int cell);

struct Rollout {
  int context_id = 0;
  ResponseGroup group;
  std::vector<int> cells;
  std::vector<RewardBreakdown> breakdowns;
};

// Samples `group_size` cells from the policy. Each response is one token whose
// current/old log-prob is the policy's and whose ref log-prob comes from
// `reference`. Deterministic in `seed`.
Rollout RolloutGroup(const TabularPolicy& policy,
                     const TabularPolicy& reference, const ToyTask& task,
                     int group_size, uint64_t seed,
                     const RewardThresholds& thresholds = {});

// The rollout's group with logp_current recomputed under `policy`.
ResponseGroup GroupAtPolicy(const TabularPolicy& policy,
                            const Rollout& rollout);

// Gradient of SurrogateObjective(GroupAtPolicy(policy, rollout)) with respect
// to the logits of the rollout's context. Advantages come from the group when
// set, otherwise from its rewards.
std::vector<double> AnalyticPolicyGradient(const TabularPolicy& policy,
                                           const Rollout& rollout,
                                           const GrpoConfig& config);

// Exact probability of an accurate tap, averaged over tasks.
double ExpectedSuccess(const TabularPolicy& policy,
                       const std::vector<ToyTask>& tasks,
                       const RewardThresholds& thresholds = {});

// Called before every gradient step with the live policy and the rollout it
// is about to be updated on.
using TrainObserver = std::function<void(int step, const TabularPolicy& policy,
                                         const TabularPolicy& reference,
                                         const Rollout& rollout)>;

struct ToyConfig {
  int contexts = 5;
  int grid_size = 5;
  int group_size = 8;
  int steps = 500;
  double learning_rate = 0.5;
  double epsilon = 0.2;
  double beta = 0.04;
  uint64_t seed = 7;
  double temperature = 1.0;
  int inner_epochs = 1;
  bool dynamic_filtering = true;
  bool static_filtering = false;
  ScreenSize screen;
  RewardThresholds thresholds;
  TrainObserver observer;
};

// Throws ConfigError on non-positive sizes or rates.
void ValidateToyConfig(const ToyConfig& config);

struct StepStats {
  int step = 0;
  double mean_reward = 0.0;
  double success_rate = 0.0;  // fraction of sampled taps with accuracy +2
  int kept_groups = 0;
  int dropped_groups = 0;
  int degenerate_groups = 0;  // only without dynamic filtering

  bool operator==(const StepStats&) const = default;
};

struct TrainReport {
  std::vector<StepStats> steps;
  double initial_success = 0.0;  // exact, before any update
  double final_success = 0.0;    // exact, after the last update
  int static_dropped = 0;
  int degenerate_errors = 0;
  std::vector<int> active_contexts;

  bool operator==(const TrainReport&) const = default;
};

// Rollout -> dual filter -> advantages -> gradient ascent, `steps` times.
// The reference policy is the initial (uniform) policy. Throws DivergenceError
// if the logits become non-finite.
TrainReport Train(const ToyConfig& config);

// CSV time series and JSON summary renderings of a report.
std::string TrainReportCsv(const TrainReport& report);
std::string TrainReportJson(const TrainReport& report, const ToyConfig& config);

}  // namespace guiact
