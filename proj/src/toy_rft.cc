#include "guiact/toy_rft.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "guiact/errors.h"
#include "guiact/numfmt.h"
#include "guiact/rng.h"
#include "json.hpp"

namespace guiact {
namespace {

constexpr uint64_t kTaskStream = 0x7461736bULL;
constexpr uint64_t kStaticStream = 0x73746174ULL;

Raster ScreenRaster(const ScreenSize& s) {
  return Raster{static_cast<double>(s.width), static_cast<double>(s.height)};
}

}  // namespace

TabularPolicy::TabularPolicy(int contexts, int grid_size, double temperature)
    : contexts_(contexts), grid_size_(grid_size), temperature_(temperature) {
  if (contexts < 1 || grid_size < 2 || !(temperature > 0.0)) {
    throw ConfigError("policy needs contexts >= 1, grid >= 2, temperature > 0");
  }
  logits_.assign(static_cast<size_t>(contexts) * cells(), 0.0);
}

std::span<double> TabularPolicy::Logits(int context) {
  return std::span<double>(logits_).subspan(
      static_cast<size_t>(context) * cells(), cells());
}

std::span<const double> TabularPolicy::Logits(int context) const {
  return std::span<const double>(logits_).subspan(
      static_cast<size_t>(context) * cells(), cells());
}

std::vector<double> TabularPolicy::LogProbabilities(int context) const {
  auto z = Logits(context);
  const double max_z = *std::max_element(z.begin(), z.end()) / temperature_;
  double sum = 0.0;
  for (double v : z) sum += std::exp(v / temperature_ - max_z);
  const double log_norm = max_z + std::log(sum);
  std::vector<double> out(z.size());
  for (size_t k = 0; k < z.size(); ++k) out[k] = z[k] / temperature_ - log_norm;
  return out;
}

std::vector<double> TabularPolicy::Probabilities(int context) const {
  auto lp = LogProbabilities(context);
  for (double& v : lp) v = std::exp(v);
  return lp;
}

Point TabularPolicy::CellCenter(int cell) const {
  const int row = cell / grid_size_;
  const int col = cell % grid_size_;
  return Point{(col + 0.5) / grid_size_, (row + 0.5) / grid_size_};
}

bool TabularPolicy::IsFinite() const {
  return std::all_of(logits_.begin(), logits_.end(),
                     [](double v) { return std::isfinite(v); });
}

std::vector<ToyTask> MakeTasks(int contexts, int grid_size, ScreenSize screen,
                               uint64_t seed) {
  TabularPolicy layout(1, grid_size);
  std::vector<ToyTask> tasks;
  for (int c = 0; c < contexts; ++c) {
    Rng rng(DeriveSeed({seed, kTaskStream, static_cast<uint64_t>(c)}));
    const int cell = static_cast<int>(rng.Below(layout.cells()));
    ToyTask task;
    task.context_id = c;
    task.screen = screen;
    task.target_center = layout.CellCenter(cell);
    task.gt.action = Action::Tap(task.target_center);
    tasks.push_back(task);
  }
  return tasks;
}

std::string CellResponseText(const TabularPolicy& policy, const ToyTask& task,
                             int cell) {
  return FormatAction(Action::Tap(policy.CellCenter(cell)),
                      ScreenRaster(task.screen));
}

Rollout RolloutGroup(const TabularPolicy& policy,
                     const TabularPolicy& reference, const ToyTask& task,
                     int group_size, uint64_t seed,
                     const RewardThresholds& thresholds) {
  if (group_size < 2) throw ConfigError("group size must be >= 2");
  const int ctx = task.context_id;
  const auto probs = policy.Probabilities(ctx);
  const auto logp = policy.LogProbabilities(ctx);
  const auto logp_ref = reference.LogProbabilities(ctx);

  Rollout out;
  out.context_id = ctx;
  out.group.sample_id = "context-" + std::to_string(ctx);
  Rng rng(seed);
  for (int i = 0; i < group_size; ++i) {
    const int cell = static_cast<int>(rng.Categorical(probs));
    const ModelResponse response = ParseResponse(
        CellResponseText(policy, task, cell), ResponseMode::kFast);
    const RewardBreakdown b = CompositeReward(
        response, task.gt, ScreenRaster(task.screen), thresholds);
    ResponseRecord rec;
    rec.logp_current = {logp[cell]};
    rec.logp_old = {logp[cell]};
    rec.logp_ref = {logp_ref[cell]};
    rec.reward = b.total;
    out.group.responses.push_back(std::move(rec));
    out.cells.push_back(cell);
    out.breakdowns.push_back(b);
  }
  return out;
}

ResponseGroup GroupAtPolicy(const TabularPolicy& policy,
                            const Rollout& rollout) {
  ResponseGroup g = rollout.group;
  const auto logp = policy.LogProbabilities(rollout.context_id);
  for (size_t i = 0; i < g.responses.size(); ++i) {
    g.responses[i].logp_current = {logp[rollout.cells[i]]};
  }
  return g;
}

std::vector<double> AnalyticPolicyGradient(const TabularPolicy& policy,
                                           const Rollout& rollout,
                                           const GrpoConfig& config) {
  const auto& group = rollout.group;
  const std::vector<double> advantages =
      group.advantages ? *group.advantages : GroupAdvantages(Rewards(group));
  const auto probs = policy.Probabilities(rollout.context_id);
  const auto logp = policy.LogProbabilities(rollout.context_id);
  const double inv_t = 1.0 / policy.temperature();
  const double g = static_cast<double>(group.responses.size());

  // d log pi(a) / d z_k = (1[k = a] - pi_k) / T, so each response contributes
  // coef * (e_a - pi) / T.
  std::vector<double> grad(probs.size(), 0.0);
  for (size_t i = 0; i < group.responses.size(); ++i) {
    const auto& r = group.responses[i];
    const int a = rollout.cells[i];
    const double lc = logp[a];
    const double ratio = std::exp(lc - r.logp_old[0]);
    const double adv = advantages[i];
    const bool clipped = (adv > 0.0 && ratio > 1.0 + config.epsilon) ||
                         (adv < 0.0 && ratio < 1.0 - config.epsilon);
    const double surrogate = clipped ? 0.0 : adv * ratio;
    // d/dlc of (u - log u - 1), u = exp(l_ref - lc), is 1 - u.
    const double u = std::exp(r.logp_ref[0] - lc);
    const double coef = (surrogate - config.beta * (1.0 - u)) / g;
    for (size_t k = 0; k < grad.size(); ++k) {
      grad[k] -= coef * probs[k] * inv_t;
    }
    grad[a] += coef * inv_t;
  }
  return grad;
}

double ExpectedSuccess(const TabularPolicy& policy,
                       const std::vector<ToyTask>& tasks,
                       const RewardThresholds& thresholds) {
  if (tasks.empty()) return 0.0;
  double total = 0.0;
  for (const auto& task : tasks) {
    const auto probs = policy.Probabilities(task.context_id);
    for (int cell = 0; cell < policy.cells(); ++cell) {
      const ModelResponse response = ParseResponse(
          CellResponseText(policy, task, cell), ResponseMode::kFast);
      const RewardBreakdown b = CompositeReward(
          response, task.gt, ScreenRaster(task.screen), thresholds);
      if (b.accuracy == 2) total += probs[cell];
    }
  }
  return total / tasks.size();
}

void ValidateToyConfig(const ToyConfig& c) {
  if (c.contexts < 1) throw ConfigError("contexts must be >= 1");
  if (c.grid_size < 2) throw ConfigError("grid size must be >= 2");
  if (c.group_size < 2) throw ConfigError("group size must be >= 2");
  if (c.steps < 0) throw ConfigError("steps must be >= 0");
  if (!(c.learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (!(c.epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
  if (!(c.beta >= 0.0)) throw ConfigError("beta must be >= 0");
  if (!(c.temperature > 0.0)) throw ConfigError("temperature must be > 0");
  if (c.inner_epochs < 1) throw ConfigError("inner epochs must be >= 1");
  if (c.screen.width < 1 || c.screen.height < 1) {
    throw ConfigError("screen dimensions must be positive");
  }
}

TrainReport Train(const ToyConfig& config) {
  ValidateToyConfig(config);
  const auto tasks =
      MakeTasks(config.contexts, config.grid_size, config.screen, config.seed);
  TabularPolicy policy(config.contexts, config.grid_size, config.temperature);
  const TabularPolicy reference = policy;
  const GrpoConfig grpo{config.epsilon, config.beta, RatioLevel::kToken};

  TrainReport report;
  report.initial_success = ExpectedSuccess(policy, tasks, config.thresholds);

  for (const auto& task : tasks) {
    if (config.static_filtering) {
      const Rollout probe = RolloutGroup(
          policy, reference, task, config.group_size,
          DeriveSeed({config.seed, kStaticStream,
                      static_cast<uint64_t>(task.context_id)}),
          config.thresholds);
      if (!StaticFilterKeeps(Rewards(probe.group))) {
        ++report.static_dropped;
        continue;
      }
    }
    report.active_contexts.push_back(task.context_id);
  }

  for (int step = 0; step < config.steps; ++step) {
    StepStats stats;
    stats.step = step;
    size_t sampled = 0;
    size_t hits = 0;
    double reward_sum = 0.0;

    // Rows are independent, so rollouts and updates per context commute.
    for (int ctx : report.active_contexts) {
      Rollout rollout = RolloutGroup(
          policy, reference, tasks[ctx], config.group_size,
          DeriveSeed({config.seed, static_cast<uint64_t>(step),
                      static_cast<uint64_t>(ctx)}),
          config.thresholds);
      for (const auto& b : rollout.breakdowns) {
        ++sampled;
        reward_sum += b.total;
        if (b.accuracy == 2) ++hits;
      }
      const auto rewards = Rewards(rollout.group);
      if (config.dynamic_filtering && !DynamicFilter(rewards)) {
        ++stats.dropped_groups;
        continue;
      }
      try {
        rollout.group.advantages = GroupAdvantages(rewards);
      } catch (const DegenerateGroupError&) {
        ++stats.degenerate_groups;
        continue;
      }
      ++stats.kept_groups;
      for (int epoch = 0; epoch < config.inner_epochs; ++epoch) {
        if (config.observer) config.observer(step, policy, reference, rollout);
        const auto grad = AnalyticPolicyGradient(policy, rollout, grpo);
        auto logits = policy.Logits(ctx);
        for (size_t k = 0; k < logits.size(); ++k) {
          logits[k] += config.learning_rate * grad[k];
        }
      }
    }
    if (!policy.IsFinite()) throw DivergenceError(step, "non-finite logits");

    stats.mean_reward = sampled ? reward_sum / sampled : 0.0;
    stats.success_rate = sampled ? static_cast<double>(hits) / sampled : 0.0;
    report.degenerate_errors += stats.degenerate_groups;
    report.steps.push_back(stats);
  }

  report.final_success = ExpectedSuccess(policy, tasks, config.thresholds);
  return report;
}

std::string TrainReportCsv(const TrainReport& report) {
  std::ostringstream out;
  out << "step,mean_reward,success_rate,dropped_groups\n";
  for (const auto& s : report.steps) {
    out << s.step << ',' << ShortestDouble(s.mean_reward) << ','
        << ShortestDouble(s.success_rate) << ','
        << (s.dropped_groups + s.degenerate_groups) << '\n';
  }
  return out.str();
}

std::string TrainReportJson(const TrainReport& report,
                            const ToyConfig& config) {
  nlohmann::ordered_json j;
  j["contexts"] = config.contexts;
  j["grid_size"] = config.grid_size;
  j["group_size"] = config.group_size;
  j["steps"] = config.steps;
  j["learning_rate"] = config.learning_rate;
  j["epsilon"] = config.epsilon;
  j["beta"] = config.beta;
  j["seed"] = config.seed;
  j["temperature"] = config.temperature;
  j["inner_epochs"] = config.inner_epochs;
  j["dynamic_filtering"] = config.dynamic_filtering;
  j["static_filtering"] = config.static_filtering;
  j["initial_success"] = report.initial_success;
  j["final_success"] = report.final_success;
  j["static_dropped"] = report.static_dropped;
  j["degenerate_errors"] = report.degenerate_errors;
  int kept = 0;
  int dropped = 0;
  for (const auto& s : report.steps) {
    kept += s.kept_groups;
    dropped += s.dropped_groups;
  }
  j["kept_groups"] = kept;
  j["dropped_groups"] = dropped;
  if (!report.steps.empty()) {
    j["last_step_success_rate"] = report.steps.back().success_rate;
  }
  return j.dump(2) + "\n";
}

}  // namespace guiact
