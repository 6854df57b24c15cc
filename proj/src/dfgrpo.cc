#include "guiact/dfgrpo.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "guiact/errors.h"
#include "guiact/parallel.h"

namespace guiact {

void ValidateGroup(const ResponseGroup& group) {
  if (group.responses.size() < 2) {
    throw InputError("group " + group.sample_id + " has fewer than 2 responses");
  }
  for (const auto& r : group.responses) {
    const size_t len = r.logp_current.size();
    if (len == 0 || r.logp_old.size() != len || r.logp_ref.size() != len) {
      throw InputError("group " + group.sample_id +
                       ": log-prob sequences must be non-empty and equal length");
    }
    for (const auto* seq : {&r.logp_current, &r.logp_old, &r.logp_ref}) {
      for (double lp : *seq) {
        if (!std::isfinite(lp) || lp > 0.0) {
          throw InputError("group " + group.sample_id +
                           ": log-probs must be finite and <= 0");
        }
      }
    }
    if (!std::isfinite(r.reward)) {
      throw InputError("group " + group.sample_id + ": non-finite reward");
    }
  }
  if (group.advantages && group.advantages->size() != group.responses.size()) {
    throw InputError("group " + group.sample_id + ": advantages size mismatch");
  }
}

std::vector<double> Rewards(const ResponseGroup& group) {
  std::vector<double> out;
  out.reserve(group.responses.size());
  for (const auto& r : group.responses) out.push_back(r.reward);
  return out;
}

std::vector<double> GroupAdvantages(std::span<const double> rewards) {
  if (rewards.size() < 2) {
    throw InputError("advantages need at least 2 rewards");
  }
  const double n = static_cast<double>(rewards.size());
  const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
  double ss = 0.0;
  for (double r : rewards) ss += (r - mean) * (r - mean);
  const double std_dev = std::sqrt(ss / n);
  const bool all_equal =
      std::all_of(rewards.begin(), rewards.end(),
                  [&](double r) { return r == rewards.front(); });
  if (all_equal || !(std_dev > 0.0)) {
    throw DegenerateGroupError("all rewards in the group are equal");
  }
  std::vector<double> out;
  out.reserve(rewards.size());
  for (double r : rewards) out.push_back((r - mean) / std_dev);
  return out;
}

double KlEstimate(double logp_theta, double logp_ref) {
  // u - log(u) - 1 with log(u) = d; expm1 keeps precision near u = 1.
  const double d = logp_ref - logp_theta;
  return std::expm1(d) - d;
}

bool DynamicFilter(std::span<const double> rewards) {
  const auto pos = std::count_if(rewards.begin(), rewards.end(),
                                 [](double r) { return r > 0.0; });
  const auto neg = std::count_if(rewards.begin(), rewards.end(),
                                 [](double r) { return r < 0.0; });
  const auto g = static_cast<long>(rewards.size());
  return pos > 0 && pos < g && neg > 0 && neg < g;
}

bool StaticFilterKeeps(std::span<const double> rewards) {
  const bool all_correct = std::all_of(rewards.begin(), rewards.end(),
                                       [](double r) { return r > 0.0; });
  const bool all_wrong = std::all_of(rewards.begin(), rewards.end(),
                                     [](double r) { return r < 0.0; });
  return !all_correct && !all_wrong;
}

std::vector<std::string> StaticFilter(const std::vector<ScoredSample>& samples) {
  std::vector<std::string> kept;
  for (const auto& s : samples) {
    if (StaticFilterKeeps(s.rewards)) kept.push_back(s.sample_id);
  }
  return kept;
}

double ClippedTerm(double ratio, double advantage, double epsilon) {
  const double clipped = std::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon);
  return std::min(ratio * advantage, clipped * advantage);
}

double SurrogateObjective(const ResponseGroup& group, const GrpoConfig& config) {
  ValidateGroup(group);
  const std::vector<double> advantages =
      group.advantages ? *group.advantages : GroupAdvantages(Rewards(group));

  double total = 0.0;
  for (size_t i = 0; i < group.responses.size(); ++i) {
    const auto& r = group.responses[i];
    const size_t len = r.logp_current.size();
    double seq_log_ratio = 0.0;
    if (config.ratio_level == RatioLevel::kSequence) {
      for (size_t l = 0; l < len; ++l) {
        seq_log_ratio += r.logp_current[l] - r.logp_old[l];
      }
    }
    double sum = 0.0;
    for (size_t l = 0; l < len; ++l) {
      const double log_ratio = config.ratio_level == RatioLevel::kToken
                                   ? r.logp_current[l] - r.logp_old[l]
                                   : seq_log_ratio;
      sum += ClippedTerm(std::exp(log_ratio), advantages[i], config.epsilon) -
             config.beta * KlEstimate(r.logp_current[l], r.logp_ref[l]);
    }
    total += sum / static_cast<double>(len);
  }
  return total / static_cast<double>(group.responses.size());
}

BatchResult EvaluateBatch(std::vector<ResponseGroup> groups,
                          const GrpoConfig& config, int workers) {
  std::sort(groups.begin(), groups.end(),
            [](const ResponseGroup& a, const ResponseGroup& b) {
              return a.sample_id < b.sample_id;
            });
  for (const auto& g : groups) ValidateGroup(g);

  BatchResult result;
  result.verdicts.resize(groups.size());
  ParallelFor(groups.size(), workers, [&](size_t i) {
    GroupVerdict& v = result.verdicts[i];
    v.sample_id = groups[i].sample_id;
    v.kept = DynamicFilter(Rewards(groups[i]));
    if (v.kept) {
      ResponseGroup g = groups[i];
      if (!g.advantages) g.advantages = GroupAdvantages(Rewards(g));
      v.advantages = g.advantages;
      v.objective = SurrogateObjective(g, config);
    }
  });

  double sum = 0.0;
  for (const auto& v : result.verdicts) {
    if (v.kept) {
      ++result.kept;
      sum += *v.objective;
    } else {
      ++result.dropped;
    }
  }
  if (result.kept > 0) result.mean_objective = sum / result.kept;
  return result;
}

}  // namespace guiact
