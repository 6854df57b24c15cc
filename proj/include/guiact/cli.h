#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "guiact/dedup.h"
#include "guiact/dfgrpo.h"
#include "guiact/eval.h"
#include "guiact/novel_select.h"
#include "guiact/reward.h"
#include "guiact/toy_rft.h"

namespace guiact {

inline constexpr const char* kVersion = "0.1.0";

// Every tunable of the command line, with library defaults. Values come from
// defaults, then the --config file, then flags.
struct RunConfig {
  RewardThresholds thresholds;
  DedupThresholds dedup;
  GrpoConfig grpo;
  NoveltyParams novelty;
  ToyConfig toy;
  JudgePolicy judge;
  ResponseMode mode = ResponseMode::kFast;
  int workers = 0;  // 0 = hardware concurrency
};

// Exit codes: 0 success, 1 input error, 2 configuration or usage error.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace guiact
