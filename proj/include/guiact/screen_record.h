#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "guiact/image.h"
#include "guiact/layout.h"
#include "guiact/reward.h"
#include "json.hpp"

namespace guiact {

struct RawScreenRecord {
  std::string id;
  std::string screenshot_path;
  int image_width = 0;
  int image_height = 0;
  std::optional<LayoutNode> layout;
  std::string layout_error;  // set when the tree could not be parsed
  std::optional<std::string> instruction;
  std::optional<nlohmann::json> gt_action;  // pixel coordinates
};

// Manifest line: {"id", "screenshot", "width", "height", "layout": node,
// "instruction", "gt_action"}. Only a missing id or non-object line throws;
// a broken tree is recorded in layout_error for the rule filter.
RawScreenRecord RecordFromJson(const nlohmann::json& j);

enum class DropReason {
  kMissingScreenshot,
  kMalformedTree,
  kMissingBounds,
  kUndefinedClass,
  kBoundsOutOfImage,
  kDuplicateAttributes,
  kSparse,
  kDense,
  kInconsistentAction,
};

std::string_view DropReasonName(DropReason reason);

struct FilterVerdict {
  bool keep = true;
  std::optional<DropReason> reason;
  std::string detail;
};

struct RuleFilterLimits {
  size_t min_visible = 2;
  size_t max_visible = 100;
};

// Heuristic noise filter. `screenshot` is the decoded image, or null when it
// is missing or could not be decoded.
FilterVerdict RuleFilter(const RawScreenRecord& record,
                         const GrayImage* screenshot,
                         const RuleFilterLimits& limits = {});

// Loads the screenshot relative to `base_dir` and applies RuleFilter.
FilterVerdict RuleFilter(const RawScreenRecord& record,
                         const std::filesystem::path& base_dir,
                         const RuleFilterLimits& limits = {});

}  // namespace guiact
