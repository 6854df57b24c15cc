#include "guiact/screen_record.h"

#include <set>

#include "guiact/errors.h"
#include "guiact/json_io.h"

namespace guiact {
namespace {

FilterVerdict Drop(DropReason reason, std::string detail) {
  return FilterVerdict{false, reason, std::move(detail)};
}

// Returns the first element-level violation in document order.
std::optional<FilterVerdict> CheckElements(const LayoutNode& node, int width,
                                           int height) {
  if (!node.bounds || node.bounds->Empty()) {
    return Drop(DropReason::kMissingBounds,
                "element '" + node.class_name + "' has no usable bounds");
  }
  if (node.class_name.empty()) {
    return Drop(DropReason::kUndefinedClass, "element without class name");
  }
  const Bounds& b = *node.bounds;
  if (b.left < 0 || b.top < 0 || b.right > width || b.bottom > height) {
    return Drop(DropReason::kBoundsOutOfImage,
                "element '" + node.class_name + "' exceeds the screenshot");
  }
  std::set<std::string> keys;
  for (const auto& [key, value] : node.attributes) {
    if (!keys.insert(key).second) {
      return Drop(DropReason::kDuplicateAttributes,
                  "element '" + node.class_name + "' repeats attribute '" +
                      key + "'");
    }
  }
  for (const auto& child : node.children) {
    if (auto v = CheckElements(child, width, height)) return v;
  }
  return std::nullopt;
}

}  // namespace

std::string_view DropReasonName(DropReason reason) {
  switch (reason) {
    case DropReason::kMissingScreenshot:
      return "MISSING_SCREENSHOT";
    case DropReason::kMalformedTree:
      return "MALFORMED_TREE";
    case DropReason::kMissingBounds:
      return "MISSING_BOUNDS";
    case DropReason::kUndefinedClass:
      return "UNDEFINED_CLASS";
    case DropReason::kBoundsOutOfImage:
      return "BOUNDS_OUT_OF_IMAGE";
    case DropReason::kDuplicateAttributes:
      return "DUPLICATE_ATTRIBUTES";
    case DropReason::kSparse:
      return "SPARSE";
    case DropReason::kDense:
      return "DENSE";
    case DropReason::kInconsistentAction:
      return "INCONSISTENT_ACTION";
  }
  return "UNKNOWN";
}

RawScreenRecord RecordFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("manifest line must be an object");
  RawScreenRecord r;
  r.id = RequireString(j, "id");
  if (auto it = j.find("screenshot"); it != j.end() && it->is_string()) {
    r.screenshot_path = it->get<std::string>();
  }
  if (auto it = j.find("width"); it != j.end() && it->is_number_integer()) {
    r.image_width = it->get<int>();
  }
  if (auto it = j.find("height"); it != j.end() && it->is_number_integer()) {
    r.image_height = it->get<int>();
  }
  auto layout = j.find("layout");
  if (layout == j.end() || layout->is_null()) {
    r.layout_error = "missing layout tree";
  } else {
    try {
      r.layout = LayoutFromJson(*layout);
    } catch (const InputError& e) {
      r.layout_error = e.what();
    }
  }
  if (auto it = j.find("instruction"); it != j.end() && it->is_string()) {
    r.instruction = it->get<std::string>();
  }
  if (auto it = j.find("gt_action"); it != j.end() && !it->is_null()) {
    r.gt_action = *it;
  }
  return r;
}

FilterVerdict RuleFilter(const RawScreenRecord& record,
                         const GrayImage* screenshot,
                         const RuleFilterLimits& limits) {
  if (screenshot == nullptr) {
    return Drop(DropReason::kMissingScreenshot, "screenshot missing or undecodable");
  }
  if (record.image_width > 0 &&
      (screenshot->width != record.image_width ||
       screenshot->height != record.image_height)) {
    return Drop(DropReason::kMissingScreenshot,
                "screenshot size disagrees with the record");
  }
  if (!record.layout) {
    return Drop(DropReason::kMalformedTree, record.layout_error);
  }
  if (auto v = CheckElements(*record.layout, screenshot->width,
                             screenshot->height)) {
    return *v;
  }
  const size_t visible = CountVisible(*record.layout);
  if (visible < limits.min_visible) {
    return Drop(DropReason::kSparse,
                std::to_string(visible) + " visible element(s)");
  }
  if (visible > limits.max_visible) {
    return Drop(DropReason::kDense,
                std::to_string(visible) + " visible element(s)");
  }
  if (record.gt_action) {
    try {
      GroundTruthFromJson(*record.gt_action, screenshot->width,
                          screenshot->height);
    } catch (const InputError& e) {
      return Drop(DropReason::kInconsistentAction, e.what());
    }
  }
  return FilterVerdict{};
}

FilterVerdict RuleFilter(const RawScreenRecord& record,
                         const std::filesystem::path& base_dir,
                         const RuleFilterLimits& limits) {
  if (record.screenshot_path.empty()) return RuleFilter(record, nullptr, limits);
  std::optional<GrayImage> image;
  try {
    image = LoadPgm(base_dir / record.screenshot_path);
  } catch (const InputError&) {
    return RuleFilter(record, nullptr, limits);
  }
  return RuleFilter(record, &*image, limits);
}

}  // namespace guiact
