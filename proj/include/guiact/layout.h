#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace guiact {

// Pixel rectangle [left, right] x [top, bottom].
struct Bounds {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;

  bool Empty() const { return right <= left || bottom <= top; }
  bool operator==(const Bounds&) const = default;
};

// One UI hierarchy element. Attributes are kept as an ordered list so repeated
// keys survive parsing and can be rejected by the rule filter.
struct LayoutNode {
  std::string class_name;
  std::optional<Bounds> bounds;
  std::string text;
  std::vector<std::pair<std::string, std::string>> attributes;
  bool visible = true;
  std::vector<LayoutNode> children;
};

// Node JSON: {"class": str, "bounds": [l,t,r,b], "text": str,
//             "attributes": [[key, value], ...], "visible": bool,
//             "children": [node, ...]}
// Only "class"/"bounds" absence is tolerated (the rule filter reports it);
// anything structurally wrong throws InputError.
LayoutNode LayoutFromJson(const nlohmann::json& j);
nlohmann::ordered_json LayoutToJson(const LayoutNode& node);

// Depth-first class-name skeleton, e.g. "Frame[Linear[Text,Button]]". Text,
// bounds and attributes do not participate.
std::string LayoutFingerprint(const LayoutNode& root);

size_t CountNodes(const LayoutNode& root);
size_t CountVisible(const LayoutNode& root);

}  // namespace guiact
