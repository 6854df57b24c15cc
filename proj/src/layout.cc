#include "guiact/layout.h"

#include "guiact/errors.h"

namespace guiact {
namespace {

void AppendEscaped(std::string& out, const std::string& name) {
  for (char c : name) {
    if (c == '[' || c == ']' || c == ',' || c == '\\') out += '\\';
    out += c;
  }
}

void AppendFingerprint(std::string& out, const LayoutNode& node) {
  AppendEscaped(out, node.class_name);
  if (node.children.empty()) return;
  out += '[';
  for (size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) out += ',';
    AppendFingerprint(out, node.children[i]);
  }
  out += ']';
}

}  // namespace

LayoutNode LayoutFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("layout node must be an object");
  LayoutNode node;
  if (auto it = j.find("class"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw InputError("layout class must be a string");
    node.class_name = it->get<std::string>();
  }
  if (auto it = j.find("bounds"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != 4) {
      throw InputError("layout bounds must be [left, top, right, bottom]");
    }
    for (const auto& v : *it) {
      if (!v.is_number_integer()) {
        throw InputError("layout bounds must be integers");
      }
    }
    node.bounds = Bounds{(*it)[0].get<int>(), (*it)[1].get<int>(),
                         (*it)[2].get<int>(), (*it)[3].get<int>()};
  }
  if (auto it = j.find("text"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw InputError("layout text must be a string");
    node.text = it->get<std::string>();
  }
  if (auto it = j.find("visible"); it != j.end()) {
    if (!it->is_boolean()) throw InputError("layout visible must be a bool");
    node.visible = it->get<bool>();
  }
  if (auto it = j.find("attributes"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw InputError("layout attributes must be an array");
    for (const auto& kv : *it) {
      if (!kv.is_array() || kv.size() != 2 || !kv[0].is_string() ||
          !kv[1].is_string()) {
        throw InputError("layout attribute must be [key, value] strings");
      }
      node.attributes.emplace_back(kv[0].get<std::string>(),
                                   kv[1].get<std::string>());
    }
  }
  if (auto it = j.find("children"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw InputError("layout children must be an array");
    for (const auto& child : *it) node.children.push_back(LayoutFromJson(child));
  }
  return node;
}

nlohmann::ordered_json LayoutToJson(const LayoutNode& node) {
  nlohmann::ordered_json j;
  j["class"] = node.class_name;
  if (node.bounds) {
    j["bounds"] = {node.bounds->left, node.bounds->top, node.bounds->right,
                   node.bounds->bottom};
  }
  if (!node.text.empty()) j["text"] = node.text;
  if (!node.attributes.empty()) {
    auto attrs = nlohmann::ordered_json::array();
    for (const auto& [k, v] : node.attributes) attrs.push_back({k, v});
    j["attributes"] = attrs;
  }
  if (!node.visible) j["visible"] = false;
  if (!node.children.empty()) {
    auto kids = nlohmann::ordered_json::array();
    for (const auto& c : node.children) kids.push_back(LayoutToJson(c));
    j["children"] = kids;
  }
  return j;
}

std::string LayoutFingerprint(const LayoutNode& root) {
  std::string out;
  AppendFingerprint(out, root);
  return out;
}

size_t CountNodes(const LayoutNode& root) {
  size_t n = 1;
  for (const auto& c : root.children) n += CountNodes(c);
  return n;
}

size_t CountVisible(const LayoutNode& root) {
  size_t n = root.visible ? 1 : 0;
  for (const auto& c : root.children) n += CountVisible(c);
  return n;
}

}  // namespace guiact
