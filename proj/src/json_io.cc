#include "guiact/json_io.h"

#include <fstream>

#include "guiact/errors.h"

namespace guiact {
namespace {

OrderedJson PointJson(Point p) { return OrderedJson::array({p.x, p.y}); }

Point PointFromJson(const nlohmann::json& j, const char* key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError(std::string(key) + " must be [x, y]");
  }
  return Point{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string RequireString(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw InputError(std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

double RequireNumber(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw InputError(std::string("missing numeric field '") + key + "'");
  }
  return it->get<double>();
}

OrderedJson ActionToJson(const Action& a) {
  OrderedJson j;
  j["kind"] = std::string(KindName(a.kind));
  if (a.point) j["point"] = PointJson(*a.point);
  if (a.end_point) j["end_point"] = PointJson(*a.end_point);
  if (a.direction) j["direction"] = std::string(DirectionName(*a.direction));
  if (a.text) j["text"] = *a.text;
  if (a.api_name) j["api_name"] = *a.api_name;
  if (a.operation) j["operation"] = std::string(OperationName(*a.operation));
  return j;
}

Action ActionFromJson(const nlohmann::json& j, CoordSpace space) {
  if (!j.is_object()) throw InputError("action must be an object");
  const std::string kind_name = RequireString(j, "kind");
  auto kind = KindFromName(kind_name);
  if (!kind) throw InputError("unknown action kind '" + kind_name + "'");
  Action a;
  a.kind = *kind;
  a.space = space;
  if (auto it = j.find("point"); it != j.end()) a.point = PointFromJson(*it, "point");
  if (auto it = j.find("end_point"); it != j.end()) {
    a.end_point = PointFromJson(*it, "end_point");
  }
  if (auto it = j.find("direction"); it != j.end()) {
    auto d = it->is_string() ? DirectionFromName(it->get<std::string>())
                             : std::nullopt;
    if (!d) throw InputError("invalid direction");
    a.direction = d;
  }
  if (auto it = j.find("text"); it != j.end()) {
    if (!it->is_string()) throw InputError("text must be a string");
    a.text = it->get<std::string>();
  }
  if (auto it = j.find("api_name"); it != j.end()) {
    if (!it->is_string()) throw InputError("api_name must be a string");
    a.api_name = it->get<std::string>();
  }
  if (auto it = j.find("operation"); it != j.end()) {
    auto op = it->is_string() ? OperationFromName(it->get<std::string>())
                              : std::nullopt;
    if (!op) throw InputError("operation must be open or kill");
    a.operation = op;
  }
  // Raw coordinates are range-checked at normalization.
  if (auto why = ValidateAction(a)) {
    throw InputError("malformed " + kind_name + " action: " + *why);
  }
  return a;
}

GroundTruth GroundTruthFromJson(const nlohmann::json& action, double width,
                                double height) {
  Action raw = ActionFromJson(action, CoordSpace::kRaw);
  GroundTruth gt{NormalizeAction(raw, width, height)};
  ValidateGroundTruth(gt);
  return gt;
}

OrderedJson ResponseToJson(const ModelResponse& r) {
  OrderedJson j;
  j["format_ok"] = r.format_ok;
  if (r.think) j["think"] = *r.think;
  j["answer"] = r.answer_text;
  j["action"] = r.action ? ActionToJson(*r.action) : OrderedJson(nullptr);
  if (!r.format_ok) j["reason"] = r.reason;
  return j;
}

OrderedJson BreakdownToJson(const RewardBreakdown& b) {
  OrderedJson j;
  j["format"] = b.format;
  j["accuracy"] = b.accuracy;
  j["distance"] = b.distance;
  j["total"] = b.total;
  j["normalized_distance"] =
      b.normalized_distance ? OrderedJson(*b.normalized_distance)
                            : OrderedJson(nullptr);
  return j;
}

ResponseGroup GroupFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("group must be an object");
  ResponseGroup g;
  auto id = j.find("sample_id");
  if (id == j.end()) throw InputError("group missing sample_id");
  g.sample_id = id->is_string() ? id->get<std::string>() : id->dump();
  auto responses = j.find("responses");
  if (responses == j.end() || !responses->is_array()) {
    throw InputError("group " + g.sample_id + " missing responses array");
  }
  auto seq = [&](const nlohmann::json& r, const char* key) {
    auto it = r.find(key);
    if (it == r.end() || !it->is_array()) {
      throw InputError("group " + g.sample_id + ": missing " + key);
    }
    std::vector<double> out;
    for (const auto& v : *it) {
      if (!v.is_number()) throw InputError("group " + g.sample_id + ": non-numeric " + key);
      out.push_back(v.get<double>());
    }
    return out;
  };
  for (const auto& r : *responses) {
    ResponseRecord rec;
    rec.logp_current = seq(r, "logp_current");
    rec.logp_old = seq(r, "logp_old");
    rec.logp_ref = seq(r, "logp_ref");
    rec.reward = RequireNumber(r, "reward");
    g.responses.push_back(std::move(rec));
  }
  if (auto adv = j.find("advantages"); adv != j.end() && !adv->is_null()) {
    g.advantages = adv->get<std::vector<double>>();
  }
  ValidateGroup(g);
  return g;
}

OrderedJson GroupToJson(const ResponseGroup& g) {
  OrderedJson j;
  j["sample_id"] = g.sample_id;
  auto responses = OrderedJson::array();
  for (const auto& r : g.responses) {
    OrderedJson rj;
    rj["logp_current"] = r.logp_current;
    rj["logp_old"] = r.logp_old;
    rj["logp_ref"] = r.logp_ref;
    rj["reward"] = r.reward;
    responses.push_back(rj);
  }
  j["responses"] = responses;
  if (g.advantages) j["advantages"] = *g.advantages;
  return j;
}

std::vector<nlohmann::json> ReadJsonLines(std::istream& in,
                                          const std::string& source) {
  std::vector<nlohmann::json> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<nlohmann::json> ReadJsonLinesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return ReadJsonLines(in, path);
}

}  // namespace guiact
