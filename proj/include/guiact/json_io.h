#pragma once

#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "guiact/action.h"
#include "guiact/dfgrpo.h"
#include "guiact/reward.h"
#include "json.hpp"

namespace guiact {

using OrderedJson = nlohmann::ordered_json;

// Action JSON: {"kind": "tap", "point": [x, y], "end_point": [x, y],
// "direction": "up", "text": "...", "api_name": "...", "operation": "open"}.
// Coordinates are written as stored; the caller decides their space.
OrderedJson ActionToJson(const Action& action);
// Throws InputError on unknown kinds or fields that break the kind's rules.
Action ActionFromJson(const nlohmann::json& j, CoordSpace space);

// Ground-truth actions are stored in pixels of their screen and normalized on
// load. Throws InputError (including out-of-screen coordinates).
GroundTruth GroundTruthFromJson(const nlohmann::json& action, double width,
                                double height);

OrderedJson ResponseToJson(const ModelResponse& response);
OrderedJson BreakdownToJson(const RewardBreakdown& b);

ResponseGroup GroupFromJson(const nlohmann::json& j);
OrderedJson GroupToJson(const ResponseGroup& group);

// Reads one JSON value per non-blank line. Throws InputError naming the line.
std::vector<nlohmann::json> ReadJsonLines(std::istream& in,
                                          const std::string& source = "input");
std::vector<nlohmann::json> ReadJsonLinesFile(const std::string& path);

// Typed field accessors that throw InputError naming the missing field.
std::string RequireString(const nlohmann::json& j, const char* key);
double RequireNumber(const nlohmann::json& j, const char* key);

}  // namespace guiact
