#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace guiact {

// The unified mobile action space.
enum class ActionKind {
  kTap,
  kScroll,
  kTextInput,
  kNavigateBack,
  kNavigateHome,
  kLongPress,
  kFinish,
  kWait,
  kEnter,
  kTakeover,
  kDrag,
  kCallApi,
  kScreenshot,
  kLongScreenshot,
  kNoAnswer,
};

inline constexpr std::array<ActionKind, 15> kAllActionKinds = {
    ActionKind::kTap,        ActionKind::kScroll,       ActionKind::kTextInput,
    ActionKind::kNavigateBack, ActionKind::kNavigateHome, ActionKind::kLongPress,
    ActionKind::kFinish,     ActionKind::kWait,         ActionKind::kEnter,
    ActionKind::kTakeover,   ActionKind::kDrag,         ActionKind::kCallApi,
    ActionKind::kScreenshot, ActionKind::kLongScreenshot, ActionKind::kNoAnswer,
};

enum class Direction { kUp, kDown, kLeft, kRight };
enum class ApiOperation { kOpen, kKill };

// Whether an action's points are fractions of the screen or values in some
// raster (pixels, or the 1000x1000 canonical grid) awaiting normalization.
enum class CoordSpace { kNormalized, kRaw };

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

double Distance(Point a, Point b);

struct Action {
  ActionKind kind = ActionKind::kWait;
  CoordSpace space = CoordSpace::kNormalized;
  std::optional<Point> point;      // start point for drag
  std::optional<Point> end_point;  // drag only
  std::optional<Direction> direction;
  std::optional<std::string> text;  // text input, or takeover message
  std::optional<std::string> api_name;
  std::optional<ApiOperation> operation;

  bool operator==(const Action&) const = default;

  static Action Tap(Point p, CoordSpace space = CoordSpace::kNormalized);
  static Action LongPress(Point p, CoordSpace space = CoordSpace::kNormalized);
  static Action Scroll(Point p, Direction d,
                       CoordSpace space = CoordSpace::kNormalized);
  static Action TextInput(Point p, std::string text,
                          CoordSpace space = CoordSpace::kNormalized);
  static Action Drag(Point from, Point to,
                     CoordSpace space = CoordSpace::kNormalized);
  static Action CallApi(std::string app, ApiOperation op);
  static Action Takeover(std::optional<std::string> message = std::nullopt);
  // Any kind that carries no payload.
  static Action Simple(ActionKind kind);
};

// Per-kind field requirements.
bool RequiresPoint(ActionKind kind);
bool RequiresEndPoint(ActionKind kind);
bool RequiresDirection(ActionKind kind);
bool RequiresText(ActionKind kind);
bool AllowsText(ActionKind kind);
bool RequiresApi(ActionKind kind);

// Returns a description of the first violated field rule, or nullopt when the
// action carries exactly the fields its kind demands. Normalized actions must
// also keep their points inside the unit square.
std::optional<std::string> ValidateAction(const Action& action);
inline bool IsWellFormed(const Action& action) {
  return !ValidateAction(action).has_value();
}

// Stable snake_case identifiers used in JSON files ("tap", "text_input", ...).
std::string_view KindName(ActionKind kind);
std::optional<ActionKind> KindFromName(std::string_view name);
// Function names of the call grammar ("tap", "text", "action_completed", ...).
std::string_view CallName(ActionKind kind);
std::optional<ActionKind> KindFromCallName(std::string_view name);
std::string_view DirectionName(Direction d);
std::optional<Direction> DirectionFromName(std::string_view name);
std::string_view OperationName(ApiOperation op);
std::optional<ApiOperation> OperationFromName(std::string_view name);

enum class ResponseMode { kFast, kReasoning };

std::string_view ModeName(ResponseMode mode);
std::optional<ResponseMode> ModeFromName(std::string_view name);

struct ModelResponse {
  std::string raw_text;
  std::optional<std::string> think;
  std::string answer_text;
  std::optional<Action> action;  // raw coordinates, as written by the model
  bool format_ok = false;
  std::string reason;  // empty when format_ok
};

// Parses a single action call such as "scroll(500, 500, up)". Coordinates are
// kept as written and tagged CoordSpace::kRaw. On failure returns nullopt and
// stores a diagnostic in *reason when given.
std::optional<Action> ParseActionCall(std::string_view call,
                                      std::string* reason = nullptr);

// kFast accepts exactly one bare action call. kReasoning requires
// <think>...</think><answer>call</answer>, each tag exactly once, with only
// whitespace outside the envelopes.
ModelResponse ParseResponse(std::string_view raw_text, ResponseMode mode);

struct Raster {
  double width = 1000.0;
  double height = 1000.0;
};

inline constexpr Raster kCanonicalRaster{1000.0, 1000.0};

// Maps raw coordinates on a width x height raster into the unit square.
// Throws CoordinateRangeError naming the field when a coordinate is outside
// [0, width] x [0, height]. Already-normalized actions are returned unchanged.
Action NormalizeAction(const Action& action, double width, double height);
inline Action NormalizeAction(const Action& action, Raster raster) {
  return NormalizeAction(action, raster.width, raster.height);
}

// Emits the canonical call syntax. Normalized points are scaled onto `raster`
// and rounded to integers; raw points are written as-is.
std::string FormatAction(const Action& action,
                         Raster raster = kCanonicalRaster);

}  // namespace guiact
