#include "guiact/action.h"

#include <charconv>
#include <cmath>
#include <vector>

#include "guiact/errors.h"

namespace guiact {
namespace {

struct KindNames {
  ActionKind kind;
  std::string_view json;
  std::string_view call;
};

constexpr std::array<KindNames, 15> kKindNames = {{
    {ActionKind::kTap, "tap", "tap"},
    {ActionKind::kScroll, "scroll", "scroll"},
    {ActionKind::kTextInput, "text_input", "text"},
    {ActionKind::kNavigateBack, "navigate_back", "navigate_back"},
    {ActionKind::kNavigateHome, "navigate_home", "navigate_home"},
    {ActionKind::kLongPress, "long_press", "long_press"},
    {ActionKind::kFinish, "finish", "action_completed"},
    {ActionKind::kWait, "wait", "wait"},
    {ActionKind::kEnter, "enter", "enter"},
    {ActionKind::kTakeover, "takeover", "take_over"},
    {ActionKind::kDrag, "drag", "drag"},
    {ActionKind::kCallApi, "call_api", "call_api"},
    {ActionKind::kScreenshot, "screenshot", "screen_shot"},
    {ActionKind::kLongScreenshot, "long_screenshot", "long_screen_shot"},
    {ActionKind::kNoAnswer, "no_answer", "no_answer"},
}};

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view StripQuotes(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') &&
      s.back() == s.front()) {
    return Trim(s.substr(1, s.size() - 2));
  }
  return s;
}

std::optional<double> ParseNumber(std::string_view token) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

size_t CountOccurrences(std::string_view haystack, std::string_view needle) {
  size_t count = 0;
  for (size_t pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

bool ContainsEnvelopeTag(std::string_view s) {
  for (auto tag : {kThinkOpen, kThinkClose, kAnswerOpen, kAnswerClose}) {
    if (s.find(tag) != std::string_view::npos) return true;
  }
  return false;
}

// Splits `inner` into exactly `arity` comma-separated arguments. When
// `greedy_last` is set, the final argument absorbs any remaining commas.
std::optional<std::vector<std::string_view>> SplitArgs(std::string_view inner,
                                                       size_t arity,
                                                       bool greedy_last) {
  std::vector<std::string_view> args;
  if (arity == 0) {
    if (!Trim(inner).empty()) return std::nullopt;
    return args;
  }
  std::string_view rest = inner;
  while (args.size() + 1 < arity) {
    size_t comma = rest.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    args.push_back(Trim(rest.substr(0, comma)));
    rest.remove_prefix(comma + 1);
  }
  if (!greedy_last && rest.find(',') != std::string_view::npos) {
    return std::nullopt;
  }
  args.push_back(Trim(rest));
  return args;
}

std::optional<Action> Fail(std::string* reason, std::string message) {
  if (reason != nullptr) *reason = std::move(message);
  return std::nullopt;
}

std::string FormatNumber(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string FormatCoord(double v, double scale, CoordSpace space) {
  if (space == CoordSpace::kRaw) return FormatNumber(v);
  return std::to_string(std::llround(v * scale));
}

}  // namespace

double Distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

Action Action::Tap(Point p, CoordSpace space) {
  Action a;
  a.kind = ActionKind::kTap;
  a.space = space;
  a.point = p;
  return a;
}

Action Action::LongPress(Point p, CoordSpace space) {
  Action a = Tap(p, space);
  a.kind = ActionKind::kLongPress;
  return a;
}

Action Action::Scroll(Point p, Direction d, CoordSpace space) {
  Action a = Tap(p, space);
  a.kind = ActionKind::kScroll;
  a.direction = d;
  return a;
}

Action Action::TextInput(Point p, std::string text, CoordSpace space) {
  Action a = Tap(p, space);
  a.kind = ActionKind::kTextInput;
  a.text = std::move(text);
  return a;
}

Action Action::Drag(Point from, Point to, CoordSpace space) {
  Action a = Tap(from, space);
  a.kind = ActionKind::kDrag;
  a.end_point = to;
  return a;
}

Action Action::CallApi(std::string app, ApiOperation op) {
  Action a;
  a.kind = ActionKind::kCallApi;
  a.api_name = std::move(app);
  a.operation = op;
  return a;
}

Action Action::Takeover(std::optional<std::string> message) {
  Action a;
  a.kind = ActionKind::kTakeover;
  a.text = std::move(message);
  return a;
}

Action Action::Simple(ActionKind kind) {
  Action a;
  a.kind = kind;
  return a;
}

bool RequiresPoint(ActionKind kind) {
  switch (kind) {
    case ActionKind::kTap:
    case ActionKind::kScroll:
    case ActionKind::kTextInput:
    case ActionKind::kLongPress:
    case ActionKind::kDrag:
      return true;
    default:
      return false;
  }
}

bool RequiresEndPoint(ActionKind kind) { return kind == ActionKind::kDrag; }
bool RequiresDirection(ActionKind kind) { return kind == ActionKind::kScroll; }
bool RequiresText(ActionKind kind) { return kind == ActionKind::kTextInput; }
bool AllowsText(ActionKind kind) {
  return kind == ActionKind::kTextInput || kind == ActionKind::kTakeover;
}
bool RequiresApi(ActionKind kind) { return kind == ActionKind::kCallApi; }

std::optional<std::string> ValidateAction(const Action& a) {
  const ActionKind k = a.kind;
  if (RequiresPoint(k) != a.point.has_value()) {
    return RequiresPoint(k) ? "missing point" : "unexpected point";
  }
  if (RequiresEndPoint(k) != a.end_point.has_value()) {
    return RequiresEndPoint(k) ? "missing end point" : "unexpected end point";
  }
  if (RequiresDirection(k) != a.direction.has_value()) {
    return RequiresDirection(k) ? "missing direction" : "unexpected direction";
  }
  if (RequiresText(k) && (!a.text || a.text->empty())) return "missing text";
  if (!AllowsText(k) && a.text) return "unexpected text";
  if (RequiresApi(k) != a.api_name.has_value() ||
      RequiresApi(k) != a.operation.has_value()) {
    return RequiresApi(k) ? "missing api name or operation"
                          : "unexpected api fields";
  }
  if (a.api_name && a.api_name->empty()) return "empty api name";
  for (const auto& p : {a.point, a.end_point}) {
    if (!p) continue;
    if (!std::isfinite(p->x) || !std::isfinite(p->y)) {
      return "non-finite coordinate";
    }
    if (a.space == CoordSpace::kNormalized &&
        (p->x < 0.0 || p->x > 1.0 || p->y < 0.0 || p->y > 1.0)) {
      return "normalized coordinate outside unit square";
    }
  }
  return std::nullopt;
}

std::string_view KindName(ActionKind kind) {
  return kKindNames[static_cast<size_t>(kind)].json;
}

std::optional<ActionKind> KindFromName(std::string_view name) {
  for (const auto& e : kKindNames) {
    if (e.json == name) return e.kind;
  }
  return std::nullopt;
}

std::string_view CallName(ActionKind kind) {
  return kKindNames[static_cast<size_t>(kind)].call;
}

std::optional<ActionKind> KindFromCallName(std::string_view name) {
  for (const auto& e : kKindNames) {
    if (e.call == name) return e.kind;
  }
  return std::nullopt;
}

std::string_view DirectionName(Direction d) {
  switch (d) {
    case Direction::kUp:
      return "up";
    case Direction::kDown:
      return "down";
    case Direction::kLeft:
      return "left";
    case Direction::kRight:
      return "right";
  }
  return "up";
}

std::optional<Direction> DirectionFromName(std::string_view name) {
  for (Direction d :
       {Direction::kUp, Direction::kDown, Direction::kLeft, Direction::kRight}) {
    if (DirectionName(d) == name) return d;
  }
  return std::nullopt;
}

std::string_view OperationName(ApiOperation op) {
  return op == ApiOperation::kOpen ? "open" : "kill";
}

std::optional<ApiOperation> OperationFromName(std::string_view name) {
  if (name == "open") return ApiOperation::kOpen;
  if (name == "kill") return ApiOperation::kKill;
  return std::nullopt;
}

std::string_view ModeName(ResponseMode mode) {
  return mode == ResponseMode::kFast ? "fast" : "reasoning";
}

std::optional<ResponseMode> ModeFromName(std::string_view name) {
  if (name == "fast") return ResponseMode::kFast;
  if (name == "reasoning") return ResponseMode::kReasoning;
  return std::nullopt;
}

std::optional<Action> ParseActionCall(std::string_view call,
                                      std::string* reason) {
  call = Trim(call);
  if (call.empty()) return Fail(reason, "empty action call");

  size_t open = call.find('(');
  if (open == std::string_view::npos) return Fail(reason, "missing '('");
  if (call.back() != ')') return Fail(reason, "missing closing ')'");

  std::string_view name = Trim(call.substr(0, open));
  auto kind = KindFromCallName(name);
  if (!kind) return Fail(reason, "unknown function '" + std::string(name) + "'");

  std::string_view inner = call.substr(open + 1, call.size() - open - 2);
  Action action;
  action.kind = *kind;
  action.space = CoordSpace::kRaw;

  size_t arity = 0;
  bool greedy_last = false;
  switch (*kind) {
    case ActionKind::kTap:
    case ActionKind::kLongPress:
      arity = 2;
      break;
    case ActionKind::kScroll:
      arity = 3;
      break;
    case ActionKind::kTextInput:
      arity = 3;
      greedy_last = true;
      break;
    case ActionKind::kDrag:
      arity = 4;
      break;
    case ActionKind::kCallApi:
      arity = 2;
      break;
    case ActionKind::kTakeover:
      // Message is optional and may contain commas.
      if (auto msg = Trim(inner); !msg.empty()) {
        action.text = std::string(msg);
      }
      return action;
    default:
      arity = 0;
      break;
  }

  auto args = SplitArgs(inner, arity, greedy_last);
  if (!args) {
    return Fail(reason, std::string(name) + " expects " +
                            std::to_string(arity) + " argument(s)");
  }

  auto number = [&](size_t i) -> std::optional<double> {
    return ParseNumber((*args)[i]);
  };
  auto point_at = [&](size_t i) -> std::optional<Point> {
    auto x = number(i);
    auto y = number(i + 1);
    if (!x || !y) return std::nullopt;
    return Point{*x, *y};
  };

  if (RequiresPoint(*kind)) {
    action.point = point_at(0);
    if (!action.point) return Fail(reason, "invalid coordinate");
  }
  switch (*kind) {
    case ActionKind::kScroll: {
      auto d = DirectionFromName(StripQuotes((*args)[2]));
      if (!d) return Fail(reason, "invalid scroll direction");
      action.direction = d;
      break;
    }
    case ActionKind::kTextInput: {
      if ((*args)[2].empty()) return Fail(reason, "empty text argument");
      action.text = std::string((*args)[2]);
      break;
    }
    case ActionKind::kDrag:
      action.end_point = point_at(2);
      if (!action.end_point) return Fail(reason, "invalid drag end point");
      break;
    case ActionKind::kCallApi: {
      auto app = StripQuotes((*args)[0]);
      if (app.empty()) return Fail(reason, "empty api name");
      auto op = OperationFromName(StripQuotes((*args)[1]));
      if (!op) return Fail(reason, "operation must be open or kill");
      action.api_name = std::string(app);
      action.operation = op;
      break;
    }
    default:
      break;
  }
  return action;
}

ModelResponse ParseResponse(std::string_view raw_text, ResponseMode mode) {
  ModelResponse response;
  response.raw_text = std::string(raw_text);

  auto fail = [&](std::string reason) {
    response.format_ok = false;
    response.action.reset();
    response.reason = std::move(reason);
    return response;
  };

  if (Trim(raw_text).empty()) return fail("empty response");

  if (mode == ResponseMode::kFast) {
    if (ContainsEnvelopeTag(raw_text)) {
      return fail("envelope tags are not allowed in fast mode");
    }
    response.answer_text = std::string(Trim(raw_text));
  } else {
    for (auto tag : {kThinkOpen, kThinkClose, kAnswerOpen, kAnswerClose}) {
      size_t n = CountOccurrences(raw_text, tag);
      if (n != 1) {
        return fail(std::string(tag) + (n == 0 ? " missing" : " repeated"));
      }
    }
    const size_t think_open = raw_text.find(kThinkOpen);
    const size_t think_close = raw_text.find(kThinkClose);
    const size_t answer_open = raw_text.find(kAnswerOpen);
    const size_t answer_close = raw_text.find(kAnswerClose);
    if (!(think_open < think_close && think_close < answer_open &&
          answer_open < answer_close)) {
      return fail("envelopes out of order");
    }
    const size_t think_end = think_close + kThinkClose.size();
    const size_t answer_end = answer_close + kAnswerClose.size();
    if (!Trim(raw_text.substr(0, think_open)).empty() ||
        !Trim(raw_text.substr(think_end, answer_open - think_end)).empty() ||
        !Trim(raw_text.substr(answer_end)).empty()) {
      return fail("text outside envelopes");
    }
    const size_t think_body = think_open + kThinkOpen.size();
    response.think =
        std::string(Trim(raw_text.substr(think_body, think_close - think_body)));
    const size_t answer_body = answer_open + kAnswerOpen.size();
    response.answer_text = std::string(
        Trim(raw_text.substr(answer_body, answer_close - answer_body)));
  }

  std::string reason;
  auto action = ParseActionCall(response.answer_text, &reason);
  if (!action) return fail(reason);
  response.action = std::move(action);
  response.format_ok = true;
  response.reason.clear();
  return response;
}

Action NormalizeAction(const Action& action, double width, double height) {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw ConfigError("screen dimensions must be positive");
  }
  if (action.space == CoordSpace::kNormalized) return action;

  Action out = action;
  out.space = CoordSpace::kNormalized;
  auto map = [&](const std::optional<Point>& p, const std::string& field)
      -> std::optional<Point> {
    if (!p) return std::nullopt;
    if (!(p->x >= 0.0 && p->x <= width)) {
      throw CoordinateRangeError(field + ".x", p->x, width);
    }
    if (!(p->y >= 0.0 && p->y <= height)) {
      throw CoordinateRangeError(field + ".y", p->y, height);
    }
    return Point{p->x / width, p->y / height};
  };
  out.point = map(action.point, "point");
  out.end_point = map(action.end_point, "end_point");
  return out;
}

std::string FormatAction(const Action& a, Raster raster) {
  std::string out(CallName(a.kind));
  out += '(';
  auto append_point = [&](const std::optional<Point>& p) {
    out += FormatCoord(p ? p->x : 0.0, raster.width, a.space);
    out += ',';
    out += FormatCoord(p ? p->y : 0.0, raster.height, a.space);
  };
  switch (a.kind) {
    case ActionKind::kTap:
    case ActionKind::kLongPress:
      append_point(a.point);
      break;
    case ActionKind::kScroll:
      append_point(a.point);
      out += ',';
      out += DirectionName(a.direction.value_or(Direction::kUp));
      break;
    case ActionKind::kTextInput:
      append_point(a.point);
      out += ',';
      out += a.text.value_or("");
      break;
    case ActionKind::kDrag:
      append_point(a.point);
      out += ',';
      append_point(a.end_point);
      break;
    case ActionKind::kCallApi:
      out += a.api_name.value_or("");
      out += ',';
      out += OperationName(a.operation.value_or(ApiOperation::kOpen));
      break;
    case ActionKind::kTakeover:
      out += a.text.value_or("");
      break;
    default:
      break;
  }
  out += ')';
  return out;
}

}  // namespace guiact
