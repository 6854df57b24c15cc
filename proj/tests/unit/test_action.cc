#include <random>

#include "doctest.h"
#include "guiact/action.h"
#include "guiact/errors.h"
#include "guiact/json_io.h"

using namespace guiact;

TEST_CASE("fast mode accepts a bare tap") {
  ModelResponse r = ParseResponse("tap(100,200)", ResponseMode::kFast);
  REQUIRE(r.format_ok);
  CHECK(r.action->kind == ActionKind::kTap);
  CHECK(r.action->space == CoordSpace::kRaw);
  CHECK(*r.action->point == Point{100, 200});
  CHECK_FALSE(r.think.has_value());
}

TEST_CASE("reasoning mode extracts think and answer") {
  ModelResponse r = ParseResponse(
      "<think>find search</think><answer>text(512,80,hotel)</answer>",
      ResponseMode::kReasoning);
  REQUIRE(r.format_ok);
  CHECK(*r.think == "find search");
  CHECK(r.answer_text == "text(512,80,hotel)");
  CHECK(r.action->kind == ActionKind::kTextInput);
  CHECK(*r.action->point == Point{512, 80});
  CHECK(*r.action->text == "hotel");
}

TEST_CASE("mode discipline") {
  CHECK_FALSE(ParseResponse("tap(100,200)", ResponseMode::kReasoning).format_ok);
  CHECK_FALSE(ParseResponse("<think>x</think><answer>tap(1,2)</answer>",
                            ResponseMode::kFast)
                  .format_ok);
  CHECK_FALSE(ParseResponse("<think>x<answer>tap(1,2)</answer>",
                            ResponseMode::kReasoning)
                  .format_ok);
  CHECK_FALSE(ParseResponse("<think>a</think><answer>tap(1,2)</answer><answer>"
                            "tap(1,2)</answer>",
                            ResponseMode::kReasoning)
                  .format_ok);
  CHECK_FALSE(ParseResponse("<answer>tap(1,2)</answer><think>a</think>",
                            ResponseMode::kReasoning)
                  .format_ok);
  CHECK(ParseResponse("\n <think>\n</think>\n<answer> wait() </answer>\n",
                      ResponseMode::kReasoning)
            .format_ok);
  CHECK_FALSE(ParseResponse("", ResponseMode::kFast).format_ok);
}

TEST_CASE("format failures never carry an action") {
  for (const char* s : {"tap(1)", "tap(1,2,3)", "tap(a,b)", "tap(1,2", "click(1,2)",
                        "scroll(1,2,north)", "text(1,2,)", "call_api(x,close)",
                        "wait(1)", "drag(1,2,3)", "tap(inf,2)", "tap(nan,1)",
                        "tap(1e999,1)", "tap(+1,2)"}) {
    CAPTURE(s);
    ModelResponse r = ParseResponse(s, ResponseMode::kFast);
    CHECK_FALSE(r.format_ok);
    CHECK_FALSE(r.action.has_value());
    CHECK_FALSE(r.reason.empty());
  }
}

TEST_CASE("drag carries both endpoints") {
  auto a = ParseActionCall("drag(10,20,30,40)");
  REQUIRE(a);
  CHECK(a->kind == ActionKind::kDrag);
  CHECK(*a->point == Point{10, 20});
  CHECK(*a->end_point == Point{30, 40});
}

TEST_CASE("argument details") {
  SUBCASE("text keeps commas") {
    auto a = ParseActionCall("text(1, 2, red, green, blue)");
    REQUIRE(a);
    CHECK(*a->text == "red, green, blue");
  }
  SUBCASE("quoted enums") {
    auto s = ParseActionCall("scroll(5,6,\"left\")");
    REQUIRE(s);
    CHECK(*s->direction == Direction::kLeft);
    auto c = ParseActionCall("call_api('com.x', \"kill\")");
    REQUIRE(c);
    CHECK(*c->api_name == "com.x");
    CHECK(*c->operation == ApiOperation::kKill);
  }
  SUBCASE("takeover message is optional") {
    CHECK_FALSE(ParseActionCall("take_over()")->text.has_value());
    CHECK(*ParseActionCall("take_over(need a captcha, sorry)")->text ==
          "need a captcha, sorry");
  }
  SUBCASE("fractional coordinates") {
    CHECK(*ParseActionCall("tap(0.5, 12.25)")->point == Point{0.5, 12.25});
  }
}

TEST_CASE("normalize against the screen") {
  Action tap = *ParseActionCall("tap(500,1000)");
  Action n = NormalizeAction(tap, 1000, 2000);
  CHECK(n.space == CoordSpace::kNormalized);
  CHECK(*n.point == Point{0.5, 0.5});
  CHECK(*NormalizeAction(*ParseActionCall("tap(0,0)"), 720, 1280).point ==
        Point{0, 0});
  try {
    NormalizeAction(*ParseActionCall("tap(1500,100)"), 1000, 2000);
    FAIL("expected a range error");
  } catch (const CoordinateRangeError& e) {
    CHECK(e.field() == "point.x");
  }
  CHECK_THROWS_AS(NormalizeAction(*ParseActionCall("drag(1,1,5,3000)"), 1000, 2000),
                  CoordinateRangeError);
  CHECK_THROWS_AS(NormalizeAction(tap, 0, 100), ConfigError);
  CHECK(NormalizeAction(n, 10, 10) == n);
}

TEST_CASE("canonical formatting") {
  CHECK(FormatAction(Action::Scroll({0.5, 0.5}, Direction::kUp)) ==
        "scroll(500,500,up)");
  CHECK(FormatAction(Action::Simple(ActionKind::kFinish)) == "action_completed()");
  CHECK(FormatAction(Action::Simple(ActionKind::kNoAnswer)) == "no_answer()");
  CHECK(FormatAction(Action::CallApi("com.app", ApiOperation::kOpen)) ==
        "call_api(com.app,open)");
  CHECK(FormatAction(Action::Takeover("log in")) == "take_over(log in)");
  CHECK(FormatAction(Action::Simple(ActionKind::kLongScreenshot)) ==
        "long_screen_shot()");
  CHECK(FormatAction(Action::Tap({0.25, 0.75}), Raster{1080, 2400}) ==
        "tap(270,1800)");
  CHECK(FormatAction(Action::Tap({12.5, 3}, CoordSpace::kRaw)) == "tap(12.5,3)");
}

TEST_CASE("every kind round-trips through its call form") {
  std::vector<Action> samples = {
      Action::Tap({0.1, 0.2}),
      Action::Scroll({0.3, 0.4}, Direction::kDown),
      Action::TextInput({0.5, 0.6}, "hello, world"),
      Action::Simple(ActionKind::kNavigateBack),
      Action::Simple(ActionKind::kNavigateHome),
      Action::LongPress({0.7, 0.8}),
      Action::Simple(ActionKind::kFinish),
      Action::Simple(ActionKind::kWait),
      Action::Simple(ActionKind::kEnter),
      Action::Takeover(),
      Action::Drag({0.1, 0.9}, {0.9, 0.1}),
      Action::CallApi("com.example", ApiOperation::kKill),
      Action::Simple(ActionKind::kScreenshot),
      Action::Simple(ActionKind::kLongScreenshot),
      Action::Simple(ActionKind::kNoAnswer),
  };
  REQUIRE(samples.size() == kAllActionKinds.size());
  for (const Action& a : samples) {
    CAPTURE(FormatAction(a));
    ModelResponse r = ParseResponse(FormatAction(a), ResponseMode::kFast);
    REQUIRE(r.format_ok);
    CHECK(NormalizeAction(*r.action, kCanonicalRaster) == a);
  }
}

TEST_CASE("field discipline") {
  Action a = Action::Tap({0.1, 0.1});
  CHECK(IsWellFormed(a));
  a.direction = Direction::kUp;
  CHECK(*ValidateAction(a) == "unexpected direction");
  Action s = Action::Scroll({0.1, 0.1}, Direction::kUp);
  s.direction.reset();
  CHECK(*ValidateAction(s) == "missing direction");
  CHECK(*ValidateAction(Action::TextInput({0.1, 0.1}, "")) == "missing text");
  CHECK_FALSE(IsWellFormed(Action::Tap({1.5, 0.1})));
  CHECK(IsWellFormed(Action::Tap({1.5, 0.1}, CoordSpace::kRaw)));
  Action api = Action::CallApi("x", ApiOperation::kOpen);
  api.operation.reset();
  CHECK_FALSE(IsWellFormed(api));
}

TEST_CASE("names are bijective") {
  for (ActionKind k : kAllActionKinds) {
    CHECK(*KindFromName(KindName(k)) == k);
    CHECK(*KindFromCallName(CallName(k)) == k);
  }
  CHECK_FALSE(KindFromName("click").has_value());
}

TEST_CASE("action JSON round-trip and validation") {
  Action d = Action::Drag({0.1, 0.2}, {0.3, 0.4});
  CHECK(ActionFromJson(nlohmann::json::parse(ActionToJson(d).dump()),
                       CoordSpace::kNormalized) == d);
  CHECK_THROWS_AS(ActionFromJson(nlohmann::json::parse(R"({"kind":"tap"})"),
                                 CoordSpace::kRaw),
                  InputError);
  CHECK_THROWS_AS(
      ActionFromJson(nlohmann::json::parse(R"({"kind":"wait","point":[1,2]})"),
                     CoordSpace::kRaw),
      InputError);
  GroundTruth gt = GroundTruthFromJson(
      nlohmann::json::parse(R"({"kind":"tap","point":[540,1200]})"), 1080, 2400);
  CHECK(*gt.action.point == Point{0.5, 0.5});
}

TEST_CASE("random garbage never yields a malformed action") {
  std::mt19937_64 gen(11);
  const std::string alphabet = "tapscrolldg(),<>/thinkanswer0123456789.- \n'\"e";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const int len = static_cast<int>(gen() % 40);
    for (int k = 0; k < len; ++k) s += alphabet[gen() % alphabet.size()];
    for (auto mode : {ResponseMode::kFast, ResponseMode::kReasoning}) {
      ModelResponse r = ParseResponse(s, mode);
      if (r.format_ok) {
        REQUIRE(r.action.has_value());
        CHECK(IsWellFormed(*r.action));
      } else {
        CHECK_FALSE(r.action.has_value());
      }
    }
  }
}
