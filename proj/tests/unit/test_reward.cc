#include <cmath>
#include <random>

#include "doctest.h"
#include "guiact/errors.h"
#include "guiact/reward.h"
#include "guiact/text_f1.h"
#include "reward_cases.h"

using namespace guiact;

namespace {

ModelResponse Fast(const std::string& s) {
  return ParseResponse(s, ResponseMode::kFast);
}

GroundTruth Gt(Action a) { return GroundTruth{std::move(a)}; }

}  // namespace

TEST_CASE("format reward") {
  CHECK(FormatReward(Fast("tap(1,2)")) == 1);
  CHECK(FormatReward(Fast("tap(1,2")) == -1);
  CHECK(FormatReward(ParseResponse("<think>a<answer>wait()</answer>",
                                   ResponseMode::kReasoning)) == -1);
}

TEST_CASE("accuracy reward per kind") {
  const RewardThresholds t;
  CHECK(AccuracyReward(Action::Tap({0.5, 0.5}), Gt(Action::Tap({0.5, 0.5})), t) == 2);
  CHECK(AccuracyReward(Action::Tap({0.64, 0.5}), Gt(Action::Tap({0.5, 0.5})), t) == 2);
  CHECK(AccuracyReward(Action::Scroll({0.5, 0.5}, Direction::kUp),
                       Gt(Action::Scroll({0.5, 0.5}, Direction::kDown)), t) == -2);
  CHECK(AccuracyReward(Action::TextInput({0.5, 0.5}, "hello world"),
                       Gt(Action::TextInput({0.5, 0.5}, "hello there world")),
                       t) == 2);
  CHECK(AccuracyReward(Action::Drag({0.10, 0.10}, {0.90, 0.90}),
                       Gt(Action::Drag({0.10, 0.18}, {0.90, 0.90})), t) == -2);
  CHECK(AccuracyReward(Action::Tap({0.5, 0.5}),
                       Gt(Action::LongPress({0.5, 0.5})), t) == -2);
  CHECK(AccuracyReward(Action::Takeover("x"), Gt(Action::Takeover()), t) == 2);
}

TEST_CASE("accuracy threshold is inclusive with no slack") {
  const RewardThresholds t;
  // Exactly on the radius along an axis where the subtraction is exact.
  CHECK(AccuracyReward(Action::Tap({0.0, 0.5}), Gt(Action::Tap({0.14, 0.5})), t) == 2);
  CHECK(AccuracyReward(Action::Tap({0.0, 0.5}),
                       Gt(Action::Tap({0.14 + 1e-9, 0.5})), t) == -2);
}

TEST_CASE("token F1") {
  CHECK(TextF1("hello world", "hello world") == 1.0);
  CHECK(TextF1("hello world", "hello there world") == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(TextF1("", "abc") == 0.0);
  CHECK(TextF1("price of hotel", "hotel price") == doctest::Approx(0.8));
  CHECK(TextF1("a a b", "a b b") == doctest::Approx(2.0 / 3.0));
  CHECK(TextF1("Hotel", "hotel") == 0.0);
  // Scripts without spaces fall back to code points.
  CHECK(TextF1("\xe9\x85\x92\xe5\xba\x97", "\xe9\x85\x92\xe5\xba\x97\xe4\xbb\xb7") ==
        doctest::Approx(0.8));
}

TEST_CASE("distance reward") {
  const RewardThresholds t;
  const GroundTruth gt = Gt(Action::Tap({0.5, 0.5}));
  CHECK(DistanceReward(Action::Tap({0.9, 0.9}), gt, -2, t) == 0.0);
  CHECK(DistanceReward(Action::Tap({0.5, 0.5}), gt, 2, t) == 0.0);
  CHECK(DistanceReward(Action::Tap({0.5, 0.57}), gt, 2, t) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(DistanceReward(Action::Tap({0.0, 0.5}), Gt(Action::Tap({0.14, 0.5})), 2, t) ==
        -2.0);
  CHECK(DistanceReward(Action::Simple(ActionKind::kWait),
                       Gt(Action::Simple(ActionKind::kWait)), 2, t) == 0.0);
}

TEST_CASE("composite examples") {
  const GroundTruth gt = Gt(Action::Tap({0.5, 0.5}));
  auto b = CompositeReward(Fast("tap(500,500)"), gt);
  CHECK(b.format == 1);
  CHECK(b.accuracy == 2);
  CHECK(b.distance == 0.0);
  CHECK(b.total == 3.0);
  REQUIRE(b.normalized_distance);
  CHECK(*b.normalized_distance == 0.0);

  b = CompositeReward(Fast("wait()"), gt);
  CHECK(b.total == -1.0);
  CHECK_FALSE(b.normalized_distance);

  b = CompositeReward(Fast("tap me please"), gt);
  CHECK(b.format == -1);
  CHECK(b.accuracy == -2);
  CHECK(b.total == -3.0);

  // Off-raster coordinates can never be accurate.
  b = CompositeReward(Fast("tap(1001,500)"), gt);
  CHECK(b.format == 1);
  CHECK(b.accuracy == -2);
}

TEST_CASE("ground truth validation") {
  CHECK_THROWS_AS(ValidateGroundTruth(Gt(Action::Tap({5, 5}, CoordSpace::kRaw))),
                  InputError);
  Action bad = Action::Tap({0.5, 0.5});
  bad.point.reset();
  CHECK_THROWS_AS(ValidateGroundTruth(Gt(bad)), InputError);
}

TEST_CASE("conformance fixture") {
  const auto cases = guiact::testing::LoadRewardCases();
  REQUIRE(cases.size() >= 60);
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const RewardBreakdown got = guiact::testing::Score(c);
    CHECK(got.format == c.expected.format);
    CHECK(got.accuracy == c.expected.accuracy);
    CHECK(got.distance == c.expected.distance);
    CHECK(got.total == c.expected.total);
  }
}

TEST_CASE("monotone in distance along a ray") {
  const GroundTruth gt = Gt(Action::Tap({0.4, 0.6}));
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  for (int k = 0; k < 200; ++k) {
    const double a = angle(gen);
    double prev = 4.0;
    for (int s = 0; s <= 140; ++s) {
      const double r = s * 0.001;
      const Action p = Action::Tap({0.4 + r * std::cos(a), 0.6 + r * std::sin(a)});
      const double acc = AccuracyReward(p, gt, {});
      const double total = 1 + acc + DistanceReward(p, gt, int(acc), {});
      CHECK(total <= prev);
      prev = total;
    }
  }
}

TEST_CASE("translation invariance") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0.2, 0.8);
  std::uniform_real_distribution<double> off(-0.2, 0.2);
  for (int k = 0; k < 500; ++k) {
    const Point c{u(gen), u(gen)};
    const Point p{c.x + off(gen), c.y + off(gen)};
    const Point shift{0.125, -0.0625};
    const auto a = AccuracyReward(Action::Tap(p), Gt(Action::Tap(c)), {});
    const auto b = AccuracyReward(Action::Tap({p.x + shift.x, p.y + shift.y}),
                                  Gt(Action::Tap({c.x + shift.x, c.y + shift.y})),
                                  {});
    CHECK(a == b);
  }
}
