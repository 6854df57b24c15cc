#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "guiact/dfgrpo.h"
#include "guiact/errors.h"

using namespace guiact;

namespace {

ResponseRecord OneToken(double cur, double old, double ref, double reward) {
  return ResponseRecord{{cur}, {old}, {ref}, reward};
}

}  // namespace

TEST_CASE("group advantages") {
  auto a = GroupAdvantages(std::vector<double>{3, -3});
  CHECK(a == std::vector<double>{1, -1});
  a = GroupAdvantages(std::vector<double>{3, 3, -3, -3});
  CHECK(a == std::vector<double>{1, 1, -1, -1});
  a = GroupAdvantages(std::vector<double>{3, 1, -1, -3});
  CHECK(a[0] == doctest::Approx(3 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(a[1] == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK(a[3] == doctest::Approx(-3 / std::sqrt(5.0)).epsilon(1e-14));
  CHECK_THROWS_AS(GroupAdvantages(std::vector<double>{2, 2, 2}), DegenerateGroupError);
  CHECK_THROWS_AS(GroupAdvantages(std::vector<double>{1}), InputError);
}

TEST_CASE("advantages are standardized") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int k = 0; k < 500; ++k) {
    std::vector<double> r(2 + gen() % 15);
    for (auto& x : r) x = u(gen);
    auto a = GroupAdvantages(r);
    double mean = 0, var = 0;
    for (double x : a) mean += x;
    mean /= a.size();
    for (double x : a) var += (x - mean) * (x - mean);
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::abs(std::sqrt(var / a.size()) - 1) < 1e-9);
  }
}

TEST_CASE("k3 KL estimate") {
  CHECK(KlEstimate(-1.3, -1.3) == 0.0);
  CHECK(KlEstimate(-2.0, -1.0) == doctest::Approx(std::exp(1.0) - 2).epsilon(1e-14));
  CHECK(KlEstimate(-1.0, -2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-20, 0);
  for (int k = 0; k < 10000; ++k) {
    const double a = u(gen), b = u(gen);
    const double kl = KlEstimate(a, b);
    CHECK(kl >= 0.0);
    if (a != b) CHECK(kl > 0.0);
  }
}

TEST_CASE("filters") {
  CHECK(DynamicFilter(std::vector<double>{3, -1, 1}));
  CHECK_FALSE(DynamicFilter(std::vector<double>{-1, -1, -1}));
  CHECK_FALSE(DynamicFilter(std::vector<double>{1, 3, 2.5}));
  CHECK_FALSE(StaticFilterKeeps(std::vector<double>{3, 3, 3}));
  CHECK_FALSE(StaticFilterKeeps(std::vector<double>{-3, -1, -1}));
  CHECK(StaticFilterKeeps(std::vector<double>{3, -1, 1}));
  auto kept = StaticFilter({{"a", {3, 3}}, {"b", {3, -1}}, {"c", {-1, -3}}});
  CHECK(kept == std::vector<std::string>{"b"});
}

TEST_CASE("filter consistency on the reward codomain") {
  // Composite rewards are never zero, so the two predicates coincide there
  // and every dynamically kept group has a well-defined advantage.
  std::mt19937_64 gen(8);
  const double values[] = {-3, -1, 1, 1.5, 2.25, 3};
  for (int k = 0; k < 2000; ++k) {
    std::vector<double> r(2 + gen() % 7);
    for (auto& x : r) x = values[gen() % 6];
    CHECK(DynamicFilter(r) == StaticFilterKeeps(r));
    if (DynamicFilter(r)) CHECK_NOTHROW(GroupAdvantages(r));
  }
}

TEST_CASE("clipped term saturates") {
  const double eps = 0.2;
  CHECK(ClippedTerm(1.5, 1, eps) == doctest::Approx(1.2));
  CHECK(ClippedTerm(1.3, 2, eps) == ClippedTerm(5.0, 2, eps));
  CHECK(ClippedTerm(0.5, -1, eps) == ClippedTerm(0.1, -1, eps));
  // Unclipped branch wins on the other side.
  CHECK(ClippedTerm(0.5, 1, eps) == doctest::Approx(0.5));
  CHECK(ClippedTerm(1.5, -1, eps) == doctest::Approx(-1.5));
}

TEST_CASE("surrogate objective examples") {
  GrpoConfig cfg;
  ResponseGroup g{"s", {OneToken(-1, -1, -1, 3), OneToken(-2, -2, -2, -3)}, {}};
  CHECK(SurrogateObjective(g, cfg) == doctest::Approx(0.0));

  // Ratios 1.5 and 1, advantages [1, -1], beta 0.
  cfg.beta = 0;
  ResponseGroup h{"s",
                  {OneToken(std::log(0.6), std::log(0.4), -1, 1),
                   OneToken(-1, -1, -1, -1)},
                  std::vector<double>{1, -1}};
  CHECK(SurrogateObjective(h, cfg) == doctest::Approx(0.1).epsilon(1e-12));

  // KL contribution of one token with logp_cur - logp_ref = -1.
  cfg.beta = 0.04;
  ResponseGroup k{"s", {OneToken(-2, -2, -1, 1), OneToken(-1, -1, -1, -1)},
                  std::vector<double>{1, -1}};
  const double expected = ((1 - 0.04 * (std::exp(1.0) - 2)) + (-1)) / 2;
  CHECK(SurrogateObjective(k, cfg) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sequence-level ratio") {
  GrpoConfig cfg;
  cfg.beta = 0;
  cfg.ratio_level = RatioLevel::kSequence;
  ResponseRecord r{{-1.0, -1.0}, {-1.1, -1.1}, {-1, -1}, 1};
  ResponseGroup g{"s", {r, OneToken(-1, -1, -1, -1)}, std::vector<double>{1, -1}};
  // exp(0.2) > 1.2, so both tokens use the clipped ratio.
  CHECK(SurrogateObjective(g, cfg) == doctest::Approx((1.2 - 1) / 2));
  cfg.ratio_level = RatioLevel::kToken;
  CHECK(SurrogateObjective(g, cfg) == doctest::Approx((std::exp(0.1) - 1) / 2));
}

TEST_CASE("group validation") {
  ResponseGroup g{"s", {OneToken(-1, -1, -1, 1)}, {}};
  CHECK_THROWS_AS(ValidateGroup(g), InputError);
  g.responses.push_back(ResponseRecord{{-1, -1}, {-1}, {-1}, 0});
  CHECK_THROWS_AS(ValidateGroup(g), InputError);
  g.responses.back() = OneToken(0.5, -1, -1, 0);
  CHECK_THROWS_AS(ValidateGroup(g), InputError);
  ResponseGroup flat{"s", {OneToken(-1, -1, -1, 1), OneToken(-1, -1, -1, 1)}, {}};
  CHECK_THROWS_AS(SurrogateObjective(flat, {}), DegenerateGroupError);
}

TEST_CASE("batch evaluation is order and worker independent") {
  auto lines = guiact::testing::LoadJsonLines("groups_1k.jsonl");
  std::vector<ResponseGroup> groups;
  for (const auto& j : lines) groups.push_back(GroupFromJson(j));
  const BatchResult one = EvaluateBatch(groups, {}, 1);
  std::reverse(groups.begin(), groups.end());
  const BatchResult many = EvaluateBatch(groups, {}, 8);
  REQUIRE(one.mean_objective);
  CHECK(*one.mean_objective == *many.mean_objective);
  CHECK(one.kept == many.kept);
  CHECK(one.kept + one.dropped == 1000);
  CHECK(std::is_sorted(one.verdicts.begin(), one.verdicts.end(),
                       [](const auto& a, const auto& b) {
                         return a.sample_id < b.sample_id;
                       }));
}
