#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "guiact/action.h"
#include "guiact/reward.h"
#include "json.hpp"

namespace guiact {

// Closed pixel rectangle: edges count as inside.
struct PixelBox {
  double left = 0;
  double top = 0;
  double right = 0;
  double bottom = 0;

  bool Contains(double x, double y) const {
    return x >= left && x <= right && y >= top && y <= bottom;
  }
  bool operator==(const PixelBox&) const = default;
};

struct EvalSample {
  std::string id;
  std::string subset;
  int screen_width = 0;
  int screen_height = 0;
  GroundTruth gt;
  // False when a scroll ground truth carries only a direction.
  bool gt_has_origin = true;
  std::optional<PixelBox> gt_bbox;
  std::optional<PixelBox> back_arrow_bbox;
  std::string prediction;
  ResponseMode mode = ResponseMode::kFast;
};

enum class GroundingCriterion { kPointInBBox, kRadius, kWidthRadius };

std::string_view CriterionName(GroundingCriterion c);
std::optional<GroundingCriterion> CriterionFromName(std::string_view name);

struct JudgePolicy {
  GroundingCriterion criterion = GroundingCriterion::kRadius;
  bool scroll_origin_relaxed = false;
  RewardThresholds thresholds;
  // Coordinate system of predictions; the sample's screen when unset.
  std::optional<Raster> prediction_raster;
};

struct Judgment {
  std::string id;
  std::string subset;
  bool type_ok = false;
  std::optional<bool> grd_ok;  // set only for coordinate-bearing ground truth
  bool sr_ok = false;
};

// Throws ConfigError when the policy needs a bbox the sample lacks, or a
// scroll origin the sample lacks.
Judgment JudgeSample(const EvalSample& sample, const JudgePolicy& policy);

struct SubsetMetrics {
  std::string subset;  // "overall" for the micro-averaged row
  size_t n = 0;
  size_t type_hits = 0;
  size_t grd_n = 0;
  size_t grd_hits = 0;
  size_t sr_hits = 0;

  double type_acc() const { return n ? double(type_hits) / n : 0.0; }
  std::optional<double> grd_acc() const {
    if (grd_n == 0) return std::nullopt;
    return double(grd_hits) / grd_n;
  }
  double sr() const { return n ? double(sr_hits) / n : 0.0; }
};

inline constexpr std::string_view kOverallSubset = "overall";

// Per-subset rows sorted by subset name, then the overall row. Throws
// InputError on an empty input.
std::vector<SubsetMetrics> ComputeMetrics(std::vector<Judgment> judgments);

enum class ReportFormat { kMarkdown, kCsv, kJsonl };

std::optional<ReportFormat> ReportFormatFromName(std::string_view name);

// Markdown shows percentages to one decimal; CSV and JSONL keep full
// precision.
std::string RenderReport(const std::vector<SubsetMetrics>& metrics,
                         ReportFormat format);

// Inverse of the CSV rendering.
std::vector<SubsetMetrics> ParseMetricsCsv(std::string_view csv);

// Ground-truth line: {"id", "subset", "screen": {"width", "height"},
// "gt": action (pixels), "gt_bbox": [l,t,r,b], "back_arrow_bbox": [l,t,r,b],
// "mode": "fast"|"reasoning", "prediction": optional inline prediction}.
EvalSample EvalSampleFromJson(const nlohmann::json& j);

}  // namespace guiact
