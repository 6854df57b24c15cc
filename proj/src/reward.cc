#include "guiact/reward.h"

#include "guiact/errors.h"
#include "guiact/text_f1.h"

namespace guiact {
namespace {

bool Within(Point p, Point c, double radius) { return Distance(p, c) <= radius; }

}  // namespace

void ValidateGroundTruth(const GroundTruth& gt) {
  if (gt.action.space != CoordSpace::kNormalized) {
    throw InputError("ground truth must be normalized");
  }
  if (auto why = ValidateAction(gt.action)) {
    throw InputError("malformed ground truth: " + *why);
  }
}

int FormatReward(const ModelResponse& response) {
  return response.format_ok ? 1 : -1;
}

int AccuracyReward(const Action& predicted, const GroundTruth& gt,
                   const RewardThresholds& t) {
  const Action& ref = gt.action;
  if (predicted.kind != ref.kind) return -2;
  bool ok = true;
  switch (ref.kind) {
    case ActionKind::kTap:
    case ActionKind::kLongPress:
      ok = Within(*predicted.point, *ref.point, t.tap_radius);
      break;
    case ActionKind::kScroll:
      ok = Within(*predicted.point, *ref.point, t.tap_radius) &&
           predicted.direction == ref.direction;
      break;
    case ActionKind::kTextInput:
      ok = Within(*predicted.point, *ref.point, t.tap_radius) &&
           TextF1(predicted.text.value_or(""), ref.text.value_or("")) >
               t.f1_min;
      break;
    case ActionKind::kDrag:
      ok = Within(*predicted.point, *ref.point, t.drag_radius) &&
           Within(*predicted.end_point, *ref.end_point, t.drag_radius);
      break;
    case ActionKind::kCallApi:
      ok = predicted.api_name == ref.api_name &&
           predicted.operation == ref.operation;
      break;
    default:
      break;
  }
  return ok ? 2 : -2;
}

namespace {

std::optional<double> NormalizedDeviation(const Action& predicted,
                                          const GroundTruth& gt,
                                          const RewardThresholds& t) {
  const Action& ref = gt.action;
  if (predicted.kind != ref.kind || !predicted.point || !ref.point) {
    return std::nullopt;
  }
  if (ref.kind == ActionKind::kDrag) {
    const double mean = 0.5 * (Distance(*predicted.point, *ref.point) +
                               Distance(*predicted.end_point, *ref.end_point));
    return mean / t.drag_radius;
  }
  return Distance(*predicted.point, *ref.point) / t.r_max;
}

}  // namespace

double DistanceReward(const Action& predicted, const GroundTruth& gt,
                      int accuracy, const RewardThresholds& t) {
  if (accuracy != 2) return 0.0;
  auto dev = NormalizedDeviation(predicted, gt, t);
  return dev ? -2.0 * *dev : 0.0;
}

RewardBreakdown CompositeReward(const ModelResponse& response,
                                const GroundTruth& gt, Raster raster,
                                const RewardThresholds& t) {
  RewardBreakdown out;
  out.format = FormatReward(response);
  if (response.format_ok && response.action) {
    std::optional<Action> normalized;
    try {
      normalized = NormalizeAction(*response.action, raster);
    } catch (const CoordinateRangeError&) {
      // Off-screen coordinates cannot be correct.
    }
    if (normalized) {
      out.accuracy = AccuracyReward(*normalized, gt, t);
      out.distance = DistanceReward(*normalized, gt, out.accuracy, t);
      if (out.accuracy == 2) {
        out.normalized_distance = NormalizedDeviation(*normalized, gt, t);
      }
    }
  }
  out.total = out.format + out.accuracy + out.distance;
  return out;
}

}  // namespace guiact
