#pragma once

#include <optional>

#include "guiact/action.h"

namespace guiact {

// Radii are fractions of the unit square; boundaries are inclusive.
struct RewardThresholds {
  double tap_radius = 0.14;
  double drag_radius = 0.075;
  double f1_min = 0.5;  // text passes when F1 is strictly greater
  double r_max = 0.14;  // distance-penalty normalizer
};

// Reference action for one step, in normalized coordinates.
struct GroundTruth {
  Action action;
};

// Throws InputError unless the ground truth is well-formed and normalized.
void ValidateGroundTruth(const GroundTruth& gt);

struct RewardBreakdown {
  int format = -1;
  int accuracy = -2;
  double distance = 0.0;
  double total = -3.0;
  // Deviation over its radius when accuracy is +2 and coordinates apply.
  std::optional<double> normalized_distance;
};

int FormatReward(const ModelResponse& response);

// +2 when the kind matches and the kind's extra conditions hold, else -2.
// Both actions must be normalized.
int AccuracyReward(const Action& predicted, const GroundTruth& gt,
                   const RewardThresholds& thresholds = {});

// -2 * deviation / radius for correct coordinate-bearing actions, 0 otherwise.
// Drag averages its two endpoint deviations and uses the drag radius.
double DistanceReward(const Action& predicted, const GroundTruth& gt,
                      int accuracy, const RewardThresholds& thresholds = {});

// Format + accuracy + distance. A response with bad format, or whose
// coordinates fall outside `prediction_raster`, earns accuracy -2 and distance
// 0. `prediction_raster` is the coordinate system the model wrote in.
RewardBreakdown CompositeReward(const ModelResponse& response,
                                const GroundTruth& gt,
                                Raster prediction_raster = kCanonicalRaster,
                                const RewardThresholds& thresholds = {});

}  // namespace guiact
