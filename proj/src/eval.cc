#include "guiact/eval.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "guiact/errors.h"
#include "guiact/json_io.h"
#include "guiact/numfmt.h"
#include "guiact/text_f1.h"

namespace guiact {
namespace {

bool HasCoordinates(const EvalSample& s, const JudgePolicy& policy) {
  if (!RequiresPoint(s.gt.action.kind)) return false;
  if (s.gt.action.kind == ActionKind::kScroll && !s.gt_has_origin) {
    if (!policy.scroll_origin_relaxed) {
      throw ConfigError("sample " + s.id +
                        ": scroll ground truth has no origin; enable the "
                        "scroll-origin relaxation");
    }
    return false;
  }
  return true;
}

// Raw prediction coordinates mapped the same way the reward normalizes them,
// so radius judgments agree with the accuracy reward bit for bit.
struct PredictedPoint {
  Point norm;
  Point px;
};

std::optional<PredictedPoint> Locate(Point raw, const EvalSample& s,
                                     const Raster& raster) {
  if (!(raw.x >= 0.0 && raw.x <= raster.width && raw.y >= 0.0 &&
        raw.y <= raster.height)) {
    return std::nullopt;
  }
  PredictedPoint p;
  p.norm = Point{raw.x / raster.width, raw.y / raster.height};
  const bool native = raster.width == s.screen_width &&
                      raster.height == s.screen_height;
  p.px = native ? raw
                : Point{p.norm.x * s.screen_width, p.norm.y * s.screen_height};
  return p;
}

bool WithinRadius(Point pred_norm, Point gt_norm, const EvalSample& s,
                  double radius, GroundingCriterion criterion) {
  if (criterion == GroundingCriterion::kWidthRadius) {
    const double dx = pred_norm.x - gt_norm.x;
    const double dy = (pred_norm.y - gt_norm.y) * s.screen_height / s.screen_width;
    return std::sqrt(dx * dx + dy * dy) <= radius;
  }
  return Distance(pred_norm, gt_norm) <= radius;
}

std::optional<PixelBox> BoxFromJson(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_array() || it->size() != 4) {
    throw InputError(std::string(key) + " must be [left, top, right, bottom]");
  }
  for (const auto& v : *it) {
    if (!v.is_number()) throw InputError(std::string(key) + " must be numeric");
  }
  PixelBox b{(*it)[0].get<double>(), (*it)[1].get<double>(),
             (*it)[2].get<double>(), (*it)[3].get<double>()};
  if (b.right < b.left || b.bottom < b.top) {
    throw InputError(std::string(key) + " has negative extent");
  }
  return b;
}

}  // namespace

std::string_view CriterionName(GroundingCriterion c) {
  switch (c) {
    case GroundingCriterion::kPointInBBox:
      return "point-in-bbox";
    case GroundingCriterion::kRadius:
      return "radius";
    case GroundingCriterion::kWidthRadius:
      return "width-radius";
  }
  return "radius";
}

std::optional<GroundingCriterion> CriterionFromName(std::string_view name) {
  for (auto c : {GroundingCriterion::kPointInBBox, GroundingCriterion::kRadius,
                 GroundingCriterion::kWidthRadius}) {
    if (CriterionName(c) == name) return c;
  }
  return std::nullopt;
}

Judgment JudgeSample(const EvalSample& s, const JudgePolicy& policy) {
  Judgment j;
  j.id = s.id;
  j.subset = s.subset;
  const Action& gt = s.gt.action;
  const bool coords = HasCoordinates(s, policy);
  const bool use_bbox = policy.criterion == GroundingCriterion::kPointInBBox &&
                        coords && gt.kind != ActionKind::kDrag;
  if (use_bbox && !s.gt_bbox) {
    throw ConfigError("sample " + s.id + " has no gt_bbox for point-in-bbox");
  }
  if (coords) j.grd_ok = false;

  const ModelResponse response = ParseResponse(s.prediction, s.mode);
  if (!response.format_ok) return j;

  const Raster raster = policy.prediction_raster.value_or(
      Raster{double(s.screen_width), double(s.screen_height)});
  Action pred = *response.action;

  // A tap on a declared back arrow is a back navigation.
  if (gt.kind == ActionKind::kNavigateBack && s.back_arrow_bbox &&
      pred.kind == ActionKind::kTap) {
    auto p = Locate(*pred.point, s, raster);
    if (p && s.back_arrow_bbox->Contains(p->px.x, p->px.y)) {
      pred = Action::Simple(ActionKind::kNavigateBack);
    }
  }

  j.type_ok = pred.kind == gt.kind;

  if (coords && pred.point) {
    auto start = Locate(*pred.point, s, raster);
    bool ok = start.has_value();
    if (ok && gt.kind == ActionKind::kDrag) {
      auto end = pred.end_point ? Locate(*pred.end_point, s, raster)
                                : std::nullopt;
      ok = end &&
           WithinRadius(start->norm, *gt.point, s,
                        policy.thresholds.drag_radius, policy.criterion) &&
           WithinRadius(end->norm, *gt.end_point, s,
                        policy.thresholds.drag_radius, policy.criterion);
    } else if (ok && use_bbox) {
      ok = s.gt_bbox->Contains(start->px.x, start->px.y);
    } else if (ok) {
      ok = WithinRadius(start->norm, *gt.point, s, policy.thresholds.tap_radius,
                        policy.criterion);
    }
    j.grd_ok = ok;
  }

  bool content_ok = true;
  if (j.type_ok) {
    switch (gt.kind) {
      case ActionKind::kScroll:
        content_ok = pred.direction == gt.direction;
        break;
      case ActionKind::kTextInput:
        content_ok = TextF1(pred.text.value_or(""), gt.text.value_or("")) >
                     policy.thresholds.f1_min;
        break;
      case ActionKind::kCallApi:
        content_ok =
            pred.api_name == gt.api_name && pred.operation == gt.operation;
        break;
      default:
        break;
    }
  }
  j.sr_ok = j.type_ok && j.grd_ok.value_or(true) && content_ok;
  return j;
}

std::vector<SubsetMetrics> ComputeMetrics(std::vector<Judgment> judgments) {
  if (judgments.empty()) throw InputError("no judged samples");
  std::sort(judgments.begin(), judgments.end(),
            [](const Judgment& a, const Judgment& b) { return a.id < b.id; });
  std::map<std::string, SubsetMetrics> by_subset;
  SubsetMetrics overall;
  overall.subset = std::string(kOverallSubset);
  for (const auto& j : judgments) {
    for (SubsetMetrics* m : {&by_subset[j.subset], &overall}) {
      ++m->n;
      m->type_hits += j.type_ok;
      m->sr_hits += j.sr_ok;
      if (j.grd_ok) {
        ++m->grd_n;
        m->grd_hits += *j.grd_ok;
      }
    }
  }
  std::vector<SubsetMetrics> out;
  for (auto& [name, m] : by_subset) {
    m.subset = name;
    out.push_back(m);
  }
  out.push_back(overall);
  return out;
}

std::optional<ReportFormat> ReportFormatFromName(std::string_view name) {
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "jsonl") return ReportFormat::kJsonl;
  return std::nullopt;
}

std::string RenderReport(const std::vector<SubsetMetrics>& metrics,
                         ReportFormat format) {
  if (metrics.empty()) throw InputError("no metrics to render");
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kMarkdown:
      out << "| Subset | Type | Grd | SR |\n";
      out << "|---|---:|---:|---:|\n";
      for (const auto& m : metrics) {
        auto grd = m.grd_acc();
        out << "| " << m.subset << " | " << FixedDouble(100.0 * m.type_acc(), 1)
            << " | " << (grd ? FixedDouble(100.0 * *grd, 1) : "n/a") << " | "
            << FixedDouble(100.0 * m.sr(), 1) << " |\n";
      }
      break;
    case ReportFormat::kCsv:
      out << "subset,n,type_acc,grd_n,grd_acc,sr\n";
      for (const auto& m : metrics) {
        auto grd = m.grd_acc();
        out << m.subset << ',' << m.n << ',' << ShortestDouble(m.type_acc())
            << ',' << m.grd_n << ',' << (grd ? ShortestDouble(*grd) : "")
            << ',' << ShortestDouble(m.sr()) << '\n';
      }
      break;
    case ReportFormat::kJsonl:
      for (const auto& m : metrics) {
        OrderedJson j;
        j["subset"] = m.subset;
        j["n"] = m.n;
        j["type_acc"] = m.type_acc();
        j["grd_n"] = m.grd_n;
        auto grd = m.grd_acc();
        j["grd_acc"] = grd ? OrderedJson(*grd) : OrderedJson(nullptr);
        j["sr"] = m.sr();
        j["type_hits"] = m.type_hits;
        j["grd_hits"] = m.grd_hits;
        j["sr_hits"] = m.sr_hits;
        out << j.dump() << '\n';
      }
      break;
  }
  return out.str();
}

std::vector<SubsetMetrics> ParseMetricsCsv(std::string_view csv) {
  std::vector<SubsetMetrics> out;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.size() != 6) throw InputError("bad metrics CSV row: " + line);
    SubsetMetrics m;
    m.subset = cells[0];
    m.n = std::stoul(cells[1]);
    m.grd_n = std::stoul(cells[3]);
    m.type_hits = static_cast<size_t>(std::llround(std::stod(cells[2]) * m.n));
    m.grd_hits = cells[4].empty()
                     ? 0
                     : static_cast<size_t>(std::llround(std::stod(cells[4]) * m.grd_n));
    m.sr_hits = static_cast<size_t>(std::llround(std::stod(cells[5]) * m.n));
    out.push_back(m);
  }
  return out;
}

EvalSample EvalSampleFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("eval sample must be an object");
  EvalSample s;
  s.id = j.contains("id") && !j["id"].is_string() ? j["id"].dump()
                                                   : RequireString(j, "id");
  s.subset = j.contains("subset") ? RequireString(j, "subset") : "all";
  auto screen = j.find("screen");
  if (screen == j.end() || !screen->is_object()) {
    throw InputError("sample " + s.id + " missing screen");
  }
  s.screen_width = static_cast<int>(RequireNumber(*screen, "width"));
  s.screen_height = static_cast<int>(RequireNumber(*screen, "height"));
  if (s.screen_width < 1 || s.screen_height < 1) {
    throw InputError("sample " + s.id + " has invalid screen size");
  }
  auto gt = j.find("gt");
  if (gt == j.end()) throw InputError("sample " + s.id + " missing gt");
  nlohmann::json gt_json = *gt;
  if (gt_json.is_object() && gt_json.value("kind", "") == "scroll" &&
      !gt_json.contains("point")) {
    // Direction-only scroll; the origin check is relaxed by policy.
    s.gt_has_origin = false;
    gt_json["point"] = {0, 0};
  }
  try {
    s.gt = GroundTruthFromJson(gt_json, s.screen_width, s.screen_height);
  } catch (const InputError& e) {
    throw InputError("sample " + s.id + ": " + e.what());
  }
  s.gt_bbox = BoxFromJson(j, "gt_bbox");
  s.back_arrow_bbox = BoxFromJson(j, "back_arrow_bbox");
  for (const auto& box : {s.gt_bbox, s.back_arrow_bbox}) {
    if (box && (box->left < 0 || box->top < 0 || box->right > s.screen_width ||
                box->bottom > s.screen_height)) {
      throw InputError("sample " + s.id + ": bbox outside the screen");
    }
  }
  if (auto it = j.find("mode"); it != j.end()) {
    auto mode = it->is_string() ? ModeFromName(it->get<std::string>())
                                : std::nullopt;
    if (!mode) throw InputError("sample " + s.id + ": invalid mode");
    s.mode = *mode;
  }
  if (auto it = j.find("prediction"); it != j.end() && it->is_string()) {
    s.prediction = it->get<std::string>();
  }
  return s;
}

}  // namespace guiact
