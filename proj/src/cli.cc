#include "guiact/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "guiact/errors.h"
#include "guiact/image.h"
#include "guiact/json_io.h"
#include "guiact/parallel.h"
#include "guiact/screen_record.h"

namespace guiact {
namespace {

namespace fs = std::filesystem;

struct Paths {
  std::string input = "-";
  std::string gt;
  std::string pred;
  std::string manifest;
  std::string embeddings;
  std::string image_root;
  std::string out = "-";
  std::string aux;  // secondary output (clusters, judgments, summary, kept)
};

struct Flags {
  std::string mode;  // empty: per-sample mode where the file has one
  std::string raster = "screen";
  std::string ratio_level = "token";
  std::string metric = "euclidean";
  std::string weight = "inverse";
  std::string seed_policy = "medoid";
  std::string criterion = "radius";
  std::string format = "markdown";
  std::string screen;
  bool plain = false;
  bool no_dynamic_filter = false;
  bool static_filter = false;
};

std::string ReadAll(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<nlohmann::json> ReadJsonLinesFrom(const std::string& path) {
  if (path == "-") return ReadJsonLines(std::cin, "stdin");
  return ReadJsonLinesFile(path);
}

void WriteTo(const std::string& path, const std::string& text,
             std::ostream& out) {
  if (path.empty()) return;
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

std::optional<Raster> ParseRaster(const std::string& text) {
  if (text.empty() || text == "screen") return std::nullopt;
  const size_t x = text.find('x');
  if (x == std::string::npos) throw ConfigError("raster must be WxH or 'screen'");
  try {
    const double w = std::stod(text.substr(0, x));
    const double h = std::stod(text.substr(x + 1));
    if (!(w > 0) || !(h > 0)) throw ConfigError("raster must be positive");
    return Raster{w, h};
  } catch (const std::logic_error&) {
    throw ConfigError("raster must be WxH or 'screen'");
  }
}

std::optional<ResponseMode> ModeOverride(const Flags& flags) {
  if (flags.mode.empty()) return std::nullopt;
  auto m = ModeFromName(flags.mode);
  if (!m) throw ConfigError("mode must be fast or reasoning");
  return m;
}

std::string IdOf(const nlohmann::json& j) {
  auto it = j.find("id");
  if (it == j.end()) throw InputError("record without id");
  return it->is_string() ? it->get<std::string>() : it->dump();
}

// id -> prediction text.
std::map<std::string, std::string> LoadPredictions(const std::string& path) {
  std::map<std::string, std::string> preds;
  for (const auto& j : ReadJsonLinesFrom(path)) {
    if (!j.is_object()) throw InputError("prediction line must be an object");
    const std::string id = IdOf(j);
    if (!preds.emplace(id, RequireString(j, "prediction")).second) {
      throw InputError("duplicate prediction id '" + id + "'");
    }
  }
  return preds;
}

std::map<std::string, EvalSample> LoadSamples(const std::string& path) {
  std::map<std::string, EvalSample> samples;
  for (const auto& j : ReadJsonLinesFile(path)) {
    EvalSample s = EvalSampleFromJson(j);
    const std::string id = s.id;
    if (!samples.emplace(id, std::move(s)).second) {
      throw InputError("duplicate ground-truth id '" + id + "'");
    }
  }
  return samples;
}

void RequireCoverage(const std::map<std::string, std::string>& preds,
                     const std::map<std::string, EvalSample>& samples) {
  for (const auto& [id, text] : preds) {
    if (!samples.count(id)) {
      throw InputError("prediction '" + id + "' has no ground truth");
    }
  }
}

int Workers(const RunConfig& cfg) {
  return cfg.workers > 0 ? cfg.workers : DefaultWorkers();
}

// --- subcommands ----------------------------------------------------------

int RunParse(const RunConfig& cfg, const Paths& paths, const Flags& flags,
             std::ostream& out) {
  const ResponseMode mode = ModeOverride(flags).value_or(cfg.mode);
  const std::optional<Raster> screen = ParseRaster(flags.screen);
  std::vector<std::pair<std::string, std::string>> inputs;
  if (flags.plain) {
    std::string text;
    if (paths.input == "-") {
      text = ReadAll(std::cin);
    } else {
      std::ifstream f(paths.input);
      if (!f) throw InputError("cannot open " + paths.input);
      text = ReadAll(f);
    }
    std::istringstream lines(text);
    std::string line;
    for (size_t n = 1; std::getline(lines, line); ++n) {
      if (!line.empty()) inputs.emplace_back(std::to_string(n), line);
    }
  } else {
    for (const auto& j : ReadJsonLinesFrom(paths.input)) {
      inputs.emplace_back(IdOf(j), RequireString(j, "prediction"));
    }
  }
  std::ostringstream buf;
  for (const auto& [id, text] : inputs) {
    const ModelResponse r = ParseResponse(text, mode);
    OrderedJson j;
    j["id"] = id;
    const OrderedJson parsed = ResponseToJson(r);
    for (auto& [k, v] : parsed.items()) j[k] = v;
    if (screen && r.action) {
      try {
        j["normalized"] = ActionToJson(NormalizeAction(*r.action, *screen));
      } catch (const CoordinateRangeError& e) {
        j["normalized"] = nullptr;
        j["normalize_error"] = e.what();
      }
    }
    buf << j.dump() << '\n';
  }
  WriteTo(paths.out, buf.str(), out);
  return 0;
}

int RunReward(const RunConfig& cfg, const Paths& paths, const Flags& flags,
              std::ostream& out) {
  const auto samples = LoadSamples(paths.gt);
  const auto preds = LoadPredictions(paths.pred);
  RequireCoverage(preds, samples);
  const auto mode = ModeOverride(flags);
  const auto raster = ParseRaster(flags.raster);
  std::ostringstream buf;
  for (const auto& [id, text] : preds) {
    const EvalSample& s = samples.at(id);
    const ModelResponse r = ParseResponse(text, mode.value_or(s.mode));
    const RewardBreakdown b = CompositeReward(
        r, s.gt,
        raster.value_or(Raster{double(s.screen_width), double(s.screen_height)}),
        cfg.thresholds);
    OrderedJson j;
    j["id"] = id;
    const OrderedJson breakdown = BreakdownToJson(b);
    for (auto& [k, v] : breakdown.items()) j[k] = v;
    buf << j.dump() << '\n';
  }
  WriteTo(paths.out, buf.str(), out);
  return 0;
}

int RunGrpo(const RunConfig& cfg, const Paths& paths, const Flags& flags,
            std::ostream& out) {
  GrpoConfig grpo = cfg.grpo;
  if (flags.ratio_level == "token") {
    grpo.ratio_level = RatioLevel::kToken;
  } else if (flags.ratio_level == "sequence") {
    grpo.ratio_level = RatioLevel::kSequence;
  } else {
    throw ConfigError("ratio level must be token or sequence");
  }
  std::vector<ResponseGroup> groups;
  std::map<std::string, bool> static_keep;
  for (const auto& j : ReadJsonLinesFrom(paths.input)) {
    ResponseGroup g = GroupFromJson(j);
    if (!static_keep.emplace(g.sample_id, StaticFilterKeeps(Rewards(g))).second) {
      throw InputError("duplicate sample_id '" + g.sample_id + "'");
    }
    groups.push_back(std::move(g));
  }
  const BatchResult result = EvaluateBatch(std::move(groups), grpo, Workers(cfg));
  std::ostringstream buf;
  for (const auto& v : result.verdicts) {
    OrderedJson j;
    j["sample_id"] = v.sample_id;
    j["dynamic_keep"] = v.kept;
    j["static_keep"] = static_keep.at(v.sample_id);
    j["objective"] = v.objective ? OrderedJson(*v.objective) : OrderedJson(nullptr);
    j["advantages"] = v.advantages ? OrderedJson(*v.advantages) : OrderedJson(nullptr);
    buf << j.dump() << '\n';
  }
  WriteTo(paths.out, buf.str(), out);
  if (!paths.aux.empty()) {
    OrderedJson summary;
    summary["kept"] = result.kept;
    summary["dropped"] = result.dropped;
    summary["mean_objective"] = result.mean_objective
                                    ? OrderedJson(*result.mean_objective)
                                    : OrderedJson(nullptr);
    WriteTo(paths.aux, summary.dump(2) + "\n", out);
  }
  return 0;
}

int RunToyTrain(const RunConfig& cfg, const Paths& paths, const Flags& flags,
                std::ostream& out) {
  ToyConfig toy = cfg.toy;
  toy.thresholds = cfg.thresholds;
  toy.dynamic_filtering = !flags.no_dynamic_filter;
  toy.static_filtering = flags.static_filter;
  const TrainReport report = Train(toy);
  WriteTo(paths.out, TrainReportCsv(report), out);
  WriteTo(paths.aux, TrainReportJson(report, toy), out);
  return 0;
}

struct LoadedRecord {
  RawScreenRecord record;
  std::optional<GrayImage> image;
};

std::vector<LoadedRecord> LoadManifest(const Paths& paths, int workers) {
  const fs::path root = !paths.image_root.empty()
                            ? fs::path(paths.image_root)
                            : fs::path(paths.manifest).parent_path();
  std::vector<LoadedRecord> records;
  for (const auto& j : ReadJsonLinesFile(paths.manifest)) {
    records.push_back({RecordFromJson(j), std::nullopt});
  }
  ParallelFor(records.size(), workers, [&](size_t i) {
    auto& r = records[i];
    if (r.record.screenshot_path.empty()) return;
    try {
      r.image = LoadPgm(root / r.record.screenshot_path);
    } catch (const InputError&) {
      r.image.reset();
    }
  });
  std::sort(records.begin(), records.end(),
            [](const LoadedRecord& a, const LoadedRecord& b) {
              return a.record.id < b.record.id;
            });
  return records;
}

int RunFilter(const RunConfig& cfg, const Paths& paths, std::ostream& out) {
  const auto records = LoadManifest(paths, Workers(cfg));
  std::ostringstream verdicts;
  std::ostringstream kept;
  for (const auto& r : records) {
    const FilterVerdict v =
        RuleFilter(r.record, r.image ? &*r.image : nullptr);
    OrderedJson j;
    j["id"] = r.record.id;
    j["keep"] = v.keep;
    j["reason"] = v.reason ? OrderedJson(std::string(DropReasonName(*v.reason)))
                           : OrderedJson(nullptr);
    if (!v.detail.empty()) j["detail"] = v.detail;
    verdicts << j.dump() << '\n';
    if (v.keep) kept << r.record.id << '\n';
  }
  WriteTo(paths.out, verdicts.str(), out);
  WriteTo(paths.aux, kept.str(), out);
  return 0;
}

std::map<std::string, std::vector<double>> LoadEmbeddings(const std::string& path) {
  std::map<std::string, std::vector<double>> out;
  for (const auto& j : ReadJsonLinesFile(path)) {
    const std::string id = IdOf(j);
    auto v = j.find("vector");
    if (v == j.end() || !v->is_array()) {
      throw InputError("embedding '" + id + "' missing vector");
    }
    std::vector<double> vec;
    for (const auto& x : *v) {
      if (!x.is_number()) throw InputError("embedding '" + id + "' is not numeric");
      vec.push_back(x.get<double>());
    }
    if (!out.emplace(id, std::move(vec)).second) {
      throw InputError("duplicate embedding id '" + id + "'");
    }
  }
  return out;
}

int RunDedup(const RunConfig& cfg, const Paths& paths, std::ostream& out) {
  const auto records = LoadManifest(paths, Workers(cfg));
  std::map<std::string, std::vector<double>> embeddings;
  if (!paths.embeddings.empty()) embeddings = LoadEmbeddings(paths.embeddings);

  std::vector<DedupItem> items(records.size());
  ParallelFor(records.size(), Workers(cfg), [&](size_t i) {
    const auto& r = records[i];
    items[i].id = r.record.id;
    if (r.image) items[i].image_hash = PerceptualHash(*r.image);
    if (r.record.layout) {
      items[i].layout_fingerprint = LayoutFingerprint(*r.record.layout);
    }
  });
  for (auto& item : items) {
    if (auto it = embeddings.find(item.id); it != embeddings.end()) {
      item.embedding = it->second;
    }
  }
  const DedupResult result = Dedup(items, cfg.dedup, Workers(cfg));
  std::ostringstream kept;
  for (const auto& id : result.kept) kept << id << '\n';
  std::ostringstream clusters;
  for (const auto& c : result.clusters) {
    OrderedJson j;
    j["representative"] = c.representative;
    j["members"] = c.members;
    j["criteria"] = c.criteria;
    clusters << j.dump() << '\n';
  }
  WriteTo(paths.out, kept.str(), out);
  WriteTo(paths.aux, clusters.str(), out);
  return 0;
}

int RunSelect(const RunConfig& cfg, const Paths& paths, const Flags& flags,
              std::ostream& out) {
  NoveltyParams params = cfg.novelty;
  if (params.budget < 1) throw ConfigError("budget must be >= 1");
  if (flags.metric == "euclidean") {
    params.metric = DistanceMetric::kEuclidean;
  } else if (flags.metric == "cosine") {
    params.metric = DistanceMetric::kCosine;
  } else {
    throw ConfigError("metric must be euclidean or cosine");
  }
  if (flags.weight == "inverse") {
    params.weight = RankWeight::kInverse;
  } else if (flags.weight == "exp") {
    params.weight = RankWeight::kExponential;
  } else {
    throw ConfigError("weight must be inverse or exp");
  }
  if (flags.seed_policy == "medoid") {
    params.seed_policy = SeedPolicy::kMedoid;
  } else if (flags.seed_policy == "random") {
    params.seed_policy = SeedPolicy::kRandom;
  } else {
    throw ConfigError("seed policy must be medoid or random");
  }
  std::vector<CandidateEmbedding> pool;
  for (auto& [id, vec] : LoadEmbeddings(paths.embeddings)) {
    pool.push_back({id, std::move(vec)});
  }
  const auto order = NovelSelect(pool, params, Workers(cfg));
  std::ostringstream buf;
  for (const auto& id : order) buf << id << '\n';
  WriteTo(paths.out, buf.str(), out);
  return 0;
}

int RunEval(const RunConfig& cfg, const Paths& paths, const Flags& flags,
            std::ostream& out) {
  JudgePolicy policy = cfg.judge;
  policy.thresholds = cfg.thresholds;
  auto criterion = CriterionFromName(flags.criterion);
  if (!criterion) {
    throw ConfigError("criterion must be point-in-bbox, radius or width-radius");
  }
  policy.criterion = *criterion;
  policy.prediction_raster = ParseRaster(flags.raster);
  auto format = ReportFormatFromName(flags.format);
  if (!format) throw ConfigError("format must be markdown, csv or jsonl");

  auto samples = LoadSamples(paths.gt);
  if (!paths.pred.empty()) {
    const auto preds = LoadPredictions(paths.pred);
    RequireCoverage(preds, samples);
    for (auto& [id, s] : samples) {
      auto it = preds.find(id);
      s.prediction = it != preds.end() ? it->second : std::string();
    }
  }
  if (auto mode = ModeOverride(flags)) {
    for (auto& [id, s] : samples) s.mode = *mode;
  }

  std::vector<const EvalSample*> ordered;
  for (const auto& [id, s] : samples) ordered.push_back(&s);
  std::vector<Judgment> judgments(ordered.size());
  ParallelFor(ordered.size(), Workers(cfg), [&](size_t i) {
    judgments[i] = JudgeSample(*ordered[i], policy);
  });

  WriteTo(paths.out, RenderReport(ComputeMetrics(judgments), *format), out);
  if (!paths.aux.empty()) {
    std::ostringstream buf;
    for (const auto& j : judgments) {
      OrderedJson row;
      row["id"] = j.id;
      row["subset"] = j.subset;
      row["type_ok"] = j.type_ok;
      row["grd_ok"] = j.grd_ok ? OrderedJson(*j.grd_ok) : OrderedJson(nullptr);
      row["sr_ok"] = j.sr_ok;
      buf << row.dump() << '\n';
    }
    WriteTo(paths.aux, buf.str(), out);
  }
  return 0;
}

void AddThresholds(CLI::App* app, RunConfig& cfg) {
  app->add_option("--tap-radius", cfg.thresholds.tap_radius,
                  "Accuracy radius for point actions (unit square)")
      ->capture_default_str();
  app->add_option("--drag-radius", cfg.thresholds.drag_radius,
                  "Accuracy radius for each drag endpoint")
      ->capture_default_str();
  app->add_option("--f1-min", cfg.thresholds.f1_min,
                  "Text input passes when token F1 exceeds this")
      ->capture_default_str();
  app->add_option("--r-max", cfg.thresholds.r_max,
                  "Normalizer of the distance penalty")
      ->capture_default_str();
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  RunConfig cfg;
  Paths paths;
  Flags flags;

  CLI::App app{"GUI-agent action grammar, rewards, DF-GRPO math, data "
               "cleaning and evaluation"};
  app.name("guiact");
  app.set_version_flag("--version", std::string("guiact ") + kVersion);
  app.set_config("--config", "", "Read option defaults from an INI/TOML file");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workers", cfg.workers, "Worker threads (0 = all cores)")
      ->capture_default_str();

  auto* parse = app.add_subcommand("parse", "Parse model outputs into actions");
  parse->add_option("--input,-i", paths.input, "JSON Lines {id, prediction}, or '-'")
      ->capture_default_str();
  parse->add_option("--out,-o", paths.out, "Output JSON Lines")->capture_default_str();
  parse->add_option("--mode", flags.mode, "fast or reasoning (default fast)");
  parse->add_flag("--plain", flags.plain, "Treat each input line as raw text");
  parse->add_option("--screen", flags.screen,
                    "Also normalize actions against a WxH raster");

  auto* reward = app.add_subcommand("reward", "Score predictions with the composite reward");
  reward->add_option("--gt", paths.gt, "Ground-truth JSON Lines")->required();
  reward->add_option("--pred", paths.pred, "Predictions JSON Lines {id, prediction}")
      ->required();
  reward->add_option("--out,-o", paths.out, "Output JSON Lines")->capture_default_str();
  reward->add_option("--mode", flags.mode, "Override the per-sample mode");
  reward->add_option("--raster", flags.raster,
                     "Prediction coordinate raster: 'screen' or WxH")
      ->capture_default_str();
  AddThresholds(reward, cfg);

  auto* grpo = app.add_subcommand("grpo", "Evaluate the DF-GRPO objective on groups");
  grpo->add_option("--input,-i", paths.input, "Group JSON Lines, or '-'")
      ->capture_default_str();
  grpo->add_option("--out,-o", paths.out, "Per-group JSON Lines")->capture_default_str();
  grpo->add_option("--summary", paths.aux, "Batch summary JSON");
  grpo->add_option("--epsilon", cfg.grpo.epsilon, "Clip range")->capture_default_str();
  grpo->add_option("--beta", cfg.grpo.beta, "KL weight")->capture_default_str();
  grpo->add_option("--ratio-level", flags.ratio_level, "token or sequence")
      ->capture_default_str();

  auto* toy = app.add_subcommand("toy-train", "Train the synthetic screen bandit");
  toy->add_option("--contexts", cfg.toy.contexts)->capture_default_str();
  toy->add_option("--grid", cfg.toy.grid_size, "Grid side length")->capture_default_str();
  toy->add_option("--group-size,-G", cfg.toy.group_size)->capture_default_str();
  toy->add_option("--steps", cfg.toy.steps)->capture_default_str();
  toy->add_option("--lr", cfg.toy.learning_rate)->capture_default_str();
  toy->add_option("--epsilon", cfg.toy.epsilon)->capture_default_str();
  toy->add_option("--beta", cfg.toy.beta)->capture_default_str();
  toy->add_option("--seed", cfg.toy.seed)->capture_default_str();
  toy->add_option("--temperature", cfg.toy.temperature)->capture_default_str();
  toy->add_option("--inner-epochs", cfg.toy.inner_epochs)->capture_default_str();
  toy->add_flag("--no-dynamic-filter", flags.no_dynamic_filter,
                "Disable dynamic filtering (ablation)");
  toy->add_flag("--static-filter", flags.static_filter,
                "Drop contexts whose initial-policy group is all right or all wrong");
  toy->add_option("--csv,-o", paths.out, "Per-step CSV")->capture_default_str();
  toy->add_option("--summary", paths.aux, "Final JSON summary");
  AddThresholds(toy, cfg);

  auto* filter = app.add_subcommand("filter", "Rule-based noise filtering");
  filter->add_option("--manifest", paths.manifest, "Record JSON Lines")->required();
  filter->add_option("--image-root", paths.image_root,
                     "Screenshot directory (default: manifest directory)");
  filter->add_option("--out,-o", paths.out, "Verdict JSON Lines")->capture_default_str();
  filter->add_option("--kept", paths.aux, "Kept ids, one per line");

  auto* dedup = app.add_subcommand("dedup", "Remove duplicate screens and pairs");
  dedup->add_option("--manifest", paths.manifest, "Record JSON Lines")->required();
  dedup->add_option("--embeddings", paths.embeddings, "Sidecar {id, vector} JSON Lines");
  dedup->add_option("--image-root", paths.image_root,
                    "Screenshot directory (default: manifest directory)");
  dedup->add_option("--out,-o", paths.out, "Kept ids, one per line")
      ->capture_default_str();
  dedup->add_option("--clusters", paths.aux, "Duplicate-cluster JSON Lines");
  dedup->add_option("--hamming-max", cfg.dedup.hamming_max)->capture_default_str();
  dedup->add_option("--cosine-min", cfg.dedup.cosine_min)->capture_default_str();

  auto* select = app.add_subcommand("select", "Diversity-driven data selection");
  select->add_option("--embeddings", paths.embeddings, "{id, vector} JSON Lines")
      ->required();
  select->add_option("--budget", cfg.novelty.budget, "Number of ids to select")
      ->required();
  select->add_option("--alpha", cfg.novelty.alpha)->capture_default_str();
  select->add_option("--beta", cfg.novelty.beta)->capture_default_str();
  select->add_option("--k", cfg.novelty.k, "Neighbors for density")->capture_default_str();
  select->add_option("--metric", flags.metric, "euclidean or cosine")->capture_default_str();
  select->add_option("--weight", flags.weight, "inverse or exp")->capture_default_str();
  select->add_option("--seed-policy", flags.seed_policy, "medoid or random")
      ->capture_default_str();
  select->add_option("--seed", cfg.novelty.seed)->capture_default_str();
  select->add_option("--out,-o", paths.out, "Selected ids in order")
      ->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Type / Grd / SR evaluation");
  eval->add_option("--gt", paths.gt, "Ground-truth JSON Lines")->required();
  eval->add_option("--pred", paths.pred, "Predictions JSON Lines {id, prediction}");
  eval->add_option("--criterion", flags.criterion,
                   "point-in-bbox, radius or width-radius")
      ->capture_default_str();
  eval->add_option("--mode", flags.mode, "Override the per-sample mode");
  eval->add_flag("--scroll-origin-relaxed", cfg.judge.scroll_origin_relaxed,
                 "Judge direction-only scroll ground truth by direction");
  eval->add_option("--raster", flags.raster,
                   "Prediction coordinate raster: 'screen' or WxH")
      ->capture_default_str();
  eval->add_option("--format", flags.format, "markdown, csv or jsonl")
      ->capture_default_str();
  eval->add_option("--out,-o", paths.out, "Report")->capture_default_str();
  eval->add_option("--judgments", paths.aux, "Per-sample judgments JSON Lines");
  AddThresholds(eval, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*parse) return RunParse(cfg, paths, flags, out);
    if (*reward) return RunReward(cfg, paths, flags, out);
    if (*grpo) return RunGrpo(cfg, paths, flags, out);
    if (*toy) return RunToyTrain(cfg, paths, flags, out);
    if (*filter) return RunFilter(cfg, paths, out);
    if (*dedup) return RunDedup(cfg, paths, out);
    if (*select) return RunSelect(cfg, paths, flags, out);
    if (*eval) return RunEval(cfg, paths, flags, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace guiact
