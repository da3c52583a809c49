#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mqa/camera.hpp"
#include "mqa/errors.hpp"
#include "mqa/evaluate.hpp"
#include "mqa/generate.hpp"
#include "mqa/rng.hpp"
#include "mqa/scene.hpp"
#include "mqa/templates.hpp"

#include "json.hpp"

namespace mqa {

// ---------------------------------------------------------------------------
// Plain files

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

// Splits on '\n'; a trailing newline does not create a final empty line.
inline std::vector<std::string> split_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) {
      if (pos < content.size()) lines.push_back(content.substr(pos));
      break;
    }
    lines.push_back(content.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

inline std::vector<std::string> load_lines(const std::string& path) {
  return split_lines(read_text_file(path));
}

inline std::string file_hash_hex(const std::string& path) {
  std::uint64_t h = fnv1a64(read_text_file(path));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Line-delimited records: every record is one structured document per line;
// blank lines are ignored; errors carry the 1-based line number.

namespace detail {

template <typename Fn>
void for_each_jsonl(const std::string& path, Fn&& fn) {
  std::vector<std::string> lines = load_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = trim_view(lines[i]);
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw SchemaError(path + ": line " + std::to_string(i + 1) + " is not a valid record",
                        i + 1);
    }
    try {
      fn(j);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(path + ": line " + std::to_string(i + 1) + ": " + e.what(), i + 1);
    } catch (const SchemaError& e) {
      throw SchemaError(path + ": line " + std::to_string(i + 1) + ": " + e.what(), i + 1,
                        e.field);
    }
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scenes

inline nlohmann::json scene_to_json(const Scene& scene) {
  nlohmann::json objs = nlohmann::json::array();
  for (const SceneObject& o : scene.objects) {
    objs.push_back({{"category", o.category},
                    {"x", o.x},
                    {"y", o.y},
                    {"camera", std::string(camera_id_name(o.camera))}});
  }
  return {{"scene_id", scene.scene_id}, {"objects", objs}};
}

inline Scene scene_from_json(const nlohmann::json& j) {
  Scene scene;
  scene.scene_id = j.at("scene_id").get<std::string>();
  if (scene.scene_id.empty()) throw SchemaError("scene_id must be non-empty");
  for (const auto& jo : j.at("objects")) {
    SceneObject o;
    o.category = jo.at("category").get<std::string>();
    if (o.category.empty()) throw SchemaError("object category must be non-empty");
    o.x = jo.at("x").get<double>();
    o.y = jo.at("y").get<double>();
    if (jo.contains("camera")) {
      std::string cam = jo.at("camera").get<std::string>();
      auto id = camera_from_string(cam);
      if (!id) throw SchemaError("unknown camera: " + cam);
      o.camera = *id;
    } else {
      o.camera = camera_for_position(o.x, o.y);
    }
    scene.objects.push_back(std::move(o));
  }
  return scene;
}

inline std::vector<Scene> load_scenes(const std::string& path) {
  std::vector<Scene> scenes;
  detail::for_each_jsonl(path, [&](const nlohmann::json& j) {
    scenes.push_back(scene_from_json(j));
  });
  return scenes;
}

inline void save_scenes(const std::vector<Scene>& scenes, const std::string& path) {
  std::string out;
  for (const Scene& s : scenes) {
    out += scene_to_json(s).dump();
    out += '\n';
  }
  write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// QA corpora

inline nlohmann::json qa_item_to_json(const QAItem& item) {
  nlohmann::json truth;
  if (const PresenceTruth* t = std::get_if<PresenceTruth>(&item.ground_truth)) {
    truth = {{"kind", "presence"},
             {"count_form", t->count_form},
             {"category", t->category},
             {"exists", t->exists},
             {"count", t->count}};
  } else if (const DirectionTruth* t = std::get_if<DirectionTruth>(&item.ground_truth)) {
    nlohmann::json targets = nlohmann::json::array();
    for (const CategoryCount& p : t->targets) {
      targets.push_back({{"category", p.category}, {"count", p.count}});
    }
    truth = {{"kind", "direction"},
             {"camera", std::string(camera_id_name(t->camera))},
             {"targets", targets}};
  } else if (const DistanceTruth* t = std::get_if<DistanceTruth>(&item.ground_truth)) {
    truth = {{"kind", "relative_distance"}, {"category", t->category}, {"distance", t->distance}};
  } else {
    const LocationTruth& loc = std::get<LocationTruth>(item.ground_truth);
    truth = {{"kind", "relative_location"},
             {"category", loc.category},
             {"x", loc.x},
             {"y", loc.y}};
  }
  return {{"item_id", item.item_id},
          {"scene_id", item.scene_id},
          {"family", std::string(family_name(item.family))},
          {"question", item.question},
          {"answer", item.answer_markup},
          {"n_qa", item.n_qa},
          {"truth", truth}};
}

inline QAItem qa_item_from_json(const nlohmann::json& j) {
  QAItem item;
  item.item_id = j.at("item_id").get<std::string>();
  item.scene_id = j.at("scene_id").get<std::string>();
  std::string family = j.at("family").get<std::string>();
  auto fam = family_from_name(family);
  if (!fam) throw SchemaError("unknown family: " + family);
  item.family = *fam;
  item.question = j.at("question").get<std::string>();
  item.answer_markup = j.at("answer").get<std::string>();
  item.n_qa = j.at("n_qa").get<int>();
  if (item.item_id.empty()) throw SchemaError("item_id must be non-empty");
  if (item.n_qa < 1) throw SchemaError("n_qa must be >= 1");

  const nlohmann::json& t = j.at("truth");
  std::string kind = t.at("kind").get<std::string>();
  if (kind != family_name(item.family)) {
    throw SchemaError("truth kind does not match family: " + kind);
  }
  switch (item.family) {
    case TaskFamily::presence:
      item.ground_truth = PresenceTruth{t.at("count_form").get<bool>(),
                                        t.at("category").get<std::string>(),
                                        t.at("exists").get<bool>(), t.at("count").get<int>()};
      break;
    case TaskFamily::direction: {
      DirectionTruth truth;
      std::string cam = t.at("camera").get<std::string>();
      auto id = camera_from_string(cam);
      if (!id) throw SchemaError("unknown camera: " + cam);
      truth.camera = *id;
      for (const auto& jp : t.at("targets")) {
        truth.targets.push_back(
            {jp.at("category").get<std::string>(), jp.at("count").get<int>()});
      }
      item.ground_truth = std::move(truth);
      break;
    }
    case TaskFamily::relative_distance:
      item.ground_truth = DistanceTruth{t.at("category").get<std::string>(),
                                        t.at("distance").get<double>()};
      break;
    case TaskFamily::relative_location:
      item.ground_truth = LocationTruth{t.at("category").get<std::string>(),
                                        t.at("x").get<double>(), t.at("y").get<double>()};
      break;
  }
  return item;
}

inline std::vector<QAItem> load_corpus(const std::string& path) {
  std::vector<QAItem> items;
  detail::for_each_jsonl(path, [&](const nlohmann::json& j) {
    items.push_back(qa_item_from_json(j));
  });
  return items;
}

inline void save_corpus(const std::vector<QAItem>& items, const std::string& path) {
  std::string out;
  for (const QAItem& item : items) {
    out += qa_item_to_json(item).dump();
    out += '\n';
  }
  write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// Predictions and released question files

inline std::vector<PredictionRecord> load_predictions(const std::string& path) {
  std::vector<PredictionRecord> preds;
  detail::for_each_jsonl(path, [&](const nlohmann::json& j) {
    PredictionRecord p;
    p.item_id = j.at("item_id").get<std::string>();
    p.predicted_text = j.at("predicted_text").get<std::string>();
    if (p.item_id.empty()) throw SchemaError("item_id must be non-empty");
    preds.push_back(std::move(p));
  });
  return preds;
}

inline void save_predictions(const std::vector<PredictionRecord>& preds,
                             const std::string& path) {
  std::string out;
  for (const PredictionRecord& p : preds) {
    out += nlohmann::json{{"item_id", p.item_id}, {"predicted_text", p.predicted_text}}.dump();
    out += '\n';
  }
  write_text_file(path, out);
}

inline void save_questions(const std::vector<QAItem>& items, const std::string& path) {
  std::string out;
  for (const QAItem& item : items) {
    out += nlohmann::json{{"item_id", item.item_id}, {"question", item.question}}.dump();
    out += '\n';
  }
  write_text_file(path, out);
}

// ---------------------------------------------------------------------------
// Vocabulary and template bank files

inline CategoryVocabulary vocabulary_from_json(const nlohmann::json& j) {
  try {
    std::vector<VocabEntry> entries;
    for (const auto& je : j.at("categories")) {
      entries.push_back({je.at("name").get<std::string>(), je.at("plural").get<std::string>()});
    }
    return CategoryVocabulary::from_entries(std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("vocabulary document: ") + e.what());
  }
}

inline CategoryVocabulary load_vocabulary(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded()) throw SchemaError("vocabulary is not a valid document: " + path);
  return vocabulary_from_json(j);
}

inline TemplateBank load_template_bank(const std::string& path) {
  return TemplateBank::from_json_text(read_text_file(path));
}

// ---------------------------------------------------------------------------
// Extraction records, one structured document per input line

inline nlohmann::json extracted_answer_to_json(const ExtractedAnswer& a) {
  if (const YesNo* v = std::get_if<YesNo>(&a)) {
    return {{"slot", "yes_no"}, {"value", v->value}};
  }
  if (const Category* v = std::get_if<Category>(&a)) {
    return {{"slot", "category"}, {"value", v->name}};
  }
  if (const Count* v = std::get_if<Count>(&a)) {
    return {{"slot", "count"}, {"value", v->value}};
  }
  if (const Camera* v = std::get_if<Camera>(&a)) {
    return {{"slot", "camera"}, {"value", std::string(camera_id_name(v->id))}};
  }
  if (const Distance* v = std::get_if<Distance>(&a)) {
    return {{"slot", "distance"}, {"meters", v->meters}};
  }
  if (const Location* v = std::get_if<Location>(&a)) {
    return {{"slot", "location"}, {"x", v->x}, {"y", v->y}};
  }
  if (const TargetPair* v = std::get_if<TargetPair>(&a)) {
    return {{"slot", "target"}, {"count", v->count}, {"category", v->category}};
  }
  const InvalidSlot& v = std::get<InvalidSlot>(a);
  return {{"slot", "invalid"}, {"tag", std::string(tag_name(v.slot))}, {"content", v.content}};
}

// ---------------------------------------------------------------------------
// Run manifests. No timestamps or host details: a manifest plus its inputs
// fully determines the outputs, byte for byte.

struct Manifest {
  std::string subcommand;
  nlohmann::json config;                      // resolved flag values
  std::map<std::string, std::string> inputs;  // path -> content hash
  std::map<std::string, std::string> outputs;
  nlohmann::json counts;  // subcommand-specific tallies
};

inline nlohmann::json manifest_to_json(const Manifest& m) {
  return {{"schema", "mqa.manifest.v1"}, {"subcommand", m.subcommand}, {"config", m.config},
          {"inputs", m.inputs},          {"outputs", m.outputs},       {"counts", m.counts}};
}

inline Manifest manifest_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != "mqa.manifest.v1") {
      throw SchemaError("unrecognized manifest schema");
    }
    Manifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.config = j.at("config");
    m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
    m.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
    m.counts = j.at("counts");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("manifest: ") + e.what());
  }
}

inline void save_manifest(const Manifest& m, const std::string& path) {
  write_text_file(path, manifest_to_json(m).dump(2) + "\n");
}

inline Manifest load_manifest(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded()) throw SchemaError("manifest is not a valid document: " + path);
  return manifest_from_json(j);
}

// ---------------------------------------------------------------------------
// Evaluation report serialization

inline nlohmann::json rate_to_json(const Rate& r) {
  nlohmann::json j = {{"num", r.num}, {"den", r.den}};
  if (r.den > 0) {
    j["value"] = r.value();
  } else {
    j["value"] = nullptr;
  }
  return j;
}

inline nlohmann::json report_to_json(const EvalReport& r) {
  nlohmann::json j;
  j["schema"] = "mqa.eval.v1";
  j["items"] = r.items;
  j["sgp"] = {{"bleu1", r.sgp.bleu1},
              {"bleu4", r.sgp.bleu4},
              {"meteor", r.sgp.meteor},
              {"rouge1_f", r.sgp.rouge1_f},
              {"avg", r.sgp.avg}};
  j["yes_no_acc"] = rate_to_json(r.yes_no);
  j["cat_acc"] = rate_to_json(r.cat);
  j["cat_count_acc"] = rate_to_json(r.cat_count);
  j["cam_acc"] = rate_to_json(r.cam);
  j["cat_rd_acc"] = rate_to_json(r.cat_rd);
  j["cat_loc_acc"] = rate_to_json(r.cat_loc);
  j["rd_mae"] = r.rd_mae ? nlohmann::json(*r.rd_mae) : nlohmann::json(nullptr);
  j["rd_samples"] = r.rd_samples;
  j["loc_x_mae"] = r.loc_x_mae ? nlohmann::json(*r.loc_x_mae) : nlohmann::json(nullptr);
  j["loc_y_mae"] = r.loc_y_mae ? nlohmann::json(*r.loc_y_mae) : nlohmann::json(nullptr);
  j["loc_samples"] = r.loc_samples;
  nlohmann::json buckets = nlohmann::json::object();
  for (const auto& [n, rates] : r.by_n_qa) {
    buckets[std::to_string(n)] = {{"cat_acc", rate_to_json(rates.cat)},
                                  {"cat_count_acc", rate_to_json(rates.cat_count)}};
  }
  j["by_n_qa"] = buckets;
  j["missing_predictions"] = r.missing_predictions;
  j["missing_slots"] = r.missing_slots;
  j["invalid_slots"] = r.invalid_slots;
  j["spurious_slots"] = r.spurious_slots;
  return j;
}

}  // namespace mqa
