// mqa: deterministic markup-QA toolkit.
//
// Subcommands: generate, split, validate, strip, extract, evaluate, stats.
// Every run writes a manifest recording the resolved config plus input and
// output content hashes; --from-manifest re-runs a recorded invocation.
// Exit codes: 0 ok, 1 unexpected, 2 config, 3 schema, 4 I/O.

#include <cstdio>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "mqa/mqa.hpp"

namespace {

using nlohmann::json;

int resolve_jobs(int jobs) {
  if (jobs < 0) throw mqa::ConfigError("jobs must be >= 1 (or 0 for auto)");
  if (jobs > 0) return jobs;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

mqa::CategoryVocabulary resolve_vocab(const std::string& path) {
  return path.empty() ? mqa::CategoryVocabulary::defaults() : mqa::load_vocabulary(path);
}

const mqa::TemplateBank& builtin_bank() { return mqa::TemplateBank::builtin(); }

std::string default_manifest_path(const std::string& primary_output) {
  return primary_output + ".manifest.json";
}

void note_input(mqa::Manifest& m, const std::string& path) {
  if (!path.empty()) m.inputs[path] = mqa::file_hash_hex(path);
}

void note_output(mqa::Manifest& m, const std::string& path) {
  m.outputs[path] = mqa::file_hash_hex(path);
}

// builtin assets are part of the reproducibility contract too
void note_builtin(mqa::Manifest& m, const std::string& key, std::string_view content) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(mqa::fnv1a64(content)));
  m.inputs[key] = buf;
}

// Lines to process: either the raw file lines or one string field pulled out
// of structured records. Pairs are (1-based file line, text).
std::vector<std::pair<std::size_t, std::string>> input_texts(const std::string& path,
                                                             const std::string& field) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::vector<std::string> lines = mqa::load_lines(path);
  if (field.empty()) {
    for (std::size_t i = 0; i < lines.size(); ++i) out.emplace_back(i + 1, lines[i]);
    return out;
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = mqa::trim_view(lines[i]);
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw mqa::SchemaError(path + ": line " + std::to_string(i + 1) + " is not a record",
                             i + 1);
    }
    auto it = j.find(field);
    if (it == j.end() || !it->is_string()) {
      throw mqa::SchemaError(path + ": line " + std::to_string(i + 1) + " has no string field '" +
                                 field + "'",
                             i + 1, field);
    }
    out.emplace_back(i + 1, it->get<std::string>());
  }
  return out;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOpts {
  std::string scenes;
  long long synth = -1;  // -1 means load --scenes
  unsigned long long seed = 0;
  std::string out;
  std::string manifest;
  std::string save_scenes;
  double mix_presence = 1.0;
  double mix_direction = 1.0;
  double mix_distance = 1.0;
  double mix_location = 1.0;
  double radius = 40.0;
  int max_count = 20;
  int max_objects = 24;
  double coord_range = 55.0;
  std::string bank;
  std::string vocab;
  int jobs = 0;
};

json generate_opts_to_json(const GenerateOpts& o) {
  return {{"scenes", o.scenes},
          {"synth", o.synth},
          {"seed", o.seed},
          {"out", o.out},
          {"manifest", o.manifest},
          {"save_scenes", o.save_scenes},
          {"mix_presence", o.mix_presence},
          {"mix_direction", o.mix_direction},
          {"mix_distance", o.mix_distance},
          {"mix_location", o.mix_location},
          {"radius", o.radius},
          {"max_count", o.max_count},
          {"max_objects", o.max_objects},
          {"coord_range", o.coord_range},
          {"bank", o.bank},
          {"vocab", o.vocab},
          {"jobs", o.jobs}};
}

GenerateOpts generate_opts_from_json(const json& j) {
  GenerateOpts o;
  o.scenes = j.at("scenes").get<std::string>();
  o.synth = j.at("synth").get<long long>();
  o.seed = j.at("seed").get<unsigned long long>();
  o.out = j.at("out").get<std::string>();
  o.manifest = j.at("manifest").get<std::string>();
  o.save_scenes = j.at("save_scenes").get<std::string>();
  o.mix_presence = j.at("mix_presence").get<double>();
  o.mix_direction = j.at("mix_direction").get<double>();
  o.mix_distance = j.at("mix_distance").get<double>();
  o.mix_location = j.at("mix_location").get<double>();
  o.radius = j.at("radius").get<double>();
  o.max_count = j.at("max_count").get<int>();
  o.max_objects = j.at("max_objects").get<int>();
  o.coord_range = j.at("coord_range").get<double>();
  o.bank = j.at("bank").get<std::string>();
  o.vocab = j.at("vocab").get<std::string>();
  o.jobs = j.at("jobs").get<int>();
  return o;
}

void run_generate(GenerateOpts o) {
  if (o.out.empty()) throw mqa::ConfigError("generate: --out is required");
  if ((o.synth >= 0) == !o.scenes.empty()) {
    throw mqa::ConfigError("generate: give exactly one of --synth or --scenes");
  }
  if (o.manifest.empty()) o.manifest = default_manifest_path(o.out);

  mqa::CategoryVocabulary vocab = resolve_vocab(o.vocab);
  const mqa::TemplateBank bank =
      o.bank.empty() ? builtin_bank() : mqa::load_template_bank(o.bank);

  std::vector<mqa::Scene> scenes;
  if (o.synth >= 0) {
    if (o.synth > 1000000) throw mqa::ConfigError("generate: --synth too large");
    scenes = mqa::synth_scenes(o.seed, static_cast<int>(o.synth),
                               {o.max_objects, o.coord_range}, vocab);
  } else {
    scenes = mqa::load_scenes(o.scenes);
    for (const mqa::Scene& s : scenes) {
      for (const mqa::SceneObject& obj : s.objects) {
        if (!vocab.contains(obj.category)) {
          throw mqa::UnknownCategoryError(
              "scene " + s.scene_id + " has category not in vocabulary: " + obj.category, 0,
              obj.category);
        }
      }
    }
  }

  mqa::FamilyMix mix{o.mix_presence, o.mix_direction, o.mix_distance, o.mix_location};
  mqa::GenConfig cfg{o.radius, o.max_count};
  mqa::GeneratedCorpus corpus =
      mqa::generate_corpus(scenes, mix, o.seed, bank, vocab, cfg, resolve_jobs(o.jobs));
  mqa::save_corpus(corpus.items, o.out);
  if (!o.save_scenes.empty()) mqa::save_scenes(scenes, o.save_scenes);

  mqa::Manifest m;
  m.subcommand = "generate";
  m.config = generate_opts_to_json(o);
  note_input(m, o.scenes);
  note_input(m, o.bank);
  note_input(m, o.vocab);
  if (o.bank.empty()) note_builtin(m, "builtin:template_bank", mqa::kBuiltinTemplateBankJson);
  note_output(m, o.out);
  if (!o.save_scenes.empty()) note_output(m, o.save_scenes);
  m.counts["items"] = corpus.counts.items;
  m.counts["scenes"] = scenes.size();
  for (const auto& [fam, tally] : corpus.counts.per_family) {
    m.counts["families"][fam] = {{"emitted", tally.emitted}, {"skipped", tally.skipped}};
  }
  mqa::save_manifest(m, o.manifest);
  std::printf("generate: %ld items from %zu scenes -> %s\n", corpus.counts.items, scenes.size(),
              o.out.c_str());
}

// ---------------------------------------------------------------------------
// split

struct SplitOpts {
  std::string in;
  long long take = 0;
  std::string questions;
  std::string answers;
  std::string manifest;
};

json split_opts_to_json(const SplitOpts& o) {
  return {{"in", o.in},
          {"take", o.take},
          {"questions", o.questions},
          {"answers", o.answers},
          {"manifest", o.manifest}};
}

SplitOpts split_opts_from_json(const json& j) {
  SplitOpts o;
  o.in = j.at("in").get<std::string>();
  o.take = j.at("take").get<long long>();
  o.questions = j.at("questions").get<std::string>();
  o.answers = j.at("answers").get<std::string>();
  o.manifest = j.at("manifest").get<std::string>();
  return o;
}

void run_split(SplitOpts o) {
  if (o.in.empty() || o.questions.empty() || o.answers.empty()) {
    throw mqa::ConfigError("split: --in, --questions and --answers are required");
  }
  if (o.take <= 0) throw mqa::ConfigError("split: --take must be positive");
  if (o.manifest.empty()) o.manifest = default_manifest_path(o.answers);

  std::vector<mqa::QAItem> corpus = mqa::load_corpus(o.in);
  if (static_cast<long long>(corpus.size()) < o.take) {
    throw mqa::ConfigError("split: corpus has " + std::to_string(corpus.size()) +
                           " items, cannot take " + std::to_string(o.take));
  }

  // family-balanced round-robin over corpus order, then re-sorted to corpus
  // order so outputs stay stable under family relabeling
  std::vector<std::vector<std::size_t>> queues(mqa::kAllFamilies.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    queues[static_cast<std::size_t>(corpus[i].family)].push_back(i);
  }
  std::vector<std::size_t> heads(queues.size(), 0);
  std::vector<bool> picked(corpus.size(), false);
  long long taken = 0;
  while (taken < o.take) {
    bool any = false;
    for (std::size_t f = 0; f < queues.size() && taken < o.take; ++f) {
      if (heads[f] < queues[f].size()) {
        picked[queues[f][heads[f]++]] = true;
        ++taken;
        any = true;
      }
    }
    if (!any) break;
  }

  std::vector<mqa::QAItem> selected;
  selected.reserve(static_cast<std::size_t>(o.take));
  std::map<std::string, long> family_counts;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!picked[i]) continue;
    family_counts[std::string(mqa::family_name(corpus[i].family))] += 1;
    selected.push_back(corpus[i]);
  }
  mqa::save_questions(selected, o.questions);
  mqa::save_corpus(selected, o.answers);

  mqa::Manifest m;
  m.subcommand = "split";
  m.config = split_opts_to_json(o);
  note_input(m, o.in);
  note_output(m, o.questions);
  note_output(m, o.answers);
  m.counts["taken"] = taken;
  m.counts["families"] = family_counts;
  mqa::save_manifest(m, o.manifest);
  std::printf("split: took %lld of %zu items -> %s, %s\n", taken, corpus.size(),
              o.questions.c_str(), o.answers.c_str());
}

// ---------------------------------------------------------------------------
// validate / strip / extract (line tools)

struct LineToolOpts {
  std::string in;
  std::string out;
  std::string manifest;
  std::string jsonl_field;
  std::string parse_mode = "strict";  // strip/extract default to lenient below
  std::string strip_mode = "normalized";
};

json line_opts_to_json(const LineToolOpts& o) {
  return {{"in", o.in},
          {"out", o.out},
          {"manifest", o.manifest},
          {"jsonl_field", o.jsonl_field},
          {"parse_mode", o.parse_mode},
          {"strip_mode", o.strip_mode}};
}

LineToolOpts line_opts_from_json(const json& j) {
  LineToolOpts o;
  o.in = j.at("in").get<std::string>();
  o.out = j.at("out").get<std::string>();
  o.manifest = j.at("manifest").get<std::string>();
  o.jsonl_field = j.at("jsonl_field").get<std::string>();
  o.parse_mode = j.at("parse_mode").get<std::string>();
  o.strip_mode = j.at("strip_mode").get<std::string>();
  return o;
}

mqa::ParseMode parse_mode_of(const std::string& s) {
  if (s == "strict") return mqa::ParseMode::strict;
  if (s == "lenient") return mqa::ParseMode::lenient;
  throw mqa::ConfigError("parse mode must be strict or lenient, got: " + s);
}

mqa::StripMode strip_mode_of(const std::string& s) {
  if (s == "normalized") return mqa::StripMode::normalized;
  if (s == "verbatim") return mqa::StripMode::verbatim;
  throw mqa::ConfigError("strip mode must be normalized or verbatim, got: " + s);
}

void run_validate(LineToolOpts o) {
  if (o.in.empty() || o.out.empty()) throw mqa::ConfigError("validate: --in and --out required");
  if (o.manifest.empty()) o.manifest = default_manifest_path(o.out);
  mqa::ParseMode mode = parse_mode_of(o.parse_mode);

  auto texts = input_texts(o.in, o.jsonl_field);
  std::string report;
  long findings = 0;
  long bad_lines = 0;
  for (const auto& [line_no, text] : texts) {
    mqa::ParseResult r = mqa::parse_markup(text, mode);
    if (!r.ok()) ++bad_lines;
    for (const mqa::ParseIssue& is : r.issues) {
      report += json{{"line", line_no},
                     {"offset", is.offset},
                     {"kind", std::string(mqa::issue_kind_name(is.kind))},
                     {"severity", std::string(mqa::severity_name(is.severity))},
                     {"detail", is.detail}}
                    .dump();
      report += '\n';
      ++findings;
    }
  }
  mqa::write_text_file(o.out, report);

  mqa::Manifest m;
  m.subcommand = "validate";
  m.config = line_opts_to_json(o);
  note_input(m, o.in);
  note_output(m, o.out);
  m.counts["lines"] = texts.size();
  m.counts["findings"] = findings;
  m.counts["lines_with_errors"] = bad_lines;
  mqa::save_manifest(m, o.manifest);
  std::printf("validate: %zu lines, %ld findings, %ld lines with errors\n", texts.size(),
              findings, bad_lines);
}

void run_strip(LineToolOpts o) {
  if (o.in.empty() || o.out.empty()) throw mqa::ConfigError("strip: --in and --out required");
  if (o.manifest.empty()) o.manifest = default_manifest_path(o.out);
  mqa::ParseMode pmode = parse_mode_of(o.parse_mode);
  mqa::StripMode smode = strip_mode_of(o.strip_mode);

  auto texts = input_texts(o.in, o.jsonl_field);
  std::string out;
  for (const auto& [line_no, text] : texts) {
    (void)line_no;
    out += mqa::strip_markup(text, smode, pmode);
    out += '\n';
  }
  mqa::write_text_file(o.out, out);

  mqa::Manifest m;
  m.subcommand = "strip";
  m.config = line_opts_to_json(o);
  note_input(m, o.in);
  note_output(m, o.out);
  m.counts["lines"] = texts.size();
  mqa::save_manifest(m, o.manifest);
  std::printf("strip: %zu lines -> %s\n", texts.size(), o.out.c_str());
}

void run_extract(LineToolOpts o) {
  if (o.in.empty() || o.out.empty()) throw mqa::ConfigError("extract: --in and --out required");
  if (o.manifest.empty()) o.manifest = default_manifest_path(o.out);
  mqa::ParseMode pmode = parse_mode_of(o.parse_mode);

  auto texts = input_texts(o.in, o.jsonl_field);
  std::string out;
  long slots = 0;
  for (const auto& [line_no, text] : texts) {
    json answers = json::array();
    for (const mqa::ExtractedAnswer& a : mqa::extract_answers(text, pmode)) {
      answers.push_back(mqa::extracted_answer_to_json(a));
      ++slots;
    }
    out += json{{"line", line_no}, {"answers", answers}}.dump();
    out += '\n';
  }
  mqa::write_text_file(o.out, out);

  mqa::Manifest m;
  m.subcommand = "extract";
  m.config = line_opts_to_json(o);
  note_input(m, o.in);
  note_output(m, o.out);
  m.counts["lines"] = texts.size();
  m.counts["slots"] = slots;
  mqa::save_manifest(m, o.manifest);
  std::printf("extract: %zu lines, %ld slots -> %s\n", texts.size(), slots, o.out.c_str());
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOpts {
  std::string gt;
  std::string pred;
  std::string out;
  std::string table;
  std::string manifest;
  std::string vocab;
  double tolerance = 1.0;
  int jobs = 0;
};

json evaluate_opts_to_json(const EvaluateOpts& o) {
  return {{"gt", o.gt},         {"pred", o.pred},   {"out", o.out},
          {"table", o.table},   {"manifest", o.manifest}, {"vocab", o.vocab},
          {"tolerance", o.tolerance}, {"jobs", o.jobs}};
}

EvaluateOpts evaluate_opts_from_json(const json& j) {
  EvaluateOpts o;
  o.gt = j.at("gt").get<std::string>();
  o.pred = j.at("pred").get<std::string>();
  o.out = j.at("out").get<std::string>();
  o.table = j.at("table").get<std::string>();
  o.manifest = j.at("manifest").get<std::string>();
  o.vocab = j.at("vocab").get<std::string>();
  o.tolerance = j.at("tolerance").get<double>();
  o.jobs = j.at("jobs").get<int>();
  return o;
}

void run_evaluate(EvaluateOpts o) {
  if (o.gt.empty() || o.pred.empty() || o.out.empty()) {
    throw mqa::ConfigError("evaluate: --gt, --pred and --out are required");
  }
  if (!(o.tolerance >= 0.0)) throw mqa::ConfigError("evaluate: tolerance must be >= 0");
  if (o.manifest.empty()) o.manifest = default_manifest_path(o.out);

  mqa::CategoryVocabulary vocab = resolve_vocab(o.vocab);
  std::vector<mqa::QAItem> gt = mqa::load_corpus(o.gt);
  std::vector<mqa::PredictionRecord> preds = mqa::load_predictions(o.pred);
  mqa::EvalReport report =
      mqa::evaluate_corpus(gt, preds, vocab, {o.tolerance}, resolve_jobs(o.jobs));

  mqa::write_text_file(o.out, mqa::report_to_json(report).dump(2) + "\n");
  std::string table = mqa::render_report_table(report);
  if (!o.table.empty()) mqa::write_text_file(o.table, table);
  std::fputs(table.c_str(), stdout);

  mqa::Manifest m;
  m.subcommand = "evaluate";
  m.config = evaluate_opts_to_json(o);
  note_input(m, o.gt);
  note_input(m, o.pred);
  note_input(m, o.vocab);
  note_output(m, o.out);
  if (!o.table.empty()) note_output(m, o.table);
  m.counts["items"] = report.items;
  m.counts["predictions"] = preds.size();
  m.counts["missing_predictions"] = report.missing_predictions;
  mqa::save_manifest(m, o.manifest);
}

// ---------------------------------------------------------------------------
// stats

struct StatsOpts {
  std::string in;
  std::string out;
  std::string manifest;
  std::string format = "structured";
};

json stats_opts_to_json(const StatsOpts& o) {
  return {{"in", o.in}, {"out", o.out}, {"manifest", o.manifest}, {"format", o.format}};
}

StatsOpts stats_opts_from_json(const json& j) {
  StatsOpts o;
  o.in = j.at("in").get<std::string>();
  o.out = j.at("out").get<std::string>();
  o.manifest = j.at("manifest").get<std::string>();
  o.format = j.at("format").get<std::string>();
  return o;
}

void run_stats(StatsOpts o) {
  if (o.in.empty() || o.out.empty()) throw mqa::ConfigError("stats: --in and --out required");
  if (o.manifest.empty()) o.manifest = default_manifest_path(o.out);
  mqa::StatsFormat format;
  if (o.format == "structured") {
    format = mqa::StatsFormat::structured;
  } else if (o.format == "tabular") {
    format = mqa::StatsFormat::tabular;
  } else {
    throw mqa::ConfigError("stats: format must be structured or tabular, got: " + o.format);
  }

  std::vector<mqa::QAItem> corpus = mqa::load_corpus(o.in);
  mqa::StatsBundle bundle = mqa::compute_stats(corpus);
  mqa::emit_stats(bundle, o.out, format);

  mqa::Manifest m;
  m.subcommand = "stats";
  m.config = stats_opts_to_json(o);
  note_input(m, o.in);
  if (format == mqa::StatsFormat::structured) {
    note_output(m, o.out);
  } else {
    static const char* kTables[] = {
        "word_freq_questions.tsv", "word_freq_answers.tsv", "cloud_questions.tsv",
        "cloud_answers.tsv",       "yes_no.tsv",            "count_hist.tsv",
        "n_qa_hist.tsv",           "distance_hist.tsv",     "location_grid.tsv",
        "per_family.tsv"};
    for (const char* name : kTables) note_output(m, o.out + "/" + name);
  }
  m.counts["items"] = corpus.size();
  mqa::save_manifest(m, o.manifest);
  std::printf("stats: %zu items -> %s\n", corpus.size(), o.out.c_str());
}

// ---------------------------------------------------------------------------

void run_from_manifest(const std::string& path) {
  mqa::Manifest m = mqa::load_manifest(path);
  try {
    if (m.subcommand == "generate") {
      run_generate(generate_opts_from_json(m.config));
    } else if (m.subcommand == "split") {
      run_split(split_opts_from_json(m.config));
    } else if (m.subcommand == "validate") {
      run_validate(line_opts_from_json(m.config));
    } else if (m.subcommand == "strip") {
      run_strip(line_opts_from_json(m.config));
    } else if (m.subcommand == "extract") {
      run_extract(line_opts_from_json(m.config));
    } else if (m.subcommand == "evaluate") {
      run_evaluate(evaluate_opts_from_json(m.config));
    } else if (m.subcommand == "stats") {
      run_stats(stats_opts_from_json(m.config));
    } else {
      throw mqa::SchemaError("manifest names unknown subcommand: " + m.subcommand);
    }
  } catch (const json::exception& e) {
    throw mqa::SchemaError(std::string("manifest config: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic markup-QA toolkit: generation, validation, scoring"};
  app.require_subcommand(0, 1);
  std::string from_manifest;
  app.add_option("--from-manifest", from_manifest,
                 "Re-run the invocation recorded in a manifest file");

  GenerateOpts gen;
  CLI::App* cg = app.add_subcommand("generate", "Generate a QA corpus from scenes");
  cg->add_option("--scenes", gen.scenes, "Scene records, one per line");
  cg->add_option("--synth", gen.synth, "Synthesize this many scenes instead of loading");
  cg->add_option("--seed", gen.seed, "Root seed; all randomness derives from it")
      ->default_val(0);
  cg->add_option("--out", gen.out, "Corpus output path")->required();
  cg->add_option("--manifest", gen.manifest, "Manifest path (default: <out>.manifest.json)");
  cg->add_option("--save-scenes", gen.save_scenes, "Also write the scene set used");
  cg->add_option("--mix-presence", gen.mix_presence, "Presence questions per scene")
      ->default_val(1.0);
  cg->add_option("--mix-direction", gen.mix_direction, "Direction questions per scene")
      ->default_val(1.0);
  cg->add_option("--mix-distance", gen.mix_distance, "Closest-distance questions per scene")
      ->default_val(1.0);
  cg->add_option("--mix-location", gen.mix_location, "Closest-location questions per scene")
      ->default_val(1.0);
  cg->add_option("--radius", gen.radius, "Task radius in meters")->default_val(40.0);
  cg->add_option("--max-count", gen.max_count, "Counting cap per category")->default_val(20);
  cg->add_option("--max-objects", gen.max_objects, "Synthetic scenes: max objects per scene")
      ->default_val(24);
  cg->add_option("--coord-range", gen.coord_range, "Synthetic scenes: +/- coordinate range")
      ->default_val(55.0);
  cg->add_option("--bank", gen.bank, "Template bank file (default: built-in bank)");
  cg->add_option("--vocab", gen.vocab, "Vocabulary file (default: built-in 10 classes)");
  cg->add_option("--jobs", gen.jobs, "Worker threads, 0 = all cores")->default_val(0);

  SplitOpts split;
  CLI::App* cs = app.add_subcommand("split", "Take a family-balanced subset of a corpus");
  cs->add_option("--in", split.in, "Corpus input")->required();
  cs->add_option("--take", split.take, "Number of items to take")->required();
  cs->add_option("--questions", split.questions, "Released question file")->required();
  cs->add_option("--answers", split.answers, "Sealed answer corpus")->required();
  cs->add_option("--manifest", split.manifest, "Manifest path (default: <answers>.manifest.json)");

  LineToolOpts val;
  CLI::App* cv = app.add_subcommand("validate", "Report markup issues, one finding per line");
  cv->add_option("--in", val.in, "Input file, one text per line")->required();
  cv->add_option("--out", val.out, "Findings output")->required();
  cv->add_option("--manifest", val.manifest, "Manifest path (default: <out>.manifest.json)");
  cv->add_option("--jsonl-field", val.jsonl_field,
                 "Treat input lines as records and validate this string field");
  cv->add_option("--mode", val.parse_mode, "strict or lenient")->default_val("strict");

  LineToolOpts strip;
  strip.parse_mode = "lenient";
  CLI::App* ct = app.add_subcommand("strip", "Remove markup, one demarked line per input line");
  ct->add_option("--in", strip.in, "Input file, one text per line")->required();
  ct->add_option("--out", strip.out, "Demarked output")->required();
  ct->add_option("--manifest", strip.manifest, "Manifest path (default: <out>.manifest.json)");
  ct->add_option("--jsonl-field", strip.jsonl_field,
                 "Treat input lines as records and strip this string field");
  ct->add_option("--parse", strip.parse_mode, "strict or lenient")->default_val("lenient");
  ct->add_option("--mode", strip.strip_mode, "normalized or verbatim")
      ->default_val("normalized");

  LineToolOpts ext;
  ext.parse_mode = "lenient";
  CLI::App* ce = app.add_subcommand("extract", "Extract structured answers per line");
  ce->add_option("--in", ext.in, "Input file, one text per line")->required();
  ce->add_option("--out", ext.out, "Extraction records output")->required();
  ce->add_option("--manifest", ext.manifest, "Manifest path (default: <out>.manifest.json)");
  ce->add_option("--jsonl-field", ext.jsonl_field,
                 "Treat input lines as records and extract from this string field");
  ce->add_option("--parse", ext.parse_mode, "strict or lenient")->default_val("lenient");

  EvaluateOpts ev;
  CLI::App* cev = app.add_subcommand("evaluate", "Score predictions against a GT corpus");
  cev->add_option("--gt", ev.gt, "Ground-truth corpus")->required();
  cev->add_option("--pred", ev.pred, "Prediction records")->required();
  cev->add_option("--out", ev.out, "Structured report output")->required();
  cev->add_option("--table", ev.table, "Also write the flat table here");
  cev->add_option("--manifest", ev.manifest, "Manifest path (default: <out>.manifest.json)");
  cev->add_option("--vocab", ev.vocab, "Vocabulary file (default: built-in 10 classes)");
  cev->add_option("--tolerance", ev.tolerance, "Joint category+distance window in meters")
      ->default_val(1.0);
  cev->add_option("--jobs", ev.jobs, "Worker threads, 0 = all cores")->default_val(0);

  StatsOpts st;
  CLI::App* cst = app.add_subcommand("stats", "Corpus distributions for plotting");
  cst->add_option("--in", st.in, "Corpus input")->required();
  cst->add_option("--out", st.out, "Output file (structured) or directory (tabular)")
      ->required();
  cst->add_option("--manifest", st.manifest, "Manifest path (default: <out>.manifest.json)");
  cst->add_option("--format", st.format, "structured or tabular")->default_val("structured");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!from_manifest.empty()) {
      if (app.get_subcommands().size() > 0) {
        throw mqa::ConfigError("--from-manifest cannot be combined with a subcommand");
      }
      run_from_manifest(from_manifest);
      return 0;
    }
    if (app.got_subcommand(cg)) {
      run_generate(gen);
    } else if (app.got_subcommand(cs)) {
      run_split(split);
    } else if (app.got_subcommand(cv)) {
      run_validate(val);
    } else if (app.got_subcommand(ct)) {
      run_strip(strip);
    } else if (app.got_subcommand(ce)) {
      run_extract(ext);
    } else if (app.got_subcommand(cev)) {
      run_evaluate(ev);
    } else if (app.got_subcommand(cst)) {
      run_stats(st);
    } else {
      std::fputs(app.help().c_str(), stdout);
      return 2;
    }
    return 0;
  } catch (const mqa::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const mqa::SchemaError& e) {
    std::fprintf(stderr, "schema error: %s\n", e.what());
    return 3;
  } catch (const mqa::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
