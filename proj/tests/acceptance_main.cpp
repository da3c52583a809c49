// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line with
// its runtime; the process exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mqa/corpus_io.hpp"
#include "mqa/evaluate.hpp"
#include "mqa/generate.hpp"
#include "mqa/markup.hpp"
#include "mqa/metrics.hpp"
#include "mqa/numeric.hpp"
#include "mqa/rng.hpp"
#include "mqa/scene.hpp"
#include "mqa/stats.hpp"
#include "mqa/templates.hpp"
#include "mqa/tokenize.hpp"

using namespace mqa;

namespace {

struct Check {
  long failures = 0;
  std::vector<std::string> messages;

  void operator()(bool ok, const std::string& msg) {
    if (ok) return;
    failures += 1;
    if (messages.size() < 8) messages.push_back(msg);
  }
};

const CategoryVocabulary& vocab() {
  static const CategoryVocabulary v = CategoryVocabulary::defaults();
  return v;
}

std::string fmt3(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Grammar round trip under fuzzing

std::string fuzz_string(Rng& rng) {
  static const std::vector<std::string_view> pool = {
      "plain text ",
      "<obj>car</obj>",
      "<obj>cars",
      "<ans>Yes</ans>",
      "<ans></ans>",
      "<cnt>3</cnt>",
      "<cam>back left</cam>",
      "<dst>5.00</dst>",
      "<loc>(3.43, 1.41)</loc>",
      "<target><cnt>2</cnt> <obj>buses</obj></target>",
      "<target><obj>car</obj> <cnt>1</cnt></target>",
      "<target><cnt>2</cnt></target>",
      "<target>",
      "</target>",
      "</obj>",
      "<bogus>",
      "</bogus>",
      "<<>>",
      "<",
      ">",
      "<obj attr=1>x</obj>",
      "<OBJ>x</OBJ>",
      "<target><target><cnt>1</cnt> <obj>a</obj></target></target>",
      "\n",
      "\t ",
      "tail",
      "3.43",
      "<cnt>many</cnt>",
  };
  std::string s;
  std::size_t parts = rng.below(9);
  for (std::size_t i = 0; i < parts; ++i) s += pool[rng.below(pool.size())];
  // random mutations: byte flips, insertions, deletions
  std::size_t mutations = rng.below(4);
  for (std::size_t m = 0; m < mutations && !s.empty(); ++m) {
    std::size_t at = rng.below(s.size());
    switch (rng.below(3)) {
      case 0: s[at] = static_cast<char>(32 + rng.below(95)); break;
      case 1: s.insert(at, 1, static_cast<char>(32 + rng.below(95))); break;
      default: s.erase(at, 1); break;
    }
  }
  return s;
}

void criterion_round_trip(Check& check) {
  auto start = std::chrono::steady_clock::now();
  Rng rng(20260816);
  const int kStrings = 12000;
  for (int i = 0; i < kStrings; ++i) {
    std::string s = fuzz_string(rng);
    try {
      ParseResult strict = parse_markup(s, ParseMode::strict);
      ParseResult lenient = parse_markup(s, ParseMode::lenient);
      check(render(strict.doc) == s, "strict render mismatch on: " + s);
      check(render(lenient.doc) == s, "lenient render mismatch on: " + s);
      check(strict.issues.size() == lenient.issues.size(),
            "mode-dependent issue count on: " + s);
    } catch (const std::exception& e) {
      check(false, std::string("parse threw (") + e.what() + ") on: " + s);
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(secs < 10.0, "round-trip fuzzing exceeded 10 s: " + fmt3(secs));
}

// ---------------------------------------------------------------------------
// 2. Generation self-consistency

void criterion_generation(Check& check) {
  auto start = std::chrono::steady_clock::now();
  std::vector<Scene> scenes = synth_scenes(7001, 1000, SynthConfig{}, vocab());
  GeneratedCorpus corpus =
      generate_corpus(scenes, FamilyMix{}, 7001, TemplateBank::builtin(), vocab(), {}, 4);
  check(corpus.items.size() >= 2000, "expected a few thousand items from 1000 scenes");
  for (const QAItem& item : corpus.items) {
    check(extraction_matches_ground_truth(item, vocab()),
          "extraction mismatch on " + item.item_id + ": " + item.answer_markup);
    if (const PresenceTruth* t = std::get_if<PresenceTruth>(&item.ground_truth)) {
      if (t->count_form) check(t->count >= 0 && t->count <= 20, "count cap: " + item.item_id);
      check(item.n_qa == 1, "presence n_qa: " + item.item_id);
    } else if (const DirectionTruth* t = std::get_if<DirectionTruth>(&item.ground_truth)) {
      for (const CategoryCount& p : t->targets) {
        check(p.count >= 1 && p.count <= 20, "target count cap: " + item.item_id);
      }
      check(item.n_qa >= 1 && item.n_qa <= 6, "direction n_qa bounds: " + item.item_id);
    } else if (const DistanceTruth* t = std::get_if<DistanceTruth>(&item.ground_truth)) {
      check(t->distance <= 40.0, "distance beyond task radius: " + item.item_id);
    } else if (const LocationTruth* t = std::get_if<LocationTruth>(&item.ground_truth)) {
      check(std::hypot(t->x, t->y) <= 40.0, "location beyond task radius: " + item.item_id);
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(secs < 30.0, "generation self-consistency exceeded 30 s: " + fmt3(secs));
}

// ---------------------------------------------------------------------------
// 3. Geometric oracle

void criterion_geometry(Check& check) {
  std::vector<Scene> scenes = synth_scenes(555, 1000, SynthConfig{}, vocab());
  for (const Scene& scene : scenes) {
    // closest object by brute force
    bool found = false;
    std::size_t best_i = 0;
    double best_d = 0.0;
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
      const SceneObject& o = scene.objects[i];
      double d = std::sqrt(o.x * o.x + o.y * o.y);
      if (d > 40.0) continue;
      if (!found || d < best_d) {
        found = true;
        best_i = i;
        best_d = d;
      }
    }
    std::optional<ClosestHit> hit = closest_object(scene, 40.0);
    check(hit.has_value() == found, "closest presence mismatch: " + scene.scene_id);
    if (hit && found) {
      check(hit->index == best_i && hit->distance == best_d &&
                hit->object.category == scene.objects[best_i].category,
            "closest mismatch: " + scene.scene_id);
    }

    for (CameraId cam : kAllCameras) {
      std::map<std::string, int> expect;
      for (const SceneObject& o : scene.objects) {
        if (o.camera == cam) expect[o.category] += 1;
      }
      check(objects_in_camera(scene, cam) == expect,
            "camera census mismatch: " + scene.scene_id);
    }
    for (std::size_t c = 0; c < vocab().size(); ++c) {
      const std::string& name = vocab().at(c).name;
      int expect = 0;
      for (const SceneObject& o : scene.objects) {
        if (o.category == name) expect += 1;
      }
      check(count_category(scene, name, vocab()) == expect,
            "category count mismatch: " + scene.scene_id + " " + name);
    }
  }
}

// ---------------------------------------------------------------------------
// 4. Metric correctness

void criterion_metrics(Check& check) {
  using Tokens = std::vector<std::string>;
  Tokens ref3 = tokenize("the cat sat");
  double truncated = bleu_corpus({ref3}, {tokenize("the cat")}, 1);
  check(std::fabs(truncated - std::exp(-0.5)) < 1e-9,
        "bleu truncation fixture: " + std::to_string(truncated));
  double swapped = meteor_sentence(ref3, tokenize("the sat cat"));
  check(std::fabs(swapped - 0.5) < 1e-9, "meteor swap fixture: " + std::to_string(swapped));
  double rouge = rouge1_f_sentence(tokenize("a b b"), tokenize("b"));
  check(std::fabs(rouge - 0.5) < 1e-9, "rouge fixture: " + std::to_string(rouge));

  nlohmann::json fixture = nlohmann::json::parse(
      read_text_file(std::string(MQA_SOURCE_DIR) + "/tests/golden/sgp_fixture.json"));
  nlohmann::json golden = nlohmann::json::parse(
      read_text_file(std::string(MQA_SOURCE_DIR) + "/tests/golden/sgp_golden.json"));
  std::vector<std::string> refs;
  std::vector<std::string> hyps;
  for (const auto& pair : fixture) {
    refs.push_back(pair.at("ref").get<std::string>());
    hyps.push_back(pair.at("hyp").get<std::string>());
  }
  check(refs.size() == 10, "golden fixture should hold 10 pairs");
  SgpScores s = sgp_suite(refs, hyps);
  auto near = [&](double got, const char* key) {
    double want = golden.at(key).get<double>();
    check(std::fabs(got - want) < 1e-9,
          std::string(key) + " drifted from golden: " + std::to_string(got));
  };
  near(s.bleu1, "bleu1");
  near(s.bleu4, "bleu4");
  near(s.meteor, "meteor");
  near(s.rouge1_f, "rouge1_f");
  near(s.avg, "avg");
  const auto& pm = golden.at("per_sentence_meteor");
  const auto& pr = golden.at("per_sentence_rouge1_f");
  for (std::size_t i = 0; i < refs.size(); ++i) {
    double m = meteor_sentence(tokenize(refs[i]), tokenize(hyps[i]));
    double r = rouge1_f_sentence(tokenize(refs[i]), tokenize(hyps[i]));
    check(std::fabs(m - pm[i].get<double>()) < 1e-9,
          "per-sentence meteor drifted at pair " + std::to_string(i));
    check(std::fabs(r - pr[i].get<double>()) < 1e-9,
          "per-sentence rouge drifted at pair " + std::to_string(i));
  }
}

// ---------------------------------------------------------------------------
// 5. Self-evaluation identity on a 2,000-item corpus

void criterion_self_evaluation(Check& check) {
  auto start = std::chrono::steady_clock::now();
  std::vector<Scene> scenes = synth_scenes(424242, 600, SynthConfig{}, vocab());
  GeneratedCorpus corpus =
      generate_corpus(scenes, FamilyMix{}, 424242, TemplateBank::builtin(), vocab(), {}, 4);
  check(corpus.items.size() >= 2000,
        "need 2000 items, got " + std::to_string(corpus.items.size()));
  std::vector<QAItem> items(corpus.items.begin(),
                            corpus.items.begin() +
                                std::min<std::size_t>(2000, corpus.items.size()));
  std::vector<PredictionRecord> preds;
  preds.reserve(items.size());
  for (const QAItem& item : items) preds.push_back({item.item_id, item.answer_markup});

  EvalReport r = evaluate_corpus(items, preds, vocab(), {}, 4);
  auto perfect = [&](const Rate& rate, const char* name) {
    check(rate.den > 0, std::string(name) + " has an empty denominator");
    check(rate.num == rate.den, std::string(name) + " below 1.0: " +
                                    std::to_string(rate.num) + "/" + std::to_string(rate.den));
  };
  perfect(r.yes_no, "yes_no_acc");
  perfect(r.cat, "cat_acc");
  perfect(r.cat_count, "cat_count_acc");
  perfect(r.cam, "cam_acc");
  perfect(r.cat_rd, "cat_rd_acc");
  perfect(r.cat_loc, "cat_loc_acc");
  check(r.rd_mae.has_value() && *r.rd_mae == 0.0, "rd_mae should be exactly zero");
  check(r.loc_x_mae.has_value() && *r.loc_x_mae == 0.0, "loc_x_mae should be exactly zero");
  check(r.loc_y_mae.has_value() && *r.loc_y_mae == 0.0, "loc_y_mae should be exactly zero");
  check(r.missing_predictions == 0 && r.missing_slots == 0 && r.invalid_slots == 0 &&
            r.spurious_slots == 0,
        "self-evaluation should have clean slot tallies");
  for (const char* key : {"bleu1", "bleu4", "meteor", "rouge1_f", "avg"}) {
    double v = std::string_view(key) == "bleu1"      ? r.sgp.bleu1
               : std::string_view(key) == "bleu4"    ? r.sgp.bleu4
               : std::string_view(key) == "meteor"   ? r.sgp.meteor
               : std::string_view(key) == "rouge1_f" ? r.sgp.rouge1_f
                                                     : r.sgp.avg;
    check(fmt3(v) == "1.000", std::string("sgp ") + key + " renders as " + fmt3(v));
  }
  check(r.sgp.bleu1 == 1.0 && r.sgp.bleu4 == 1.0 && r.sgp.rouge1_f == 1.0,
        "echoed answers should hit the exact n-gram ceilings");
  for (const auto& [n, rates] : r.by_n_qa) {
    check(rates.cat.num == rates.cat.den && rates.cat_count.num == rates.cat_count.den,
          "bucket n_qa=" + std::to_string(n) + " below 1.0");
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check(secs < 60.0, "self-evaluation exceeded 60 s: " + fmt3(secs));
}

// ---------------------------------------------------------------------------
// 6. Corruption calibration on a direction-only corpus

void criterion_corruption(Check& check) {
  std::vector<Scene> scenes = synth_scenes(31337, 400, SynthConfig{}, vocab());
  GeneratedCorpus corpus = generate_corpus(scenes, FamilyMix{0.0, 1.0, 0.0, 0.0}, 31337,
                                           TemplateBank::builtin(), vocab(), {}, 4);
  check(corpus.items.size() >= 200,
        "need 200 direction items, got " + std::to_string(corpus.items.size()));
  std::vector<QAItem> items(corpus.items.begin(),
                            corpus.items.begin() +
                                std::min<std::size_t>(200, corpus.items.size()));

  long total_pairs = 0;
  for (const QAItem& item : items) total_pairs += item.n_qa;
  long k = std::llround(0.30 * static_cast<double>(total_pairs));
  auto corrupt_pair = [&](long p) {
    return (p + 1) * k / total_pairs > p * k / total_pairs;  // exactly k evenly spread picks
  };

  std::vector<PredictionRecord> preds;
  preds.reserve(items.size());
  long ordinal = 0;
  long corrupted = 0;
  for (const QAItem& item : items) {
    const DirectionTruth& truth = std::get<DirectionTruth>(item.ground_truth);
    std::string text = "In the <cam>";
    text += camera_surface(truth.camera);
    text += "</cam>, ";
    for (std::size_t i = 0; i < truth.targets.size(); ++i) {
      if (i > 0) text += " and ";
      int count = truth.targets[i].count;
      if (corrupt_pair(ordinal)) {
        count += 100;  // can never collide with a capped true count
        corrupted += 1;
      }
      ordinal += 1;
      text += target_group_markup(count, vocab().surface_form(truth.targets[i].category, count));
    }
    text += " are detected.";
    preds.push_back({item.item_id, text});
  }
  check(corrupted == k, "corruption schedule drifted: " + std::to_string(corrupted) +
                            " of planned " + std::to_string(k));

  EvalReport r = evaluate_corpus(items, preds, vocab());
  check(r.cat.num == total_pairs && r.cat.den == total_pairs,
        "category accuracy should be unchanged by count corruption");
  check(r.cat_count.den == total_pairs && r.cat_count.num == total_pairs - k,
        "joint accuracy should miss exactly the corrupted pairs: " +
            std::to_string(r.cat_count.num) + "/" + std::to_string(r.cat_count.den));
  check(r.cam.num == static_cast<long>(items.size()), "cameras were echoed and should all hit");

  long bucket_cat_den = 0;
  long bucket_joint_num = 0;
  for (const auto& [n, rates] : r.by_n_qa) {
    check(rates.cat_count.num <= rates.cat.num,
          "bucket n_qa=" + std::to_string(n) + " joint accuracy above category accuracy");
    check(rates.cat.den == rates.cat_count.den,
          "bucket n_qa=" + std::to_string(n) + " denominators disagree");
    bucket_cat_den += rates.cat.den;
    bucket_joint_num += rates.cat_count.num;
  }
  check(bucket_cat_den == total_pairs, "buckets should partition the slot denominators");
  check(bucket_joint_num == total_pairs - k, "buckets should partition the joint numerators");
}

// ---------------------------------------------------------------------------
// 7. CLI determinism across worker counts

void criterion_cli_determinism(Check& check) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "mqa_acceptance_cli";
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir);

  auto run = [&](const std::string& args) {
    std::string cmd = std::string(MQA_CLI_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    check(rc == 0, "command failed (" + std::to_string(rc) + "): " + cmd);
    return rc == 0;
  };

  std::string c1 = (dir / "c1.jsonl").string();
  std::string c4 = (dir / "c4.jsonl").string();
  bool ok = true;
  ok &= run("generate --synth 500 --seed 7 --jobs 1 --out " + c1);
  ok &= run("generate --synth 500 --seed 7 --jobs 4 --out " + c4);
  std::string s1 = (dir / "s1.json").string();
  std::string s4 = (dir / "s4.json").string();
  ok &= run("stats --in " + c1 + " --out " + s1 + " --format structured");
  ok &= run("stats --in " + c4 + " --out " + s4 + " --format structured");
  if (!ok) return;

  check(read_text_file(c1) == read_text_file(c4),
        "corpora differ across --jobs 1 and --jobs 4");
  check(read_text_file(s1) == read_text_file(s4),
        "stats outputs differ across --jobs 1 and --jobs 4");
  check(!load_corpus(c1).empty(), "generated corpus should not be empty");
}

// ---------------------------------------------------------------------------
// 8. Statistics support bounds and conservation

void criterion_stats_shape(Check& check) {
  std::vector<Scene> scenes = synth_scenes(909, 500, SynthConfig{}, vocab());
  GeneratedCorpus corpus =
      generate_corpus(scenes, FamilyMix{}, 909, TemplateBank::builtin(), vocab(), {}, 4);
  StatsBundle b = compute_stats(corpus.items);

  for (const auto& [count, c] : b.count_hist) {
    check(count >= 0 && count <= 20,
          "count histogram key outside [0, 20]: " + std::to_string(count));
  }
  for (const auto& [n, c] : b.n_qa_hist) {
    check(n >= 1 && n <= 6, "n_qa histogram key outside [1, 6]: " + std::to_string(n));
  }

  long items = static_cast<long>(corpus.items.size());
  long n_qa_total = 0;
  for (const auto& [n, c] : b.n_qa_hist) n_qa_total += c;
  check(n_qa_total == items, "n_qa histogram must cover every item exactly once");
  long family_total = 0;
  for (const auto& [name, c] : b.per_family_counts) family_total += c;
  check(family_total == items, "family counts must cover every item exactly once");

  long presence_yes_no = 0;
  long presence_counts = 0;
  long direction_targets = 0;
  long rd_items = 0;
  long loc_items = 0;
  for (const QAItem& item : corpus.items) {
    if (const PresenceTruth* t = std::get_if<PresenceTruth>(&item.ground_truth)) {
      (t->count_form ? presence_counts : presence_yes_no) += 1;
    } else if (const DirectionTruth* t = std::get_if<DirectionTruth>(&item.ground_truth)) {
      direction_targets += static_cast<long>(t->targets.size());
      check(std::get<DirectionTruth>(item.ground_truth).targets.size() ==
                static_cast<std::size_t>(item.n_qa),
            "direction n_qa must equal its target count");
    } else if (const DistanceTruth* t = std::get_if<DistanceTruth>(&item.ground_truth)) {
      check(t->distance >= 0.0 && t->distance <= 40.0, "distance outside [0, 40]");
      rd_items += 1;
    } else {
      loc_items += 1;
    }
  }
  check(b.yes_count + b.no_count == presence_yes_no,
        "yes/no tallies must cover the polar presence items");
  long count_slots = 0;
  for (const auto& [count, c] : b.count_hist) count_slots += c;
  check(count_slots == presence_counts + direction_targets,
        "count histogram must cover counted-presence items plus direction targets");
  long dist_total = 0;
  for (long c : b.distance_hist) dist_total += c;
  check(dist_total == rd_items, "distance histogram must cover every distance item");
  long grid_total = 0;
  for (long c : b.location_grid) grid_total += c;
  check(grid_total == loc_items, "location grid must cover every location item");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    void (*fn)(Check&);
  };
  const std::vector<Criterion> criteria = {
      {1, "markup round trip over 12,000 fuzzed strings, both modes, under 10 s",
       criterion_round_trip},
      {2, "generated items reproduce their ground truth with capped counts, under 30 s",
       criterion_generation},
      {3, "closest-object and camera censuses match brute force on 1,000 scenes",
       criterion_geometry},
      {4, "metric fixtures and the frozen 10-pair golden corpus agree to 1e-9",
       criterion_metrics},
      {5, "self-evaluation of a 2,000-item corpus is perfect, under 60 s",
       criterion_self_evaluation},
      {6, "30% count corruption moves joint accuracy by exactly the injected fraction",
       criterion_corruption},
      {7, "command-line generate and stats are byte-identical across worker counts",
       criterion_cli_determinism},
      {8, "corpus statistics respect the documented supports and conserve totals",
       criterion_stats_shape},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      c.fn(check);
    } catch (const std::exception& e) {
      check(false, std::string("unhandled exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = check.failures == 0;
    std::printf("%s  criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.label, secs);
    if (!ok) {
      failed += 1;
      std::printf("      %ld check(s) failed, first %zu:\n", check.failures,
                  check.messages.size());
      for (const std::string& msg : check.messages) {
        std::printf("      - %s\n", msg.c_str());
      }
    }
  }
  return failed;
}
