#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mqa/markup.hpp"
#include "mqa/numeric.hpp"
#include "mqa/parallel.hpp"
#include "mqa/rng.hpp"
#include "mqa/scene.hpp"
#include "mqa/templates.hpp"

namespace mqa {

// ---------------------------------------------------------------------------
// Ground truth records

struct CategoryCount {
  std::string category;  // canonical singular
  int count = 0;
  bool operator==(const CategoryCount&) const = default;
  bool operator<(const CategoryCount& o) const {
    if (count != o.count) return count > o.count;  // descending count first
    return category < o.category;
  }
};

struct PresenceTruth {
  bool count_form = false;  // false: yes/no answer; true: counted target
  std::string category;     // canonical singular
  bool exists = false;
  int count = 0;
  bool operator==(const PresenceTruth&) const = default;
};

struct DirectionTruth {
  CameraId camera = CameraId::front;
  std::vector<CategoryCount> targets;  // descending count, then name
  bool operator==(const DirectionTruth&) const = default;
};

struct DistanceTruth {
  std::string category;
  double distance = 0.0;  // full precision; rendering rounds to 2 decimals
  bool operator==(const DistanceTruth&) const = default;
};

struct LocationTruth {
  std::string category;
  double x = 0.0;
  double y = 0.0;
  bool operator==(const LocationTruth&) const = default;
};

using GroundTruth = std::variant<PresenceTruth, DirectionTruth, DistanceTruth, LocationTruth>;

struct QAItem {
  std::string item_id;
  std::string scene_id;
  TaskFamily family = TaskFamily::presence;
  std::string question;
  std::string answer_markup;
  GroundTruth ground_truth;
  int n_qa = 1;  // scorable slots: targets for direction, 1 otherwise
  bool operator==(const QAItem&) const = default;
};

struct GenConfig {
  double radius = 40.0;  // task radius for distance/location families
  int max_count = 20;    // counting cap; scenes exceeding it are skipped
};

// ---------------------------------------------------------------------------
// Family generators
//
// Each returns nullopt when the scene admits no valid question for the
// family (the caller tallies the skip). RNG draw order is fixed so corpora
// are reproducible for a given (seed, scenes, config).

inline std::string target_group_markup(int count, std::string_view surface) {
  std::string out = "<target><cnt>";
  out += std::to_string(count);
  out += "</cnt> <obj>";
  out += surface;
  out += "</obj></target>";
  return out;
}

inline std::optional<QAItem> gen_presence(const Scene& scene, Rng& rng, const TemplateBank& bank,
                                          const CategoryVocabulary& vocab,
                                          const GenConfig& cfg = {}) {
  std::vector<int> counts(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    counts[i] = count_category(scene, vocab.at(i).name, vocab);
  }
  bool count_form = rng.coin();
  std::size_t chosen = vocab.size();
  if (!count_form) {
    std::vector<std::size_t> present;
    std::vector<std::size_t> absent;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      (counts[i] > 0 ? present : absent).push_back(i);
    }
    const auto* pool = &present;
    if (!present.empty() && !absent.empty()) {
      pool = rng.coin() ? &present : &absent;
    } else if (present.empty()) {
      pool = &absent;
    }
    if (pool->empty()) return std::nullopt;
    chosen = (*pool)[rng.below(pool->size())];
  } else {
    // counting questions balance zero against nonzero; counts over the cap
    // are not askable
    std::vector<std::size_t> nonzero;
    std::vector<std::size_t> zero;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      if (counts[i] == 0) {
        zero.push_back(i);
      } else if (counts[i] <= cfg.max_count) {
        nonzero.push_back(i);
      }
    }
    const auto* pool = &nonzero;
    if (!nonzero.empty() && !zero.empty()) {
      pool = rng.coin() ? &nonzero : &zero;
    } else if (nonzero.empty()) {
      pool = &zero;
    }
    if (pool->empty()) return std::nullopt;
    chosen = (*pool)[rng.below(pool->size())];
  }

  const VocabEntry& entry = vocab.at(chosen);
  int count = counts[chosen];
  QAItem item;
  item.scene_id = scene.scene_id;
  item.family = TaskFamily::presence;
  item.n_qa = 1;
  if (!count_form) {
    bool exists = count > 0;
    const Template& t =
        bank.pick(exists ? TemplateVariant::presence_yes : TemplateVariant::presence_no, rng);
    SubstMap values = {{"category", entry.name}, {"categories", entry.plural}};
    item.question = substitute(t.question, values);
    item.answer_markup = substitute(t.answer, values);
    item.ground_truth = PresenceTruth{false, entry.name, exists, count};
  } else {
    const Template& t = bank.pick(TemplateVariant::presence_count, rng);
    std::string digits = std::to_string(count);
    std::string surface = vocab.surface_form(entry.name, count);
    SubstMap values = {{"category", entry.name},
                       {"categories", entry.plural},
                       {"count", digits},
                       {"objects", surface}};
    item.question = substitute(t.question, values);
    item.answer_markup = substitute(t.answer, values);
    item.ground_truth = PresenceTruth{true, entry.name, count > 0, count};
  }
  return item;
}

inline std::optional<QAItem> gen_direction(const Scene& scene, Rng& rng, const TemplateBank& bank,
                                           const CategoryVocabulary& vocab,
                                           const GenConfig& cfg = {}) {
  std::vector<std::pair<CameraId, std::vector<CategoryCount>>> eligible;
  for (CameraId cam : kAllCameras) {
    std::map<std::string, int> counts = objects_in_camera(scene, cam);
    if (counts.empty() || counts.size() > 6) continue;
    bool capped = false;
    std::vector<CategoryCount> targets;
    targets.reserve(counts.size());
    for (const auto& [name, count] : counts) {
      if (count > cfg.max_count) capped = true;
      targets.push_back({name, count});
    }
    if (capped) continue;
    std::sort(targets.begin(), targets.end());
    eligible.emplace_back(cam, std::move(targets));
  }
  if (eligible.empty()) return std::nullopt;

  const auto& [cam, targets] = eligible[rng.below(eligible.size())];
  const Template& t = bank.pick(TemplateVariant::direction, rng);

  std::string joined;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i > 0) joined += (i + 1 == targets.size()) ? t.final_joiner : t.joiner;
    joined += target_group_markup(targets[i].count,
                                  vocab.surface_form(targets[i].category, targets[i].count));
  }

  QAItem item;
  item.scene_id = scene.scene_id;
  item.family = TaskFamily::direction;
  item.n_qa = static_cast<int>(targets.size());
  std::string_view cam_surface = camera_surface(cam);
  item.question = substitute(t.question, {{"camera", cam_surface}});
  item.answer_markup = substitute(t.answer, {{"camera", cam_surface}, {"targets", joined}});
  item.ground_truth = DirectionTruth{cam, targets};
  return item;
}

inline std::optional<QAItem> gen_relative_distance(const Scene& scene, Rng& rng,
                                                   const TemplateBank& bank,
                                                   const CategoryVocabulary& vocab,
                                                   const GenConfig& cfg = {}) {
  (void)vocab;
  std::optional<ClosestHit> hit = closest_object(scene, cfg.radius);
  if (!hit) return std::nullopt;
  const Template& t = bank.pick(TemplateVariant::relative_distance, rng);
  std::string rendered = format_meters(hit->distance);
  QAItem item;
  item.scene_id = scene.scene_id;
  item.family = TaskFamily::relative_distance;
  item.n_qa = 1;
  item.question = substitute(t.question, {{"category", hit->object.category}});
  item.answer_markup =
      substitute(t.answer, {{"category", hit->object.category}, {"distance", rendered}});
  item.ground_truth = DistanceTruth{hit->object.category, hit->distance};
  return item;
}

inline std::optional<QAItem> gen_relative_location(const Scene& scene, Rng& rng,
                                                   const TemplateBank& bank,
                                                   const CategoryVocabulary& vocab,
                                                   const GenConfig& cfg = {}) {
  (void)vocab;
  std::optional<ClosestHit> hit = closest_object(scene, cfg.radius);
  if (!hit) return std::nullopt;
  const Template& t = bank.pick(TemplateVariant::relative_location, rng);
  std::string rendered =
      "(" + format_meters(hit->object.x) + ", " + format_meters(hit->object.y) + ")";
  QAItem item;
  item.scene_id = scene.scene_id;
  item.family = TaskFamily::relative_location;
  item.n_qa = 1;
  item.question = substitute(t.question, {{"category", hit->object.category}});
  item.answer_markup =
      substitute(t.answer, {{"category", hit->object.category}, {"location", rendered}});
  item.ground_truth = LocationTruth{hit->object.category, hit->object.x, hit->object.y};
  return item;
}

// ---------------------------------------------------------------------------
// Corpus generation

struct FamilyMix {
  double presence = 1.0;
  double direction = 1.0;
  double relative_distance = 1.0;
  double relative_location = 1.0;

  double weight(TaskFamily f) const {
    switch (f) {
      case TaskFamily::presence: return presence;
      case TaskFamily::direction: return direction;
      case TaskFamily::relative_distance: return relative_distance;
      case TaskFamily::relative_location: return relative_location;
    }
    return 0.0;
  }
};

struct FamilyTally {
  long emitted = 0;
  long skipped = 0;  // attempts with no valid question for the scene
  bool operator==(const FamilyTally&) const = default;
};

struct GenerationCounts {
  std::map<std::string, FamilyTally> per_family;
  long items = 0;
  bool operator==(const GenerationCounts&) const = default;
};

struct GeneratedCorpus {
  std::vector<QAItem> items;
  GenerationCounts counts;
};

// Items derive from one RNG stream per scene, keyed by (seed, scene_id), so
// any worker count yields the identical corpus; output order is scene order.
inline GeneratedCorpus generate_corpus(const std::vector<Scene>& scenes, const FamilyMix& mix,
                                       std::uint64_t seed, const TemplateBank& bank,
                                       const CategoryVocabulary& vocab,
                                       const GenConfig& cfg = {}, int jobs = 1) {
  for (TaskFamily f : kAllFamilies) {
    if (mix.weight(f) < 0.0) throw ConfigError("family mix weights must be >= 0");
  }
  if (mix.presence + mix.direction + mix.relative_distance + mix.relative_location <= 0.0) {
    throw ConfigError("family mix must have a positive weight");
  }

  struct SceneResult {
    std::vector<QAItem> items;
    std::map<std::string, FamilyTally> tallies;
  };
  std::vector<SceneResult> results(scenes.size());

  parallel_for(scenes.size(), jobs, [&](std::size_t si) {
    const Scene& scene = scenes[si];
    SceneResult& res = results[si];
    Rng rng = keyed_stream(seed, "gen", scene.scene_id);
    for (TaskFamily f : kAllFamilies) {
      double w = mix.weight(f);
      int attempts = static_cast<int>(w);
      double frac = w - attempts;
      if (frac > 0.0 && rng.unit() < frac) ++attempts;
      FamilyTally& tally = res.tallies[std::string(family_name(f))];
      for (int a = 0; a < attempts; ++a) {
        std::optional<QAItem> item;
        switch (f) {
          case TaskFamily::presence: item = gen_presence(scene, rng, bank, vocab, cfg); break;
          case TaskFamily::direction: item = gen_direction(scene, rng, bank, vocab, cfg); break;
          case TaskFamily::relative_distance:
            item = gen_relative_distance(scene, rng, bank, vocab, cfg);
            break;
          case TaskFamily::relative_location:
            item = gen_relative_location(scene, rng, bank, vocab, cfg);
            break;
        }
        if (!item) {
          tally.skipped += 1;
          continue;
        }
        item->item_id = scene.scene_id + "#" + std::string(family_name(f)) + "#" +
                        std::to_string(tally.emitted);
        tally.emitted += 1;
        res.items.push_back(std::move(*item));
      }
    }
  });

  GeneratedCorpus out;
  for (TaskFamily f : kAllFamilies) {
    out.counts.per_family[std::string(family_name(f))] = FamilyTally{};
  }
  for (SceneResult& res : results) {
    for (QAItem& item : res.items) out.items.push_back(std::move(item));
    for (const auto& [name, tally] : res.tallies) {
      FamilyTally& agg = out.counts.per_family[name];
      agg.emitted += tally.emitted;
      agg.skipped += tally.skipped;
    }
  }
  out.counts.items = static_cast<long>(out.items.size());
  return out;
}

// ---------------------------------------------------------------------------
// Self-consistency

// Canonical category for a surface under the active vocabulary: vocabulary
// plural/singular match wins; unknown surfaces map to a sentinel that never
// equals a canonical name.
inline constexpr std::string_view kUnknownCategorySentinel = "<unknown-category>";

inline std::string normalize_category(std::string_view surface, const CategoryVocabulary& vocab) {
  std::string norm = normalize_surface(surface);
  if (auto canon = vocab.canonical_for(norm)) return *canon;
  if (auto canon = vocab.canonical_for(singularize_default(norm))) return *canon;
  return std::string(kUnknownCategorySentinel);
}

// True when answer_markup strict-parses and its extracted answers reproduce
// the ground truth record exactly (numeric slots compared through the
// canonical 2-decimal rendering).
inline bool extraction_matches_ground_truth(const QAItem& item, const CategoryVocabulary& vocab) {
  ParseResult parsed = parse_markup(item.answer_markup, ParseMode::strict);
  if (!parsed.ok()) return false;
  std::vector<ExtractedAnswer> answers = extract_answers(parsed.doc);
  for (const ExtractedAnswer& a : answers) {
    if (std::holds_alternative<InvalidSlot>(a)) return false;
  }

  if (const PresenceTruth* gt = std::get_if<PresenceTruth>(&item.ground_truth)) {
    if (!gt->count_form) {
      const YesNo* yn = nullptr;
      for (const auto& a : answers) {
        if (const YesNo* v = std::get_if<YesNo>(&a)) {
          if (yn) return false;
          yn = v;
        }
      }
      return yn && yn->value == gt->exists;
    }
    const TargetPair* pair = nullptr;
    for (const auto& a : answers) {
      if (const TargetPair* p = std::get_if<TargetPair>(&a)) {
        if (pair) return false;
        pair = p;
      }
    }
    return pair && pair->count == gt->count &&
           normalize_category(pair->category, vocab) == gt->category;
  }

  if (const DirectionTruth* gt = std::get_if<DirectionTruth>(&item.ground_truth)) {
    const Camera* cam = nullptr;
    std::vector<CategoryCount> pairs;
    for (const auto& a : answers) {
      if (const Camera* c = std::get_if<Camera>(&a)) {
        if (cam) return false;
        cam = c;
      }
      if (const TargetPair* p = std::get_if<TargetPair>(&a)) {
        pairs.push_back({normalize_category(p->category, vocab), p->count});
      }
    }
    if (!cam || cam->id != gt->camera) return false;
    std::sort(pairs.begin(), pairs.end());
    return pairs == gt->targets;  // gt targets already in canonical order
  }

  if (const DistanceTruth* gt = std::get_if<DistanceTruth>(&item.ground_truth)) {
    const Category* cat = nullptr;
    const Distance* dst = nullptr;
    for (const auto& a : answers) {
      if (const Category* c = std::get_if<Category>(&a)) {
        if (cat) return false;
        cat = c;
      }
      if (const Distance* d = std::get_if<Distance>(&a)) {
        if (dst) return false;
        dst = d;
      }
    }
    return cat && dst && normalize_category(cat->name, vocab) == gt->category &&
           format_meters(dst->meters) == format_meters(gt->distance);
  }

  const LocationTruth* gt = std::get_if<LocationTruth>(&item.ground_truth);
  const Category* cat = nullptr;
  const Location* loc = nullptr;
  for (const auto& a : answers) {
    if (const Category* c = std::get_if<Category>(&a)) {
      if (cat) return false;
      cat = c;
    }
    if (const Location* l = std::get_if<Location>(&a)) {
      if (loc) return false;
      loc = l;
    }
  }
  return gt && cat && loc && normalize_category(cat->name, vocab) == gt->category &&
         format_meters(loc->x) == format_meters(gt->x) &&
         format_meters(loc->y) == format_meters(gt->y);
}

}  // namespace mqa
