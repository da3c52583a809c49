#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mqa/ascii.hpp"
#include "mqa/camera.hpp"
#include "mqa/categories.hpp"
#include "mqa/errors.hpp"
#include "mqa/rng.hpp"

namespace mqa {

// ---------------------------------------------------------------------------
// Vocabulary

struct VocabEntry {
  std::string name;    // canonical singular
  std::string plural;  // surface form for counts != 1
};

class CategoryVocabulary {
 public:
  static CategoryVocabulary defaults() {
    std::vector<VocabEntry> entries;
    entries.reserve(kDefaultCategories.size());
    for (const auto& [name, plural] : kDefaultCategories) {
      entries.push_back({std::string(name), std::string(plural)});
    }
    return CategoryVocabulary(std::move(entries));
  }

  static CategoryVocabulary from_entries(std::vector<VocabEntry> entries) {
    return CategoryVocabulary(std::move(entries));
  }

  std::size_t size() const { return entries_.size(); }
  const VocabEntry& at(std::size_t i) const { return entries_.at(i); }
  const std::vector<VocabEntry>& entries() const { return entries_; }

  bool contains(std::string_view canonical) const {
    for (const VocabEntry& e : entries_) {
      if (e.name == canonical) return true;
    }
    return false;
  }

  // surface must already be lowercased/whitespace-normalized; matches the
  // canonical name or its plural form.
  std::optional<std::string> canonical_for(std::string_view surface) const {
    for (const VocabEntry& e : entries_) {
      if (e.name == surface || e.plural == surface) return e.name;
    }
    return std::nullopt;
  }

  std::string surface_form(std::string_view canonical, int count) const {
    for (const VocabEntry& e : entries_) {
      if (e.name == canonical) return count == 1 ? e.name : e.plural;
    }
    throw SchemaError("category not in vocabulary: " + std::string(canonical), 0, "category");
  }

 private:
  explicit CategoryVocabulary(std::vector<VocabEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw SchemaError("vocabulary must not be empty");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].name.empty()) throw SchemaError("vocabulary entry with empty name");
      for (std::size_t j = i + 1; j < entries_.size(); ++j) {
        if (entries_[i].name == entries_[j].name) {
          throw SchemaError("duplicate vocabulary name: " + entries_[i].name);
        }
      }
    }
  }

  std::vector<VocabEntry> entries_;
};

// ---------------------------------------------------------------------------
// Scenes

// Ego frame: x forward, y left, meters.
struct SceneObject {
  std::string category;
  double x = 0.0;
  double y = 0.0;
  CameraId camera = CameraId::front;
};

struct Scene {
  std::string scene_id;
  std::vector<SceneObject> objects;
};

// Sector rule: front covers bearing [-30, 30), then 60-degree sectors
// counterclockwise, each half-open at its upper edge. Implemented with
// sign/slope comparisons so the result is bit-stable across libm builds;
// the unit tests cross-check against atan2.
inline CameraId camera_for_position(double x, double y) {
  constexpr double t = 0.57735026918962576934;  // tan(30 deg)
  if (x == 0.0 && y == 0.0) return CameraId::front;
  if (y >= 0.0) {
    if (x > 0.0) {
      if (y < x * t) return CameraId::front;
      return CameraId::front_left;
    }
    if (y > -x * t) return CameraId::back_left;
    return CameraId::back;
  }
  if (x > 0.0) {
    if (-y <= x * t) return CameraId::front;
    return CameraId::front_right;
  }
  if (x == 0.0) return CameraId::front_right;
  if (-y >= -x * t) return CameraId::back_right;
  return CameraId::back;
}

struct SynthConfig {
  int max_objects = 24;        // per scene; actual count uniform in [0, max]
  double coord_range = 55.0;   // +/- meters, so some objects exceed the 40 m task radius
};

inline std::vector<Scene> synth_scenes(std::uint64_t seed, int n, const SynthConfig& cfg,
                                       const CategoryVocabulary& vocab) {
  if (n < 0) throw ConfigError("synth scene count must be >= 0");
  if (cfg.max_objects < 0) throw ConfigError("max objects must be >= 0");
  if (!(cfg.coord_range > 0.0)) throw ConfigError("coordinate range must be positive");
  std::vector<Scene> scenes;
  scenes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "synth-%06d", i);
    Scene s;
    s.scene_id = id;
    Rng rng = keyed_stream(seed, "synth", s.scene_id);
    int k = rng.range_int(0, cfg.max_objects);
    s.objects.reserve(static_cast<std::size_t>(k));
    for (int o = 0; o < k; ++o) {
      SceneObject obj;
      obj.category = vocab.at(rng.below(vocab.size())).name;
      obj.x = rng.range_real(-cfg.coord_range, cfg.coord_range);
      obj.y = rng.range_real(-cfg.coord_range, cfg.coord_range);
      obj.camera = camera_for_position(obj.x, obj.y);
      s.objects.push_back(std::move(obj));
    }
    scenes.push_back(std::move(s));
  }
  return scenes;
}

// ---------------------------------------------------------------------------
// Queries

struct ClosestHit {
  SceneObject object;
  double distance = 0.0;
  std::size_t index = 0;  // position in scene order
};

// Nearest object within radius; ties break to the smaller scene index.
inline std::optional<ClosestHit> closest_object(const Scene& scene, double radius = 40.0) {
  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  std::optional<ClosestHit> best;
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    const SceneObject& o = scene.objects[i];
    double d = std::sqrt(o.x * o.x + o.y * o.y);
    if (d > radius) continue;
    if (!best || d < best->distance) best = ClosestHit{o, d, i};
  }
  return best;
}

inline std::map<std::string, int> objects_in_camera(const Scene& scene, CameraId cam) {
  std::map<std::string, int> counts;
  for (const SceneObject& o : scene.objects) {
    if (o.camera == cam) counts[o.category] += 1;
  }
  return counts;
}

inline int count_category(const Scene& scene, std::string_view category,
                          const CategoryVocabulary& vocab) {
  if (!vocab.contains(category)) {
    throw UnknownCategoryError("unknown category: " + std::string(category), 0,
                               std::string(category));
  }
  int n = 0;
  for (const SceneObject& o : scene.objects) {
    if (o.category == category) ++n;
  }
  return n;
}

}  // namespace mqa
