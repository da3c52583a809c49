#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mqa/rng.hpp"
#include "mqa/scene.hpp"

using namespace mqa;

namespace {

SceneObject obj(std::string category, double x, double y) {
  SceneObject o;
  o.category = std::move(category);
  o.x = x;
  o.y = y;
  o.camera = camera_for_position(x, y);
  return o;
}

// independent oracle: bearing in degrees, half-open 60-degree sectors
std::optional<CameraId> sector_by_bearing(double x, double y) {
  constexpr double pi = 3.14159265358979323846;
  double deg = std::atan2(y, x) * 180.0 / pi;
  const double edges[] = {-150.0, -90.0, -30.0, 30.0, 90.0, 150.0, 180.0, -180.0};
  for (double e : edges) {
    if (std::fabs(deg - e) < 1e-9) return std::nullopt;  // too close to call
  }
  if (deg >= -30.0 && deg < 30.0) return CameraId::front;
  if (deg >= 30.0 && deg < 90.0) return CameraId::front_left;
  if (deg >= 90.0 && deg < 150.0) return CameraId::back_left;
  if (deg >= 150.0 || deg < -150.0) return CameraId::back;
  if (deg >= -150.0 && deg < -90.0) return CameraId::back_right;
  return CameraId::front_right;
}

}  // namespace

TEST_CASE("camera sectors cover the axes and boundaries") {
  constexpr double t30 = 0.57735026918962576934;  // tan(30 deg)

  CHECK(camera_for_position(1.0, 0.0) == CameraId::front);
  CHECK(camera_for_position(0.0, 0.0) == CameraId::front);  // origin convention
  CHECK(camera_for_position(0.0, 1.0) == CameraId::back_left);    // 90 deg edge
  CHECK(camera_for_position(0.0, -1.0) == CameraId::front_right);  // -90 deg edge
  CHECK(camera_for_position(-1.0, 0.0) == CameraId::back);

  // each sector is half-open at its counterclockwise edge
  CHECK(camera_for_position(1.0, t30) == CameraId::front_left);     // +30 deg
  CHECK(camera_for_position(1.0, -t30) == CameraId::front);         // -30 deg
  CHECK(camera_for_position(-1.0, t30) == CameraId::back);          // +150 deg
  CHECK(camera_for_position(-1.0, -t30) == CameraId::back_right);   // -150 deg

  CHECK(camera_for_position(1.0, 1.0) == CameraId::front_left);
  CHECK(camera_for_position(-1.0, 1.0) == CameraId::back_left);
  CHECK(camera_for_position(-1.0, -1.0) == CameraId::back_right);
  CHECK(camera_for_position(1.0, -1.0) == CameraId::front_right);
}

TEST_CASE("camera sectors agree with an atan2 oracle") {
  Rng rng(99);
  int checked = 0;
  for (int i = 0; i < 20000; ++i) {
    double x = rng.range_real(-60.0, 60.0);
    double y = rng.range_real(-60.0, 60.0);
    auto expect = sector_by_bearing(x, y);
    if (!expect) continue;
    ++checked;
    if (camera_for_position(x, y) != *expect) {
      CAPTURE(x, y);
      REQUIRE(camera_for_position(x, y) == *expect);
    }
  }
  CHECK(checked > 19000);
}

TEST_CASE("default vocabulary holds the ten classes") {
  CategoryVocabulary vocab = CategoryVocabulary::defaults();
  REQUIRE(vocab.size() == 10);
  CHECK(vocab.contains("car"));
  CHECK(vocab.contains("traffic cone"));
  CHECK_FALSE(vocab.contains("cars"));

  CHECK(vocab.canonical_for("trucks").value() == "truck");
  CHECK(vocab.canonical_for("truck").value() == "truck");
  CHECK(vocab.canonical_for("traffic cones").value() == "traffic cone");
  CHECK_FALSE(vocab.canonical_for("dragon").has_value());

  CHECK(vocab.surface_form("bus", 1) == "bus");
  CHECK(vocab.surface_form("bus", 3) == "buses");
  CHECK(vocab.surface_form("bus", 0) == "buses");
  CHECK_THROWS_AS(vocab.surface_form("dragon", 1), SchemaError);
}

TEST_CASE("vocabulary construction rejects bad entry lists") {
  CHECK_THROWS_AS(CategoryVocabulary::from_entries({}), SchemaError);
  CHECK_THROWS_AS(CategoryVocabulary::from_entries({{"", "xs"}}), SchemaError);
  CHECK_THROWS_AS(CategoryVocabulary::from_entries({{"x", "xs"}, {"x", "xes"}}), SchemaError);
  CategoryVocabulary ok = CategoryVocabulary::from_entries({{"x", "xs"}, {"y", "ys"}});
  CHECK(ok.size() == 2);
}

TEST_CASE("synthetic scenes are seed-deterministic") {
  SynthConfig cfg;
  CategoryVocabulary vocab = CategoryVocabulary::defaults();
  auto a = synth_scenes(7, 25, cfg, vocab);
  auto b = synth_scenes(7, 25, cfg, vocab);
  REQUIRE(a.size() == 25);
  REQUIRE(b.size() == 25);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].scene_id == b[i].scene_id);
    REQUIRE(a[i].objects.size() == b[i].objects.size());
    for (std::size_t k = 0; k < a[i].objects.size(); ++k) {
      CHECK(a[i].objects[k].category == b[i].objects[k].category);
      CHECK(a[i].objects[k].x == b[i].objects[k].x);
      CHECK(a[i].objects[k].y == b[i].objects[k].y);
      CHECK(a[i].objects[k].camera == b[i].objects[k].camera);
    }
  }

  auto c = synth_scenes(8, 25, cfg, vocab);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.size() && !any_difference; ++i) {
    if (a[i].objects.size() != c[i].objects.size()) {
      any_difference = true;
    } else {
      for (std::size_t k = 0; k < a[i].objects.size(); ++k) {
        if (a[i].objects[k].x != c[i].objects[k].x) any_difference = true;
      }
    }
  }
  CHECK(any_difference);
}

TEST_CASE("synthetic scenes respect their configuration") {
  SynthConfig cfg;
  cfg.max_objects = 5;
  cfg.coord_range = 10.0;
  CategoryVocabulary vocab = CategoryVocabulary::defaults();
  auto scenes = synth_scenes(3, 50, cfg, vocab);
  for (const Scene& s : scenes) {
    CHECK(s.objects.size() <= 5);
    for (const SceneObject& o : s.objects) {
      CHECK(o.x >= -10.0);
      CHECK(o.x < 10.0);
      CHECK(o.y >= -10.0);
      CHECK(o.y < 10.0);
      CHECK(o.camera == camera_for_position(o.x, o.y));
      CHECK(vocab.contains(o.category));
    }
  }
  CHECK(synth_scenes(3, 0, cfg, vocab).empty());
  CHECK_THROWS_AS(synth_scenes(3, -1, cfg, vocab), ConfigError);
  SynthConfig bad = cfg;
  bad.coord_range = 0.0;
  CHECK_THROWS_AS(synth_scenes(3, 1, bad, vocab), ConfigError);
}

TEST_CASE("closest object matches a brute-force scan") {
  CategoryVocabulary vocab = CategoryVocabulary::defaults();
  SynthConfig cfg;
  auto scenes = synth_scenes(42, 200, cfg, vocab);
  for (const Scene& s : scenes) {
    std::optional<ClosestHit> got = closest_object(s, 40.0);
    std::optional<std::size_t> want;
    double best = 0.0;
    for (std::size_t i = 0; i < s.objects.size(); ++i) {
      double d = std::sqrt(s.objects[i].x * s.objects[i].x + s.objects[i].y * s.objects[i].y);
      if (d > 40.0) continue;
      if (!want || d < best) {
        want = i;
        best = d;
      }
    }
    REQUIRE(got.has_value() == want.has_value());
    if (got) {
      CHECK(got->index == *want);
      CHECK(got->distance == best);
      CHECK(got->object.category == s.objects[*want].category);
    }
  }
}

TEST_CASE("closest object breaks distance ties toward the earlier object") {
  Scene s;
  s.scene_id = "tie";
  s.objects = {obj("car", 3.0, 4.0), obj("bus", 4.0, 3.0)};  // both exactly 5 m
  auto hit = closest_object(s, 40.0);
  REQUIRE(hit.has_value());
  CHECK(hit->index == 0);
  CHECK(hit->distance == 5.0);
  CHECK(hit->object.category == "car");
}

TEST_CASE("closest object honors the radius and rejects bad radii") {
  Scene s;
  s.scene_id = "far";
  s.objects = {obj("car", 50.0, 0.0)};
  CHECK_FALSE(closest_object(s, 40.0).has_value());
  CHECK(closest_object(s, 60.0).has_value());
  CHECK_THROWS_AS(closest_object(s, 0.0), ConfigError);
  CHECK_THROWS_AS(closest_object(s, -1.0), ConfigError);
}

TEST_CASE("per-camera tallies match a manual scan") {
  Scene s;
  s.scene_id = "manual";
  s.objects = {obj("car", 10.0, 0.0), obj("car", 12.0, 1.0), obj("truck", -8.0, 0.0),
               obj("bus", 0.0, 9.0), obj("car", -7.0, -1.0)};
  std::map<std::string, int> front = objects_in_camera(s, CameraId::front);
  CHECK(front == std::map<std::string, int>{{"car", 2}});
  std::map<std::string, int> back = objects_in_camera(s, CameraId::back);
  CHECK(back == std::map<std::string, int>{{"car", 1}, {"truck", 1}});
  CHECK(objects_in_camera(s, CameraId::front_right).empty());

  CategoryVocabulary vocab = CategoryVocabulary::defaults();
  CHECK(count_category(s, "car", vocab) == 3);
  CHECK(count_category(s, "pedestrian", vocab) == 0);
  CHECK_THROWS_AS(count_category(s, "dragon", vocab), UnknownCategoryError);
}

TEST_CASE("keyed rng streams are stable and key-sensitive") {
  Rng a = keyed_stream(7, "gen", "scene-1");
  Rng b = keyed_stream(7, "gen", "scene-1");
  for (int i = 0; i < 16; ++i) CHECK(a.next() == b.next());

  Rng c = keyed_stream(7, "gen", "scene-2");
  Rng d = keyed_stream(8, "gen", "scene-1");
  Rng e = keyed_stream(7, "synth", "scene-1");
  Rng base = keyed_stream(7, "gen", "scene-1");
  std::uint64_t first = base.next();
  CHECK(c.next() != first);
  CHECK(d.next() != first);
  CHECK(e.next() != first);
}

TEST_CASE("rng helpers stay within their ranges") {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t v = rng.below(7);
    CHECK(v < 7);
    int r = rng.range_int(-3, 3);
    CHECK(r >= -3);
    CHECK(r <= 3);
    double u = rng.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(rng.below(1) == 0);
}
