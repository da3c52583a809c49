#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>

namespace mqa {

// The ten default detection classes with their plural surface forms.
// Single source of truth for the default vocabulary and for plural
// normalization during answer extraction.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 10>
    kDefaultCategories = {{
        {"car", "cars"},
        {"truck", "trucks"},
        {"bus", "buses"},
        {"trailer", "trailers"},
        {"construction vehicle", "construction vehicles"},
        {"pedestrian", "pedestrians"},
        {"motorcycle", "motorcycles"},
        {"bicycle", "bicycles"},
        {"traffic cone", "traffic cones"},
        {"barrier", "barriers"},
    }};

// Maps a default-class plural to its singular; anything else passes through
// unchanged. Input must already be lowercased/whitespace-normalized.
inline std::string_view singularize_default(std::string_view surface) {
  for (const auto& [singular, plural] : kDefaultCategories) {
    if (surface == plural) return singular;
  }
  return surface;
}

}  // namespace mqa
