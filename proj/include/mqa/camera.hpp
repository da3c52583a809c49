#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "mqa/ascii.hpp"

namespace mqa {

// The six surround views. Enumerator order is the canonical listing order
// used by reports and stats.
enum class CameraId { front, front_left, front_right, back, back_left, back_right };

inline constexpr std::array<CameraId, 6> kAllCameras = {
    CameraId::front,      CameraId::front_left, CameraId::front_right,
    CameraId::back,       CameraId::back_left,  CameraId::back_right,
};

// Stable identifier, used in file formats.
inline std::string_view camera_id_name(CameraId c) {
  switch (c) {
    case CameraId::front: return "front";
    case CameraId::front_left: return "front_left";
    case CameraId::front_right: return "front_right";
    case CameraId::back: return "back";
    case CameraId::back_left: return "back_left";
    case CameraId::back_right: return "back_right";
  }
  return "front";
}

// Surface form as it appears inside <cam> content.
inline std::string_view camera_surface(CameraId c) {
  switch (c) {
    case CameraId::front: return "front";
    case CameraId::front_left: return "front left";
    case CameraId::front_right: return "front right";
    case CameraId::back: return "back";
    case CameraId::back_left: return "back left";
    case CameraId::back_right: return "back right";
  }
  return "front";
}

// Accepts surface or identifier form, any case, '_' or ' ' separated.
inline std::optional<CameraId> camera_from_string(std::string_view s) {
  std::string norm;
  norm.reserve(s.size());
  for (char ch : s) {
    if (ch == '_' || ascii_space(ch)) {
      if (!norm.empty() && norm.back() != ' ') norm += ' ';
    } else {
      norm += ascii_lower(ch);
    }
  }
  while (!norm.empty() && norm.back() == ' ') norm.pop_back();
  for (CameraId c : kAllCameras) {
    if (norm == camera_surface(c)) return c;
  }
  return std::nullopt;
}

}  // namespace mqa
