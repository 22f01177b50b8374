#pragma once

#include "pplot/scene.hpp"

#include "json.hpp"

namespace pplot {

inline constexpr int kSceneVersion = 1;

/// Versioned scene document: geometry, the layout the scene was built from
/// (so clients can map pixels to time), the hover time, and the mark tree.
[[nodiscard]] nlohmann::json scene_to_json(const Scene& scene);

[[nodiscard]] nlohmann::json layout_to_json(const ZoneLayout& layout);

}  // namespace pplot
