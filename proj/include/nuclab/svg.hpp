#pragma once

#include <string>

#include "nuclab/geom.hpp"

namespace nuclab {

// Static SVG rendering of a 2D scene: fixed phase -> color mapping, jump-set
// strokes on phase boundaries.  Throws for 3D scenes.
std::string scene_to_svg(const Scene& s, int width_px = 800);
void write_svg(const Scene& s, const std::string& path, int width_px = 800);

}  // namespace nuclab
