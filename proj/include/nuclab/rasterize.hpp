#pragma once

#include "nuclab/geom.hpp"
#include "nuclab/grid.hpp"

namespace nuclab {

// Center-point sampling of a scene onto a periodic box of side
// padding * diameter(scene), austenite outside the inclusion.  N must be a
// power of two.  Sets feature_warning when the finest scene feature is
// under two grid cells.
GridField rasterize(const Scene& s, int N, double padding = 2.0);

namespace serial {
// Reference rasterizer: linear scan over cells per sample, single thread.
GridField rasterize(const Scene& s, int N, double padding = 2.0);
}

}  // namespace nuclab
