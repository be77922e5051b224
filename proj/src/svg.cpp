#include "nuclab/svg.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nuclab {

namespace {
// fixed phase palette: austenite white, then wells in listed order
const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                          "#b07aa1", "#edc948", "#76b7b2", "#ff9da7"};
}

std::string scene_to_svg(const Scene& s, int width_px) {
  if (s.n != 2) throw std::invalid_argument("scene_to_svg: SVG rendering is 2D only");
  auto [lo, hi] = s.bounding_box();
  double w = hi[0] - lo[0], h = hi[1] - lo[1];
  if (w <= 0 || h <= 0) throw std::invalid_argument("scene_to_svg: empty scene");
  double px = width_px / w;
  int height_px = (int)(h * px) + 1;
  std::string out;
  char buf[512];
  snprintf(buf, sizeof buf,
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
           "viewBox=\"0 0 %d %d\">\n<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
           width_px, height_px, width_px, height_px);
  out += buf;
  for (int c = 0; c < s.cell_count(); ++c) {
    const char* fill =
        s.phase[c] == kAustenite ? "white" : kPalette[s.phase[c] % 8];
    out += "<polygon points=\"";
    for (int k = 0; k < s.cell_size(c); ++k) {
      Vec p = s.vertex(c, k);
      snprintf(buf, sizeof buf, "%.3f,%.3f ", (p[0] - lo[0]) * px, (hi[1] - p[1]) * px);
      out += buf;
    }
    snprintf(buf, sizeof buf, "\" fill=\"%s\" stroke=\"black\" stroke-width=\"0.2\"/>\n", fill);
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

void write_svg(const Scene& s, const std::string& path, int width_px) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << scene_to_svg(s, width_px);
}

}  // namespace nuclab
