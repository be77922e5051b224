#include "nuclab/lamination.hpp"

#include <algorithm>

namespace nuclab {

namespace {

// Joins two boxes along axis a when the projections on all other axes
// intersect; the joined box spans the interval hull on axis a.
std::optional<RBox> join(const RBox& b1, const RBox& b2, int a) {
  RBox out;
  out.n = b1.n;
  for (int j = 0; j < b1.n; ++j) {
    if (j == a) {
      out.lo[j] = std::min(b1.lo[j], b2.lo[j]);
      out.hi[j] = std::max(b1.hi[j], b2.hi[j]);
    } else {
      out.lo[j] = std::max(b1.lo[j], b2.lo[j]);
      out.hi[j] = std::min(b1.hi[j], b2.hi[j]);
      if (out.hi[j] < out.lo[j]) return std::nullopt;
    }
  }
  return out;
}

void insert_pruned(std::vector<RBox>& boxes, const RBox& b) {
  for (const auto& e : boxes)
    if (e.subsumes(b)) return;
  boxes.erase(std::remove_if(boxes.begin(), boxes.end(),
                             [&](const RBox& e) { return b.subsumes(e); }),
              boxes.end());
  boxes.push_back(b);
}

}  // namespace

LaminationHull lamination_hull(const WellSet& K, int order) {
  LaminationHull hull;
  hull.order = order;
  for (int w = 0; w < K.count(); ++w) {
    RBox b;
    b.n = K.n;
    b.lo = b.hi = K.wells[w];
    insert_pruned(hull.boxes, b);
  }
  for (int gen = 1; gen <= order; ++gen) {
    std::vector<RBox> next = hull.boxes;
    size_t m = hull.boxes.size();
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i; j < m; ++j)
        for (int a = 0; a < K.n; ++a)
          if (auto b = join(hull.boxes[i], hull.boxes[j], a)) insert_pruned(next, *b);
    if (next.size() == hull.boxes.size() &&
        std::equal(next.begin(), next.end(), hull.boxes.begin()))
      break;  // fixpoint
    hull.boxes = std::move(next);
  }
  return hull;
}

std::optional<int> lamination_order_of_zero(const WellSet& K, int max_order) {
  if (max_order < 1) throw std::invalid_argument("max_order must be >= 1");
  LaminationHull hull = lamination_hull(K, 0);
  for (int gen = 1; gen <= max_order; ++gen) {
    std::vector<RBox> next = hull.boxes;
    size_t m = hull.boxes.size();
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i; j < m; ++j)
        for (int a = 0; a < K.n; ++a)
          if (auto b = join(hull.boxes[i], hull.boxes[j], a)) insert_pruned(next, *b);
    bool fix = next.size() == hull.boxes.size() &&
               std::equal(next.begin(), next.end(), hull.boxes.begin());
    hull.boxes = std::move(next);
    for (const auto& b : hull.boxes)
      if (b.contains_zero()) return gen;
    if (fix) return std::nullopt;  // hull stabilized without reaching 0
  }
  return std::nullopt;
}

}  // namespace nuclab
