#pragma once

#include <optional>
#include <vector>

#include "nuclab/wells.hpp"

namespace nuclab {

// Axis-aligned box in diagonal-value space, possibly degenerate in some axes.
struct RBox {
  std::array<Rational, 3> lo, hi;
  int n = 2;

  bool contains_zero() const {
    for (int j = 0; j < n; ++j)
      if (Rational(0) < lo[j] || hi[j] < Rational(0)) return false;
    return true;
  }
  bool subsumes(const RBox& o) const {
    for (int j = 0; j < n; ++j)
      if (o.lo[j] < lo[j] || hi[j] < o.hi[j]) return false;
    return true;
  }
  friend bool operator==(const RBox& a, const RBox& b) {
    if (a.n != b.n) return false;
    for (int j = 0; j < a.n; ++j)
      if (a.lo[j] != b.lo[j] || a.hi[j] != b.hi[j]) return false;
    return true;
  }
};

struct LaminationHull {
  std::vector<RBox> boxes;
  int order = 0;
};

// Closed lamination hull K^(order) of the well points in diagonal space,
// as a union of axis-aligned boxes.  Generation m+1 joins every pair of
// boxes along every axis whose cross-axis projections intersect.
LaminationHull lamination_hull(const WellSet& K, int order);

// Smallest m with 0 in K^(m), or nullopt if not reached by max_order.
std::optional<int> lamination_order_of_zero(const WellSet& K, int max_order);

}  // namespace nuclab
