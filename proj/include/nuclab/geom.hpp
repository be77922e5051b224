#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nuclab/wells.hpp"

namespace nuclab {

using Vec = std::array<double, 3>;   // first n entries used
using Mat = std::array<double, 9>;   // row-major n x n in the top-left block

inline Vec vec2(double x, double y) { return {x, y, 0.0}; }
inline Vec vec3(double x, double y, double z) { return {x, y, z}; }

inline double dot(const Vec& a, const Vec& b, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}
inline Vec sub(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec add(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec scale(const Vec& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }
inline Vec cross3(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec& a, int n) { return std::sqrt(dot(a, a, n)); }

inline Vec matvec(const Mat& m, const Vec& x, int n) {
  Vec y{0, 0, 0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y[i] += m[i * 3 + j] * x[j];
  return y;
}
inline Mat mat_zero() { return {0, 0, 0, 0, 0, 0, 0, 0, 0}; }
inline Mat mat_diag(const std::array<double, 3>& d) {
  Mat m = mat_zero();
  m[0] = d[0]; m[4] = d[1]; m[8] = d[2];
  return m;
}
inline double frob2(const Mat& a, const Mat& b, int n) {
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double t = a[i * 3 + j] - b[i * 3 + j];
      s += t * t;
    }
  return s;
}

// Cell attribute flags.
enum CellFlags : uint8_t {
  kCellExempt = 1,       // cutoff / interpolation cell: phase-gradient match not required
  kCellTransition = 2,   // zero-measure or auxiliary transition marker
};

// A microstructure: a partition of a compact inclusion domain into convex
// polytopal cells carrying a phase label and the affine deformation
// u(x) = M (x - v0) + u0 on each cell.  Storage is struct-of-arrays; cells
// with many congruent copies are cheap.  In 3D every cell is a tetrahedron.
struct Scene {
  int n = 2;
  WellSet wells;
  std::string family;    // construction family that produced the scene
  double declared_volume = 0;  // |supp chi| the construction promises

  std::vector<double> verts;       // coordinates, n per vertex
  std::vector<int32_t> cell_vtx;   // concatenated vertex ids
  std::vector<int32_t> cell_off;   // size cells+1
  std::vector<double> grad;        // n*n per cell, row-major
  std::vector<double> u0;          // n per cell: u at the cell's first vertex
  std::vector<int16_t> phase;      // kAustenite or well index
  std::vector<uint8_t> flags;

  int cell_count() const { return (int)phase.size(); }
  int cell_size(int c) const { return cell_off[c + 1] - cell_off[c]; }
  Vec vertex(int c, int k) const {
    const double* p = &verts[(size_t)cell_vtx[cell_off[c] + k] * n];
    return n == 2 ? vec2(p[0], p[1]) : vec3(p[0], p[1], p[2]);
  }
  Mat gradient(int c) const {
    Mat m = mat_zero();
    const double* g = &grad[(size_t)c * n * n];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i * 3 + j] = g[i * n + j];
    return m;
  }
  Vec u_at(int c, const Vec& x) const {
    Vec v0 = vertex(c, 0);
    Vec r = matvec(gradient(c), sub(x, v0), n);
    for (int i = 0; i < n; ++i) r[i] += u0[(size_t)c * n + i];
    return r;
  }
  Mat chi(int c) const {
    if (phase[c] == kAustenite) return mat_zero();
    return mat_diag(wells.diag_d(phase[c]));
  }

  double cell_volume(int c) const;
  // Sum of cell volumes for cells whose phase satisfies the predicate.
  double volume_where(const std::function<bool(int16_t)>& pred) const;
  double volume_support() const;  // non-austenite volume
  double volume_total() const;

  std::array<Vec, 2> bounding_box() const;
  double diameter_estimate() const;  // bounding-box diagonal

  // In-place rigid/orthogonal transform x -> Q x + t with Q a signed
  // permutation (axis swap / mirror); u transforms as u' = Q u.
  void transform(const std::array<int, 3>& perm, const std::array<int, 3>& sign, const Vec& t);
  void translate(const Vec& t);
};

// Incremental scene assembly.  add_cell copies vertices verbatim; the
// builder performs no welding (the face matcher works geometrically).
struct SceneBuilder {
  Scene s;
  explicit SceneBuilder(int n, WellSet wells, std::string family = "") {
    s.n = n;
    s.wells = std::move(wells);
    s.family = std::move(family);
    s.cell_off.push_back(0);
  }
  // pts: k vertices, CCW in 2D; u0 is u evaluated at pts[0].
  void add_cell(std::span<const Vec> pts, const Mat& M, const Vec& u_at_v0, int phase,
                uint8_t fl = 0);
  Scene take() { return std::move(s); }
};

double polygon_area(std::span<const Vec> pts);
double tet_volume(const Vec& a, const Vec& b, const Vec& c, const Vec& d);

// Point-in-cell test with tolerance eps (2D convex polygon / 3D tetrahedron).
bool cell_contains(const Scene& s, int c, const Vec& p, double eps);

std::string scene_to_json(const Scene& s);

}  // namespace nuclab
