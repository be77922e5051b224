#include "nuclab/geom.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "json.hpp"

namespace nuclab {

void SceneBuilder::add_cell(std::span<const Vec> pts, const Mat& M, const Vec& u_at_v0,
                            int phase, uint8_t fl) {
  const int n = s.n;
  if ((int)pts.size() < n + 1) throw std::invalid_argument("cell needs at least n+1 vertices");
  if (n == 3 && pts.size() != 4) throw std::invalid_argument("3D cells must be tetrahedra");
  for (const Vec& p : pts) {
    int32_t id = (int32_t)(s.verts.size() / n);
    for (int i = 0; i < n; ++i) s.verts.push_back(p[i]);
    s.cell_vtx.push_back(id);
  }
  s.cell_off.push_back((int32_t)s.cell_vtx.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.grad.push_back(M[i * 3 + j]);
  for (int i = 0; i < n; ++i) s.u0.push_back(u_at_v0[i]);
  s.phase.push_back((int16_t)phase);
  s.flags.push_back(fl);
}

double polygon_area(std::span<const Vec> pts) {
  double a = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Vec& p = pts[i];
    const Vec& q = pts[(i + 1) % pts.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

double tet_volume(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  Vec u = sub(b, a), v = sub(c, a), w = sub(d, a);
  return dot(cross3(u, v), w, 3) / 6.0;
}

double Scene::cell_volume(int c) const {
  int k = cell_size(c);
  if (n == 2) {
    double a = 0;
    for (int i = 0; i < k; ++i) {
      Vec p = vertex(c, i), q = vertex(c, (i + 1) % k);
      a += p[0] * q[1] - q[0] * p[1];
    }
    a *= 0.5;
    if (a < 0) throw std::runtime_error("negative cell area (bad orientation)");
    return a;
  }
  double v = tet_volume(vertex(c, 0), vertex(c, 1), vertex(c, 2), vertex(c, 3));
  return std::abs(v);
}

double Scene::volume_where(const std::function<bool(int16_t)>& pred) const {
  double v = 0;
  for (int c = 0; c < cell_count(); ++c)
    if (pred(phase[c])) v += cell_volume(c);
  return v;
}

double Scene::volume_support() const {
  return volume_where([](int16_t p) { return p != kAustenite; });
}

double Scene::volume_total() const {
  return volume_where([](int16_t) { return true; });
}

std::array<Vec, 2> Scene::bounding_box() const {
  Vec lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  size_t m = verts.size() / n;
  for (size_t v = 0; v < m; ++v)
    for (int i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], verts[v * n + i]);
      hi[i] = std::max(hi[i], verts[v * n + i]);
    }
  for (int i = n; i < 3; ++i) lo[i] = hi[i] = 0;
  return {lo, hi};
}

double Scene::diameter_estimate() const {
  auto [lo, hi] = bounding_box();
  return norm(sub(hi, lo), n);
}

void Scene::transform(const std::array<int, 3>& perm, const std::array<int, 3>& sign,
                      const Vec& t) {
  // x'_i = sign[i] * x_{perm[i]} + t_i ; u transforms the same way and the
  // gradient becomes Q M Q^T.
  size_t m = verts.size() / n;
  std::vector<double> nv(verts.size());
  for (size_t v = 0; v < m; ++v)
    for (int i = 0; i < n; ++i)
      nv[v * n + i] = sign[i] * verts[v * n + perm[i]] + t[i];
  verts = std::move(nv);

  std::vector<double> ng(grad.size()), nu(u0.size());
  for (int c = 0; c < cell_count(); ++c) {
    const double* g = &grad[(size_t)c * n * n];
    for (int i = 0; i < n; ++i) {
      nu[(size_t)c * n + i] = sign[i] * u0[(size_t)c * n + perm[i]];
      for (int j = 0; j < n; ++j)
        ng[(size_t)c * n * n + i * n + j] = sign[i] * sign[j] * g[perm[i] * n + perm[j]];
    }
  }
  grad = std::move(ng);
  u0 = std::move(nu);

  // 2D orientation flips if det Q < 0: re-orient polygons.
  int det = sign[0] * sign[1] * sign[2];
  bool swapped = perm[0] != 0 || perm[1] != 1;
  int parity = swapped ? -1 : 1;  // single transposition in 2D
  if (n == 2 && parity * sign[0] * sign[1] < 0) {
    for (int c = 0; c < cell_count(); ++c) {
      int b = cell_off[c], k = cell_size(c);
      for (int i = 1; i <= (k - 1) / 2; ++i) std::swap(cell_vtx[b + i], cell_vtx[b + k - i]);
    }
  }
  (void)det;
}

void Scene::translate(const Vec& t) {
  size_t m = verts.size() / n;
  for (size_t v = 0; v < m; ++v)
    for (int i = 0; i < n; ++i) verts[v * n + i] += t[i];
}

bool cell_contains(const Scene& s, int c, const Vec& p, double eps) {
  int k = s.cell_size(c);
  if (s.n == 2) {
    for (int i = 0; i < k; ++i) {
      Vec a = s.vertex(c, i), b = s.vertex(c, (i + 1) % k);
      if (cross2(sub(b, a), sub(p, a)) < -eps) return false;
    }
    return true;
  }
  Vec v0 = s.vertex(c, 0), v1 = s.vertex(c, 1), v2 = s.vertex(c, 2), v3 = s.vertex(c, 3);
  double vol = tet_volume(v0, v1, v2, v3);
  if (std::abs(vol) < 1e-300) return false;
  double b0 = tet_volume(p, v1, v2, v3) / vol;
  double b1 = tet_volume(v0, p, v2, v3) / vol;
  double b2 = tet_volume(v0, v1, p, v3) / vol;
  double b3 = tet_volume(v0, v1, v2, p) / vol;
  double e = eps;
  return b0 >= -e && b1 >= -e && b2 >= -e && b3 >= -e;
}

std::string scene_to_json(const Scene& s) {
  nlohmann::json j;
  j["n"] = s.n;
  j["family"] = s.family;
  j["wells"] = s.wells.name;
  j["declared_volume"] = s.declared_volume;
  j["cells"] = s.cell_count();
  auto& cells = j["cell_data"] = nlohmann::json::array();
  for (int c = 0; c < s.cell_count(); ++c) {
    nlohmann::json jc;
    auto& pts = jc["v"] = nlohmann::json::array();
    for (int k = 0; k < s.cell_size(c); ++k) {
      Vec p = s.vertex(c, k);
      nlohmann::json jp = nlohmann::json::array();
      for (int i = 0; i < s.n; ++i) jp.push_back(p[i]);
      pts.push_back(jp);
    }
    auto& g = jc["M"] = nlohmann::json::array();
    Mat M = s.gradient(c);
    for (int i = 0; i < s.n; ++i)
      for (int jj = 0; jj < s.n; ++jj) g.push_back(M[i * 3 + jj]);
    auto& u = jc["u0"] = nlohmann::json::array();
    for (int i = 0; i < s.n; ++i) u.push_back(s.u0[(size_t)c * s.n + i]);
    jc["phase"] = s.phase[c];
    jc["flags"] = s.flags[c];
    cells.push_back(jc);
  }
  return j.dump();
}

}  // namespace nuclab
