#include "nuclab/faces.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nuclab {

namespace {

// Irrational-ish quantum scale: keeps exact rational coordinates away from
// rounding boundaries when keys are snapped to the lattice.
constexpr double kQuantum = 1.0471975511965976;  // pi/3

struct Edge2 {
  uint64_t dir_key;
  int64_t off_key;
  double t0, t1;        // params along the canonical direction, t0 < t1
  double dx, dy;        // canonical unit direction
  double px, py;        // reference point on the line
  int32_t cell;
  int8_t side;          // +1: cell lies left of (dx,dy)
};

double frob_jump(const Scene& s, int ca, int cb) {
  Mat a = s.chi(ca), b = s.chi(cb);
  return std::sqrt(frob2(a, b, s.n));
}
double frob_chi(const Scene& s, int c) {
  Mat a = s.chi(c), z = mat_zero();
  return std::sqrt(frob2(a, z, s.n));
}

void scan_2d(const Scene& s, FaceScanResult& out) {
  const double diam = std::max(s.diameter_estimate(), 1e-30);
  const double qdir = 1e-12 * kQuantum;
  const double qoff = 1e-9 * diam * kQuantum;
  const double eps_t = 1e-9 * diam;

  std::vector<Edge2> edges;
  edges.reserve(s.cell_vtx.size());
  for (int c = 0; c < s.cell_count(); ++c) {
    int k = s.cell_size(c);
    for (int i = 0; i < k; ++i) {
      Vec a = s.vertex(c, i), b = s.vertex(c, (i + 1) % k);
      double ex = b[0] - a[0], ey = b[1] - a[1];
      double len = std::hypot(ex, ey);
      if (len < eps_t) continue;  // degenerate edge
      double dx = ex / len, dy = ey / len;
      int8_t side = 1;  // CCW polygon: interior left of a->b
      if (dx < 0 || (dx == 0 && dy < 0)) { dx = -dx; dy = -dy; side = -1; }
      double off = a[0] * dy - a[1] * dx;  // cross(p, d) is constant on the line
      double ta = a[0] * dx + a[1] * dy, tb = b[0] * dx + b[1] * dy;
      Edge2 e;
      e.dir_key = (uint64_t)(int64_t)std::llround(dx / qdir) * 0x9E3779B97F4A7C15ull +
                  (uint64_t)(int64_t)std::llround(dy / qdir);
      e.off_key = std::llround(off / qoff);
      e.t0 = std::min(ta, tb);
      e.t1 = std::max(ta, tb);
      e.dx = dx; e.dy = dy;
      e.px = a[0]; e.py = a[1];
      e.cell = c;
      e.side = side;
      edges.push_back(e);
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge2& a, const Edge2& b) {
    if (a.dir_key != b.dir_key) return a.dir_key < b.dir_key;
    if (a.off_key != b.off_key) return a.off_key < b.off_key;
    return a.t0 < b.t0;
  });

  std::vector<double> evs;
  std::vector<int> active_lo;  // indices into the group, side -1
  std::vector<int> active_hi;  // side +1

  size_t g0 = 0;
  while (g0 < edges.size()) {
    size_t g1 = g0 + 1;
    while (g1 < edges.size() && edges[g1].dir_key == edges[g0].dir_key &&
           edges[g1].off_key == edges[g0].off_key)
      ++g1;
    // one supporting line
    const Edge2& ref = edges[g0];
    double tref = ref.px * ref.dx + ref.py * ref.dy;
    auto point_at = [&](double t) {
      return vec2(ref.px + (t - tref) * ref.dx, ref.py + (t - tref) * ref.dy);
    };

    evs.clear();
    for (size_t i = g0; i < g1; ++i) {
      evs.push_back(edges[i].t0);
      evs.push_back(edges[i].t1);
    }
    std::sort(evs.begin(), evs.end());
    evs.erase(std::unique(evs.begin(), evs.end(),
                          [&](double a, double b) { return b - a < eps_t; }),
              evs.end());

    active_lo.clear();
    active_hi.clear();
    size_t next = g0;  // edges sorted by t0 within the group
    for (size_t iv = 0; iv + 1 < evs.size(); ++iv) {
      double a = evs[iv], b = evs[iv + 1];
      double len = b - a;
      if (len < eps_t) continue;
      double mid = 0.5 * (a + b);
      while (next < g1 && edges[next].t0 <= mid) {
        if (edges[next].side > 0) active_hi.push_back((int)next);
        else active_lo.push_back((int)next);
        ++next;
      }
      auto purge = [&](std::vector<int>& act) {
        act.erase(std::remove_if(act.begin(), act.end(),
                                 [&](int i) { return edges[i].t1 < mid; }),
                  act.end());
      };
      purge(active_lo);
      purge(active_hi);
      if (active_lo.size() > 1 || active_hi.size() > 1) {
        out.overlap_measure += len * double(std::max(active_lo.size(), active_hi.size()) - 1);
        continue;
      }
      Vec pa = point_at(a), pb = point_at(b);
      if (active_lo.size() == 1 && active_hi.size() == 1) {
        int ca = edges[active_hi[0]].cell, cb = edges[active_lo[0]].cell;
        out.internal_faces++;
        out.surface_frobenius += len * frob_jump(s, ca, cb);
        Vec ja = sub(s.u_at(ca, pa), s.u_at(cb, pa));
        Vec jb = sub(s.u_at(ca, pb), s.u_at(cb, pb));
        out.max_continuity_jump =
            std::max({out.max_continuity_jump, norm(ja, 2), norm(jb, 2)});
        Mat dM = s.gradient(ca);
        Mat Mb = s.gradient(cb);
        for (int i = 0; i < 9; ++i) dM[i] -= Mb[i];
        Vec tangent = vec2(ref.dx, ref.dy);
        Vec r = matvec(dM, tangent, 2);
        out.max_rank_one_violation = std::max(out.max_rank_one_violation, norm(r, 2));
      } else if (active_lo.size() + active_hi.size() == 1) {
        int c = active_lo.empty() ? edges[active_hi[0]].cell : edges[active_lo[0]].cell;
        out.boundary_faces++;
        out.surface_frobenius += len * frob_chi(s, c);
        out.max_boundary_trace = std::max(
            {out.max_boundary_trace, norm(s.u_at(c, pa), 2), norm(s.u_at(c, pb), 2)});
        // u = 0 outside: rank-one against the zero gradient
        Vec tangent = vec2(ref.dx, ref.dy);
        Vec r = matvec(s.gradient(c), tangent, 2);
        out.max_rank_one_violation = std::max(out.max_rank_one_violation, norm(r, 2));
      }
    }
    g0 = g1;
  }
}

// ---- 3D ----

struct Face3 {
  uint64_t n_key;
  int64_t off_key;
  Vec v[3];
  Vec normal;  // canonical unit normal
  int32_t cell;
  int8_t side;  // +1: cell lies on +normal side
};

// Sutherland-Hodgman clip of convex polygon `poly` against half-plane
// dot(p - a, inward) >= 0 for edge (a, b) of the clipping polygon.
void clip_edge(std::vector<Vec>& poly, std::vector<Vec>& tmp, const Vec& a, const Vec& inward,
               int n) {
  tmp.clear();
  size_t m = poly.size();
  for (size_t i = 0; i < m; ++i) {
    const Vec& p = poly[i];
    const Vec& q = poly[(i + 1) % m];
    double dp = dot(sub(p, a), inward, n);
    double dq = dot(sub(q, a), inward, n);
    if (dp >= 0) tmp.push_back(p);
    if ((dp > 0 && dq < 0) || (dp < 0 && dq > 0)) {
      double t = dp / (dp - dq);
      tmp.push_back(add(p, scale(sub(q, p), t)));
    }
  }
  poly.swap(tmp);
}

void scan_3d(const Scene& s, FaceScanResult& out) {
  const double diam = std::max(s.diameter_estimate(), 1e-30);
  const double qdir = 1e-12 * kQuantum;
  const double qoff = 1e-9 * diam * kQuantum;
  const double eps_len = 1e-9 * diam;
  const double eps_area = eps_len * diam;

  static const int tet_faces[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};

  std::vector<Face3> faces;
  faces.reserve((size_t)s.cell_count() * 4);
  for (int c = 0; c < s.cell_count(); ++c) {
    Vec v[4] = {s.vertex(c, 0), s.vertex(c, 1), s.vertex(c, 2), s.vertex(c, 3)};
    Vec centroid = scale(add(add(v[0], v[1]), add(v[2], v[3])), 0.25);
    for (auto& tf : tet_faces) {
      Face3 f;
      f.v[0] = v[tf[0]]; f.v[1] = v[tf[1]]; f.v[2] = v[tf[2]];
      Vec nrm = cross3(sub(f.v[1], f.v[0]), sub(f.v[2], f.v[0]));
      double ln = norm(nrm, 3);
      if (ln < eps_area) continue;  // degenerate face
      nrm = scale(nrm, 1.0 / ln);
      int8_t side = dot(sub(centroid, f.v[0]), nrm, 3) > 0 ? 1 : -1;
      // canonical sign: first component larger than quantum is positive
      double flip = 1;
      if (nrm[0] < -qdir || (std::abs(nrm[0]) <= qdir && nrm[1] < -qdir) ||
          (std::abs(nrm[0]) <= qdir && std::abs(nrm[1]) <= qdir && nrm[2] < 0))
        flip = -1;
      nrm = scale(nrm, flip);
      side = (int8_t)(side * (int)flip);
      f.normal = nrm;
      f.n_key = (uint64_t)(int64_t)std::llround(nrm[0] / qdir) * 0x9E3779B97F4A7C15ull +
                (uint64_t)(int64_t)std::llround(nrm[1] / qdir) * 0xC2B2AE3D27D4EB4Full +
                (uint64_t)(int64_t)std::llround(nrm[2] / qdir);
      f.off_key = std::llround(dot(f.v[0], nrm, 3) / qoff);
      f.cell = c;
      f.side = side;
      faces.push_back(f);
    }
  }
  std::sort(faces.begin(), faces.end(), [](const Face3& a, const Face3& b) {
    if (a.n_key != b.n_key) return a.n_key < b.n_key;
    return a.off_key < b.off_key;
  });

  std::vector<Vec> poly, tmp;
  size_t g0 = 0;
  while (g0 < faces.size()) {
    size_t g1 = g0 + 1;
    while (g1 < faces.size() && faces[g1].n_key == faces[g0].n_key &&
           faces[g1].off_key == faces[g0].off_key)
      ++g1;
    const Vec nrm = faces[g0].normal;

    auto tri_area = [&](const Face3& f) {
      return 0.5 * norm(cross3(sub(f.v[1], f.v[0]), sub(f.v[2], f.v[0])), 3);
    };
    std::vector<double> matched(g1 - g0, 0.0);

    for (size_t i = g0; i < g1; ++i) {
      for (size_t j = i + 1; j < g1; ++j) {
        if (faces[i].side == faces[j].side) continue;
        bool disjoint = false;
        for (int ax = 0; ax < 3 && !disjoint; ++ax) {
          double ilo = std::min({faces[i].v[0][ax], faces[i].v[1][ax], faces[i].v[2][ax]});
          double ihi = std::max({faces[i].v[0][ax], faces[i].v[1][ax], faces[i].v[2][ax]});
          double jlo = std::min({faces[j].v[0][ax], faces[j].v[1][ax], faces[j].v[2][ax]});
          double jhi = std::max({faces[j].v[0][ax], faces[j].v[1][ax], faces[j].v[2][ax]});
          if (ihi < jlo - eps_len || jhi < ilo - eps_len) disjoint = true;
        }
        if (disjoint) continue;
        // clip triangle j against triangle i
        poly.assign(faces[j].v, faces[j].v + 3);
        const Face3& fi = faces[i];
        // orient fi CCW about nrm for inward normals
        Vec e01 = sub(fi.v[1], fi.v[0]);
        Vec e02 = sub(fi.v[2], fi.v[0]);
        double orient = dot(cross3(e01, e02), nrm, 3);
        for (int k = 0; k < 3 && !poly.empty(); ++k) {
          Vec a = fi.v[k], b = fi.v[(k + 1) % 3];
          Vec inward = cross3(nrm, sub(b, a));
          if (orient < 0) inward = scale(inward, -1);
          clip_edge(poly, tmp, a, inward, 3);
        }
        if (poly.size() < 3) continue;
        double area = 0;
        for (size_t k = 1; k + 1 < poly.size(); ++k)
          area += 0.5 * norm(cross3(sub(poly[k], poly[0]), sub(poly[k + 1], poly[0])), 3);
        if (area < eps_area) continue;
        matched[i - g0] += area;
        matched[j - g0] += area;
        int ca = faces[i].cell, cb = faces[j].cell;
        out.internal_faces++;
        out.surface_frobenius += area * frob_jump(s, ca, cb);
        for (const Vec& p : poly) {
          Vec jmp = sub(s.u_at(ca, p), s.u_at(cb, p));
          out.max_continuity_jump = std::max(out.max_continuity_jump, norm(jmp, 3));
        }
        Mat dM = s.gradient(ca);
        Mat Mb = s.gradient(cb);
        for (int k = 0; k < 9; ++k) dM[k] -= Mb[k];
        Vec t1 = scale(e01, 1.0 / std::max(norm(e01, 3), 1e-300));
        Vec t2 = cross3(nrm, t1);
        out.max_rank_one_violation = std::max(
            {out.max_rank_one_violation, norm(matvec(dM, t1, 3), 3), norm(matvec(dM, t2, 3), 3)});
      }
    }
    for (size_t i = g0; i < g1; ++i) {
      double area = tri_area(faces[i]);
      double rem = area - matched[i - g0];
      if (rem < -eps_area) out.overlap_measure += -rem;
      if (rem > eps_area) {
        int c = faces[i].cell;
        out.boundary_faces++;
        out.surface_frobenius += rem * frob_chi(s, c);
        if (rem > area - eps_area) {
          for (const Vec& p : faces[i].v)
            out.max_boundary_trace = std::max(out.max_boundary_trace, norm(s.u_at(c, p), 3));
          Vec e01 = sub(faces[i].v[1], faces[i].v[0]);
          Vec t1 = scale(e01, 1.0 / std::max(norm(e01, 3), 1e-300));
          Vec t2 = cross3(nrm, t1);
          out.max_rank_one_violation =
              std::max({out.max_rank_one_violation, norm(matvec(s.gradient(c), t1, 3), 3),
                        norm(matvec(s.gradient(c), t2, 3), 3)});
        }
      }
    }
    g0 = g1;
  }
}

}  // namespace

FaceScanResult scan_faces(const Scene& s) {
  FaceScanResult out;
  if (s.n == 2) scan_2d(s, out);
  else scan_3d(s, out);
  return out;
}

AdmissibilityReport check_admissible(const Scene& s) {
  FaceScanResult f = scan_faces(s);
  AdmissibilityReport r;
  r.max_continuity_jump = f.max_continuity_jump;
  r.max_boundary_trace = f.max_boundary_trace;
  r.max_rank_one_violation = f.max_rank_one_violation;
  r.overlap_measure = f.overlap_measure;
  r.support_volume = s.volume_support();
  r.volume_rel_error = s.declared_volume > 0
                           ? std::abs(r.support_volume - s.declared_volume) / s.declared_volume
                           : 0.0;
  double umax = 0;
  for (int c = 0; c < s.cell_count(); ++c)
    for (int i = 0; i < s.n; ++i) umax = std::max(umax, std::abs(s.u0[(size_t)c * s.n + i]));
  r.scale = umax + s.diameter_estimate();
  return r;
}

}  // namespace nuclab
