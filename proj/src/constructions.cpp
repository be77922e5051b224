#include "nuclab/constructions.hpp"

#include <cmath>
#include <stdexcept>

namespace nuclab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 3D cell from four vertices and the deformation values at them.
void add_affine_cell_3d(SceneBuilder& b, const Vec* pts, const Vec* uvals, int phase,
                        uint8_t flags) {
  // solve M from the three edge vectors per component
  Vec e[3] = {sub(pts[1], pts[0]), sub(pts[2], pts[0]), sub(pts[3], pts[0])};
  double lp = norm(e[0], 3) * norm(e[1], 3) * norm(e[2], 3);
  double vol = tet_volume(pts[0], pts[1], pts[2], pts[3]);
  if (std::abs(vol) < 1e-13 * lp || lp == 0) return;  // degenerate
  double A[3][3];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) A[r][c] = e[r][c];
  // invert A^T via cramer on the 3x3 system A g = d per component
  auto det3 = [](const double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  double dA = det3(A);
  Mat M = mat_zero();
  for (int comp = 0; comp < 3; ++comp) {
    double d[3] = {uvals[1][comp] - uvals[0][comp], uvals[2][comp] - uvals[0][comp],
                   uvals[3][comp] - uvals[0][comp]};
    for (int c = 0; c < 3; ++c) {
      double Ac[3][3];
      for (int r = 0; r < 3; ++r)
        for (int cc = 0; cc < 3; ++cc) Ac[r][cc] = cc == c ? d[r] : A[r][cc];
      M[comp * 3 + c] = det3(Ac) / dA;
    }
  }
  b.add_cell(std::span<const Vec>(pts, 4), M, uvals[0], phase, flags);
}

void add_prism_3d(SceneBuilder& b, const Vec a[3], const Vec bb[3], const Vec ua[3],
                  const Vec ub[3], int phase, uint8_t flags) {
  Vec p1[4] = {a[0], a[1], a[2], bb[0]};
  Vec u1[4] = {ua[0], ua[1], ua[2], ub[0]};
  add_affine_cell_3d(b, p1, u1, phase, flags);
  Vec p2[4] = {a[1], a[2], bb[0], bb[1]};
  Vec u2[4] = {ua[1], ua[2], ub[0], ub[1]};
  add_affine_cell_3d(b, p2, u2, phase, flags);
  Vec p3[4] = {a[2], bb[0], bb[1], bb[2]};
  Vec u3[4] = {ua[2], ub[0], ub[1], ub[2]};
  add_affine_cell_3d(b, p3, u3, phase, flags);
}

int nearest_well_only(const WellSet& K, const std::array<double, 3>& diag) {
  int best = 0;
  double bd = 1e300;
  for (int w = 0; w < K.count(); ++w) {
    double d = 0;
    for (int j = 0; j < K.n; ++j) {
      double t = diag[j] - K.well_d(w, j);
      d += t * t;
    }
    if (d < bd) { bd = d; best = w; }
  }
  return best;
}

// 2D cell from vertices and deformation values (vector-valued).
void add_affine_cell_2d(SceneBuilder& b, const Vec* pts, const Vec* uvals, int k, int phase,
                        uint8_t flags) {
  double ax = pts[1][0] - pts[0][0], ay = pts[1][1] - pts[0][1];
  double bx = pts[2][0] - pts[0][0], by = pts[2][1] - pts[0][1];
  double det = ax * by - ay * bx;
  Mat M = mat_zero();
  for (int comp = 0; comp < 2; ++comp) {
    double f1 = uvals[1][comp] - uvals[0][comp], f2 = uvals[2][comp] - uvals[0][comp];
    M[comp * 3 + 0] = (f1 * by - f2 * ay) / det;
    M[comp * 3 + 1] = (ax * f2 - bx * f1) / det;
  }
  b.add_cell(std::span<const Vec>(pts, (size_t)k), M, uvals[0], phase, flags);
}

}  // namespace

Construction construct_ball(const WellSet& K, double V) {
  if (V <= 0) throw std::invalid_argument("construct_ball: V must be positive");
  if (K.count() < 1) throw std::invalid_argument("construct_ball: empty well set");
  const int n = K.n;
  Mat A = mat_diag(K.diag_d(0));
  Construction out;
  if (n == 2) {
    const int m = 64;
    double c2 = 0.5 * m * std::sin(2 * kPi / m);
    double R2 = std::sqrt(V / c2);
    double r = R2 / 2;
    SceneBuilder b(2, K, "ball");
    std::vector<Vec> dir(m);
    for (int i = 0; i < m; ++i) dir[i] = vec2(std::cos(2 * kPi * i / m), std::sin(2 * kPi * i / m));
    for (int i = 0; i < m; ++i) {
      const Vec &d0 = dir[i], &d1 = dir[(i + 1) % m];
      Vec pi0 = scale(d0, r), pi1 = scale(d1, r);
      Vec po0 = scale(d0, R2), po1 = scale(d1, R2);
      Vec zero{0, 0, 0};
      // inner fan, u = A x
      Vec fan[3] = {zero, pi0, pi1};
      b.add_cell(std::span<const Vec>(fan, 3), A, zero, 0, 0);
      // ring, u interpolates A x -> 0
      Vec u_in0 = matvec(A, pi0, 2), u_in1 = matvec(A, pi1, 2);
      {
        Vec t1[3] = {pi0, po0, po1};
        Vec uv[3] = {u_in0, zero, zero};
        add_affine_cell_2d(b, t1, uv, 3, 0, kCellExempt);
      }
      {
        Vec t2[3] = {pi0, po1, pi1};
        Vec uv[3] = {u_in0, zero, u_in1};
        add_affine_cell_2d(b, t2, uv, 3, 0, kCellExempt);
      }
    }
    out.scene = b.take();
  } else {
    // subdivided octahedron (frequency 2), all vertices on the unit sphere
    std::vector<std::array<Vec, 3>> tris;
    for (int sx = -1; sx <= 1; sx += 2)
      for (int sy = -1; sy <= 1; sy += 2)
        for (int sz = -1; sz <= 1; sz += 2) {
          Vec a = vec3(sx, 0, 0), bb = vec3(0, sy, 0), c = vec3(0, 0, sz);
          auto mid = [](const Vec& u, const Vec& v) {
            Vec w = scale(add(u, v), 0.5);
            return scale(w, 1.0 / norm(w, 3));
          };
          Vec mab = mid(a, bb), mbc = mid(bb, c), mca = mid(c, a);
          tris.push_back({a, mab, mca});
          tris.push_back({bb, mbc, mab});
          tris.push_back({c, mca, mbc});
          tris.push_back({mab, mbc, mca});
        }
    double c3 = 0;
    Vec zero{0, 0, 0};
    for (auto& t : tris) c3 += std::abs(tet_volume(zero, t[0], t[1], t[2]));
    double R2 = std::cbrt(V / c3);
    double r = R2 / 2;
    SceneBuilder b(3, K, "ball");
    for (auto& t : tris) {
      Vec pi[3] = {scale(t[0], r), scale(t[1], r), scale(t[2], r)};
      Vec po[3] = {scale(t[0], R2), scale(t[1], R2), scale(t[2], R2)};
      Vec ui[3] = {matvec(A, pi[0], 3), matvec(A, pi[1], 3), matvec(A, pi[2], 3)};
      Vec uo[3] = {zero, zero, zero};
      Vec core[4] = {zero, pi[0], pi[1], pi[2]};
      Vec ucore[4] = {zero, ui[0], ui[1], ui[2]};
      add_affine_cell_3d(b, core, ucore, 0, 0);
      add_prism_3d(b, pi, po, ui, uo, 0, kCellExempt);
    }
    out.scene = b.take();
  }
  out.scene.declared_volume = V;
  out.bound_form = V + std::pow(V, double(n - 1) / n);
  out.bound_desc = "c1 V + c2 V^((n-1)/n)";
  return out;
}

Construction construct_lens21(double lambda, double L, double H) {
  if (!(H > L && L > 1))
    throw std::invalid_argument("construct_lens21: requires H > L > 1");
  if (!(lambda > 0 && lambda < 1))
    throw std::invalid_argument("construct_lens21: lambda must lie in (0,1)");
  // the stored well set uses a nearby rational lambda; energies use doubles
  Rational lr((long long)std::llround(lambda * 720720), 720720);
  WellSet K = make_well_set(WellFamily::two_well, lr, 2);
  SceneBuilder b(2, K, "lens21");
  const double lL = lambda * L;
  const double sl = 2 * lambda * L / H;        // |d x1 / d x2| of the left edges
  const double sr = 2 * (1 - lambda) * L / H;  // right edges
  Vec O = vec2(0, 0), R = vec2(L, 0), M0 = vec2(lL, 0);
  Vec Tp = vec2(lL, H / 2), Tm = vec2(lL, -H / 2);
  double uM = (1 - lambda) * lL;  // u1 at (lambda L, 0)

  // left cells: u1 = (1-lam)(x1 - sl |x2|), chi = B (index 1)
  {
    Mat M = mat_zero();
    M[0] = 1 - lambda;
    M[1] = -(1 - lambda) * sl;
    Vec pts[3] = {O, M0, Tp};
    b.add_cell(std::span<const Vec>(pts, 3), M, vec2(0, 0), 1, 0);
    Mat Mm = mat_zero();
    Mm[0] = 1 - lambda;
    Mm[1] = (1 - lambda) * sl;
    Vec ptsm[3] = {O, Tm, M0};
    b.add_cell(std::span<const Vec>(ptsm, 3), Mm, vec2(0, 0), 1, 0);
  }
  // right cells: u1 = lam(-x1 - sr |x2| + L), chi = A (index 0)
  {
    Mat M = mat_zero();
    M[0] = -lambda;
    M[1] = -lambda * sr;
    Vec pts[3] = {M0, R, Tp};
    b.add_cell(std::span<const Vec>(pts, 3), M, vec2(uM, 0), 0, 0);
    Mat Mm = mat_zero();
    Mm[0] = -lambda;
    Mm[1] = lambda * sr;
    Vec ptsm[3] = {M0, Tm, R};
    b.add_cell(std::span<const Vec>(ptsm, 3), Mm, vec2(uM, 0), 0, 0);
  }
  Construction out;
  out.scene = b.take();
  out.scene.declared_volume = L * H / 2;
  out.bound_form = L * L * L / H + H;
  out.bound_desc = "c (L^3/H + H)";
  return out;
}

Construction construct_diamond_nd(int n, double L, double H) {
  if (n != 2 && n != 3) throw std::invalid_argument("construct_diamond_nd: n must be 2 or 3");
  if (!(H >= L && L > 0)) throw std::invalid_argument("construct_diamond_nd: requires H >= L");
  WellSet K = make_custom_well_set(
      "pm_e1", n,
      {{Rational(-1), Rational(0), Rational(0)}, {Rational(1), Rational(0), Rational(0)}});
  SceneBuilder b(n, K, "diamond_nd");
  const double a = L / 2, hh = H / 2;
  if (n == 2) {
    for (int sx = -1; sx <= 1; sx += 2)
      for (int sy = -1; sy <= 1; sy += 2) {
        Vec O = vec2(0, 0), X = vec2(sx * a, 0), Y = vec2(0, sy * hh);
        Mat M = mat_zero();
        M[0] = sx;
        M[1] = sy * L / H;
        Vec pts[3] = {O, X, Y};
        if (sx * sy < 0) std::swap(pts[1], pts[2]);
        b.add_cell(std::span<const Vec>(pts, 3), M, vec2(-a, 0), sx > 0 ? 1 : 0, 0);
      }
  } else {
    for (int sx = -1; sx <= 1; sx += 2)
      for (int sy = -1; sy <= 1; sy += 2)
        for (int sz = -1; sz <= 1; sz += 2) {
          Vec O = vec3(0, 0, 0), X = vec3(sx * a, 0, 0), Y = vec3(0, sy * hh, 0),
              Z = vec3(0, 0, sz * hh);
          Vec pts[4] = {O, X, Y, Z};
          Vec uv[4] = {vec3(-a, 0, 0), vec3(0, 0, 0), vec3(0, 0, 0), vec3(0, 0, 0)};
          add_affine_cell_3d(b, pts, uv, sx > 0 ? 1 : 0, 0);
        }
  }
  Construction out;
  out.scene = b.take();
  out.scene.declared_volume = n == 2 ? L * H / 2 : L * H * H / 6;
  out.bound_form = L * L * L * std::pow(H, n - 3) + std::pow(H, n - 1);
  out.bound_desc = "c (L^3 H^(n-3) + H^(n-1))";
  return out;
}

Construction construct_branch_rect21(double lambda, double L, double H) {
  if (!(H > L && L > 1))
    throw std::invalid_argument("construct_branch_rect21: requires H > L > 1");
  if (!(lambda > 0 && lambda < 1))
    throw std::invalid_argument("construct_branch_rect21: lambda in (0,1)");
  Rational lr((long long)std::llround(lambda * 720720), 720720);
  WellSet K = make_well_set(WellFamily::two_well, lr, 2);
  int N = (int)std::ceil(4 * L / H);
  SceneBuilder b(2, K, "branch_rect21");
  BlockGeom g;
  g.osc_axis = 0;   // wells differ in the first diagonal entry
  g.s_lo = 0;
  g.s_hi = L;
  g.xl0 = 0;
  g.xr0 = H;
  g.teeth = N;
  BlockPair pair;
  pair.dev_p = -lambda;      // A deviation from B_avg = 0
  pair.dev_q = 1 - lambda;   // B deviation
  pair.wfrac = 1 - lambda;   // A occupies fraction 1 - lambda
  pair.phase_p = 0;
  pair.phase_q = 1;
  AffineBase base;  // zero boundary data
  emit_branch_block(b, g, pair, base);
  Construction out;
  out.scene = b.take();
  out.scene.declared_volume = L * H;
  out.bound_form = L * L * L / H + H;
  out.bound_desc = "c (L^3/H + H)";
  return out;
}

namespace {

// clip a 2D polygon (pts, scalar values) to the half plane y >= c
int clip_upper(Vec* pts, double* val, int k, double c) {
  Vec rp[16];
  double rv[16];
  int m = 0;
  for (int i = 0; i < k; ++i) {
    const Vec& p = pts[i];
    const Vec& q = pts[(i + 1) % k];
    double dp = p[1] - c, dq = q[1] - c;
    if (dp >= 0) { rp[m] = p; rv[m] = val[i]; ++m; }
    if ((dp > 0 && dq < 0) || (dp < 0 && dq > 0)) {
      double t = dp / (dp - dq);
      rp[m] = add(p, scale(sub(q, p), t));
      rv[m] = val[i] + t * (val[(i + 1) % k] - val[i]);
      ++m;
    }
  }
  for (int i = 0; i < m; ++i) { pts[i] = rp[i]; val[i] = rv[i]; }
  return m;
}

}  // namespace

Construction construct_branch_rect_nd(int n, double lambda, double L, double H) {
  if (n != 3) throw std::invalid_argument("construct_branch_rect_nd: only n = 3 is supported");
  Construction flat = construct_branch_rect21(lambda, L, H);
  const Scene& s2 = flat.scene;
  Rational lr((long long)std::llround(lambda * 720720), 720720);
  WellSet K3 = make_well_set(WellFamily::two_well, lr, 3);
  SceneBuilder b(3, K3, "branch_rect_nd");
  const double c = H / 2;

  for (int cell = 0; cell < s2.cell_count(); ++cell) {
    int k = s2.cell_size(cell);
    Vec pts[16];
    double u1[16];
    for (int i = 0; i < k; ++i) {
      pts[i] = s2.vertex(cell, i);
      u1[i] = s2.u_at(cell, pts[i])[0];
    }
    k = clip_upper(pts, u1, k, c);
    if (k < 3) continue;
    int phase = s2.phase[cell];
    uint8_t fl = s2.flags[cell];
    // fan triangulation, then one wedge per fold sector
    for (int i = 1; i + 1 < k; ++i) {
      Vec tri[3] = {pts[0], pts[i], pts[i + 1]};
      double tv[3] = {u1[0], u1[i], u1[i + 1]};
      for (int axis = 1; axis <= 2; ++axis)
        for (int sg = -1; sg <= 1; sg += 2) {
          // rho = c + sg (x_axis - c); the other transverse coordinate spans
          // c +- (y - c)
          Vec lo[3], hi[3], ulo[3], uhi[3];
          for (int v = 0; v < 3; ++v) {
            double x1 = tri[v][0], y = tri[v][1];
            double xa = c + sg * (y - c);
            double spread = y - c;
            Vec p{x1, 0, 0};
            p[axis] = xa;
            p[3 - axis] = c - spread;
            lo[v] = p;
            p[3 - axis] = c + spread;
            hi[v] = p;
            ulo[v] = uhi[v] = vec3(tv[v], 0, 0);
          }
          add_prism_3d(b, lo, hi, ulo, uhi, phase, fl);
        }
    }
  }
  Construction out;
  out.scene = b.take();
  out.scene.declared_volume = L * H * H;
  out.bound_form = (L * L * L / H + H) * H;
  out.bound_desc = "c (L^3/H + H) H^(n-2)";
  return out;
}

Construction construct_lens_branch_4w(double L, double H, double r) {
  if (!(H > L && L > 1))
    throw std::invalid_argument("construct_lens_branch_4w: requires H > L > 1");
  if (!(r > 0 && r < H / 2))
    throw std::invalid_argument("construct_lens_branch_4w: requires 0 < r < H/2");
  const double q = 1 - 2 * r / H;
  if ((L / (2 * r)) * q <= 4)
    throw std::invalid_argument(
        "construct_lens_branch_4w: aspect violation l_j <= 4 r_j at generation 0");
  WellSet K = make_well_set(WellFamily::four_well_2d);
  SceneBuilder b(2, K, "lens_branch_4w");

  // h_j, r_j, l_j ladders; block j exists while h_j < (H - L) / 2
  std::vector<double> hs{0.0}, rs, ls;
  {
    int j = 0;
    while (hs[j] < (H - L) / 2) {
      rs.push_back(r * std::pow(q, j));
      ls.push_back((L / 2) * std::pow(q, j + 1));
      hs.push_back((H / 2) * (1 - std::pow(q, j + 1)));
      ++j;
      if (j > 200000) throw std::runtime_error("lens_branch_4w: ladder runaway");
    }
  }
  const int j1 = (int)rs.size();  // blocks 0 .. j1-1

  for (int sx = -1; sx <= 1; sx += 2)
    for (int sy = -1; sy <= 1; sy += 2) {
      AffineBase base;
      base.grad = mat_zero();
      base.grad[0] = sx;
      base.grad[1] = sy * L / H;
      base.x_ref = vec2(0, 0);
      base.u_ref = vec2(-L / 2, 0);
      BlockPair pair;
      if (sx < 0) {
        pair.dev_p = -2; pair.dev_q = 1; pair.wfrac = 1.0 / 3.0;
        pair.phase_p = 0; pair.phase_q = 1;  // A1, A2
      } else {
        pair.dev_p = 2; pair.dev_q = -1; pair.wfrac = 1.0 / 3.0;
        pair.phase_p = 2; pair.phase_q = 3;  // A3, A4
      }
      int filler = sx < 0 ? 1 : 3;  // nearest well to the macroscopic gradient

      for (int j = 0; j < j1; ++j) {
        BlockGeom g;
        g.osc_axis = 1;
        g.s_lo = sy > 0 ? hs[j] : -hs[j + 1];
        g.s_hi = sy > 0 ? hs[j + 1] : -hs[j];
        g.xl0 = sx < 0 ? -ls[j] : 0;
        g.xr0 = sx < 0 ? 0 : ls[j];
        g.teeth = 1;
        emit_branch_block(b, g, pair, base);
        // sliver between the block and the domain edge
        double lprev = j == 0 ? L / 2 : ls[j - 1];
        Vec sp[3] = {vec2(sx * lprev, sy * hs[j]), vec2(sx * ls[j], sy * hs[j]),
                     vec2(sx * ls[j], sy * hs[j + 1])};
        double z3[3] = {0, 0, 0};
        add_scalar_cell(b, std::span<const Vec>(sp, 3), std::span<const double>(z3, 3), base, 1,
                        filler, kCellExempt, L + H);
      }
      // top remainder triangle up to the domain tip
      Vec tp[3] = {vec2(sx * ls[j1 - 1], sy * hs[j1]), vec2(0, sy * hs[j1]),
                   vec2(0, sy * H / 2)};
      double z3[3] = {0, 0, 0};
      add_scalar_cell(b, std::span<const Vec>(tp, 3), std::span<const double>(z3, 3), base, 1,
                      filler, kCellExempt, L + H);
    }

  Construction out;
  out.scene = b.take();
  out.scene.declared_volume = L * H / 2;
  out.bound_form = r * L + H + L * L * L / H + r * r * H / L + H * L / r;
  out.bound_desc = "c (rL + H + L^3/H + r^2 H/L + HL/r)";
  return out;
}

Construction construct_double_branch_4w(double L, double H, double theta) {
  if (!(theta > 0.25 && theta < 0.5))
    throw std::invalid_argument("construct_double_branch_4w: theta must lie in (1/4, 1/2)");
  if (!(H > L && L > 1))
    throw std::invalid_argument("construct_double_branch_4w: requires H > L > 1");
  WellSet K = make_well_set(WellFamily::four_well_2d);
  SceneBuilder b(2, K, "double_branch_4w");
  const double scale = L + H;
  const double cq = 0.7;  // inner period calibration: q = cq * width^(2/3)

  PieceSink sink = [&](std::span<const Vec> pts, std::span<const double> phi, int tag,
                       bool structural) {
    // outer profile restricted to the piece is affine
    double ax = pts[1][0] - pts[0][0], ay = pts[1][1] - pts[0][1];
    double bx = pts[2][0] - pts[0][0], by = pts[2][1] - pts[0][1];
    double det = ax * by - ay * bx;
    double f1 = phi[1] - phi[0], f2 = phi[2] - phi[0];
    AffineBase pb;
    pb.grad = mat_zero();
    pb.grad[0] = (f1 * by - f2 * ay) / det;
    pb.grad[1] = (ax * f2 - bx * f1) / det;
    pb.x_ref = pts[0];
    pb.u_ref = vec2(phi[0], 0);
    if (!structural) {
      std::vector<double> zero(pts.size(), 0.0);
      int ph = nearest_well_only(K, {pb.grad[0], 0, 0});
      add_scalar_cell(b, pts, std::span<const double>(zero.data(), zero.size()), pb, 1, ph,
                      kCellExempt, scale);
      return;
    }
    // piece frame: vertices sit on the two band boundaries x2 = s_lo, s_hi
    double s_lo = 1e300, s_hi = -1e300;
    for (const Vec& p : pts) {
      s_lo = std::min(s_lo, p[1]);
      s_hi = std::max(s_hi, p[1]);
    }
    double eps = 1e-9 * scale;
    double bl = 1e300, br = -1e300, tl = 1e300, tr = -1e300;
    for (const Vec& p : pts) {
      if (p[1] < s_lo + eps) { bl = std::min(bl, p[0]); br = std::max(br, p[0]); }
      if (p[1] > s_hi - eps) { tl = std::min(tl, p[0]); tr = std::max(tr, p[0]); }
    }
    double band = s_hi - s_lo;
    double wmax = std::max(br - bl, tr - tl);
    double qin = cq * std::pow(std::max(wmax, 1e-9), 2.0 / 3.0);
    int N = std::max(1, (int)std::llround(band / qin));
    BlockGeom gi;
    gi.osc_axis = 1;
    gi.s_lo = s_lo;
    gi.s_hi = s_hi;
    gi.xl0 = bl;
    gi.kl = (tl - bl) / band;
    gi.xr0 = br;
    gi.kr = (tr - br) / band;
    gi.teeth = N;
    BlockPair pi;
    if (tag == 0) {
      pi.dev_p = -2; pi.dev_q = 1; pi.wfrac = 1.0 / 3.0;
      pi.phase_p = 0; pi.phase_q = 1;
    } else {
      pi.dev_p = 2; pi.dev_q = -1; pi.wfrac = 1.0 / 3.0;
      pi.phase_p = 2; pi.phase_q = 3;
    }
    emit_branch_block(b, gi, pi, pb);
  };

  BlockGeom g;
  g.osc_axis = 0;
  g.s_lo = 0;
  g.s_hi = L;
  g.xl0 = 0;
  g.xr0 = H;
  g.teeth = 1;
  g.refine_ratio = theta;
  BlockPair outer;
  outer.dev_p = -1;  // B1 = (1/3)A1 + (2/3)A2 = diag(-1, 0)
  outer.dev_q = 1;   // B2 = diag(1, 0)
  outer.wfrac = 0.5;
  outer.phase_p = 0;  // tags only
  outer.phase_q = 1;
  AffineBase base;  // zero boundary data
  emit_branch_block(b, g, outer, base, sink);

  Construction out;
  out.scene = b.take();
  out.scene.declared_volume = L * H;
  out.bound_form = H * std::cbrt(L) + L * L * L / H;
  out.bound_desc = "c (H L^(1/3) + L^3/H)";
  return out;
}

}  // namespace nuclab
