#include "nuclab/block.hpp"

#include <cmath>
#include <stdexcept>

namespace nuclab {

namespace {

// Dedup collapsed vertices and orient CCW; returns the vertex count (0 if
// the cell is degenerate).  phi values follow their vertices.
int normalize_poly(Vec* pts, double* phi, int k, double scale) {
  int m = 0;
  for (int i = 0; i < k; ++i) {
    if (m > 0 && std::abs(pts[i][0] - pts[m - 1][0]) + std::abs(pts[i][1] - pts[m - 1][1]) <
                     1e-14 * scale)
      continue;
    pts[m] = pts[i];
    phi[m] = phi[i];
    ++m;
  }
  while (m > 2 &&
         std::abs(pts[0][0] - pts[m - 1][0]) + std::abs(pts[0][1] - pts[m - 1][1]) <
             1e-14 * scale)
    --m;
  if (m < 3) return 0;
  double area2 = 0;
  for (int i = 0; i < m; ++i) {
    const Vec& p = pts[i];
    const Vec& q = pts[(i + 1) % m];
    area2 += p[0] * q[1] - q[0] * p[1];
  }
  if (std::abs(area2) < 1e-26 * scale * scale) return 0;
  if (area2 < 0) {
    for (int i = 1; i <= (m - 1) / 2; ++i) {
      std::swap(pts[i], pts[m - i]);
      std::swap(phi[i], phi[m - i]);
    }
  }
  return m;
}

}  // namespace

void add_scalar_cell(SceneBuilder& b, std::span<const Vec> pts_in, std::span<const double> phi_in,
                     const AffineBase& base, int osc, int phase, uint8_t flags, double scale) {
  Vec pts[8];
  double phi[8];
  int k = (int)pts_in.size();
  for (int i = 0; i < k; ++i) {
    pts[i] = pts_in[i];
    phi[i] = phi_in[i];
  }
  k = normalize_poly(pts, phi, k, scale);
  if (k == 0) return;
  double ax = pts[1][0] - pts[0][0], ay = pts[1][1] - pts[0][1];
  double bx = pts[2][0] - pts[0][0], by = pts[2][1] - pts[0][1];
  double det = ax * by - ay * bx;
  double f1 = phi[1] - phi[0], f2 = phi[2] - phi[0];
  double gx = (f1 * by - f2 * ay) / det;
  double gy = (ax * f2 - bx * f1) / det;
  for (int i = 3; i < k; ++i) {
    double pred = phi[0] + gx * (pts[i][0] - pts[0][0]) + gy * (pts[i][1] - pts[0][1]);
    if (std::abs(pred - phi[i]) > 1e-9 * (scale + std::abs(phi[i])))
      throw std::logic_error("block cell is not planar");
  }
  Mat M = base.grad;
  M[osc * 3 + 0] += gx;
  M[osc * 3 + 1] += gy;
  Vec u0 = base.at(pts[0], 2);
  u0[osc] += phi[0];
  b.add_cell(std::span<const Vec>(pts, (size_t)k), M, u0, phase, flags);
}

void emit_branch_block(SceneBuilder& b, const BlockGeom& g, const BlockPair& pair,
                       const AffineBase& base, const PieceSink& sink) {
  if (g.teeth < 1) throw std::invalid_argument("block: teeth must be >= 1");
  const double H = g.s_hi - g.s_lo;
  if (H <= 0) throw std::invalid_argument("block: empty oscillation extent");
  if (!(g.refine_ratio > 0 && g.refine_ratio < 0.5))
    throw std::invalid_argument("block: refine_ratio must lie in (0, 1/2)");
  const double p0 = H / g.teeth;
  const double w = pair.wfrac;
  if (!(w > 0 && w < 1)) throw std::invalid_argument("block: weight must lie in (0,1)");
  const double delta = pair.dev_p - pair.dev_q;
  const double scale =
      std::abs(H) + std::abs(g.xr0 - g.xl0) + std::abs(g.xl0) + std::abs(g.s_lo) + 1.0;

  auto xl = [&](double s) { return g.xl0 + g.kl * (s - g.s_lo); };
  auto xr = [&](double s) { return g.xr0 + g.kr * (s - g.s_lo); };
  auto near_phase = [&](double dev) {
    return std::abs(dev - pair.dev_p) <= std::abs(dev - pair.dev_q) ? pair.phase_p
                                                                    : pair.phase_q;
  };
  auto put = [&](std::initializer_list<std::pair<std::array<double, 2>, double>> nodes,
                 int phase, bool structural) {
    Vec pts[8];
    double phi[8];
    int k = 0;
    for (const auto& nd : nodes) {
      Vec p{0, 0, 0};
      p[g.osc_axis] = nd.first[1];
      p[1 - g.osc_axis] = nd.first[0];
      pts[k] = p;
      phi[k] = nd.second;
      ++k;
    }
    if (sink) {
      k = normalize_poly(pts, phi, k, scale);
      if (k == 0) return;
      sink(std::span<const Vec>(pts, (size_t)k), std::span<const double>(phi, (size_t)k), phase,
           structural);
    } else {
      add_scalar_cell(b, std::span<const Vec>(pts, (size_t)k),
                      std::span<const double>(phi, (size_t)k), base, g.osc_axis, phase,
                      structural ? uint8_t(0) : uint8_t(kCellExempt), scale);
    }
  };

  for (int t = 0; t < g.teeth; ++t) {
    const double ts = g.s_lo + t * p0;
    const double te = ts + p0;
    const double w_lo = xr(ts) - xl(ts);
    const double w_hi = xr(te) - xl(te);
    const double wmin = std::min(w_lo, w_hi);

    if (wmin < 0.5 * p0 || wmin <= 0) {
      // stub tooth: base state only
      put({{{xl(ts), ts}, 0.0},
           {{xr(ts), ts}, 0.0},
           {{xr(te), te}, 0.0},
           {{xl(te), te}, 0.0}},
          near_phase(0.0), false);
      continue;
    }

    const double D = wmin / 2.0;
    for (int side = 0; side < 2; ++side) {
      auto across = [&](double xi, double s) {
        return side == 0 ? xl(s) + xi : xr(s) - xi;
      };
      double Rprev = D, p = p0;
      int gg = 0;
      while (Rprev > g.cut_factor * p && gg < 60) {
        double Rg = Rprev * g.refine_ratio;
        double pf = p / 2.0;
        int subteeth = 1 << gg;
        double c = (1 - w) * delta * w * p;
        for (int i = 0; i < subteeth; ++i) {
          double tau = ts + i * p;
          double sh = tau + 0.5 * (1 + w) * p;
          // P-quad, Q-quad (branch shear), P-wedge, Q-rect
          put({{{across(Rg, tau), tau}, 0.0},
               {{across(Rprev, tau), tau}, 0.0},
               {{across(Rprev, tau + w * p), tau + w * p}, c},
               {{across(Rg, tau + w * pf), tau + w * pf}, c / 2}},
              pair.phase_p, true);
          put({{{across(Rg, tau + w * pf), tau + w * pf}, c / 2},
               {{across(Rprev, tau + w * p), tau + w * p}, c},
               {{across(Rprev, sh), sh}, c / 2},
               {{across(Rg, tau + pf), tau + pf}, 0.0}},
              pair.phase_q, true);
          put({{{across(Rg, tau + pf), tau + pf}, 0.0},
               {{across(Rprev, sh), sh}, c / 2},
               {{across(Rg, sh), sh}, c / 2}},
              pair.phase_p, true);
          put({{{across(Rg, sh), sh}, c / 2},
               {{across(Rprev, sh), sh}, c / 2},
               {{across(Rprev, tau + p), tau + p}, 0.0},
               {{across(Rg, tau + p), tau + p}, 0.0}},
              pair.phase_q, true);
        }
        Rprev = Rg;
        p = pf;
        ++gg;
      }
      // cutoff layer: taper the period-p profile to zero over [0, Rprev]
      int fine_teeth = 1 << gg;
      double cF = (1 - w) * delta * w * p;
      for (int i = 0; i < fine_teeth; ++i) {
        double tau = ts + i * p;
        double nodes[3] = {tau, tau + w * p, tau + p};
        double vals[3] = {0.0, cF, 0.0};
        double devs[2] = {pair.dev_p, pair.dev_q};
        for (int seg = 0; seg < 2; ++seg) {
          double s0 = nodes[seg], s1 = nodes[seg + 1];
          double v0 = vals[seg], v1 = vals[seg + 1];
          int ph = near_phase(devs[seg]);
          put({{{across(0.0, s0), s0}, 0.0},
               {{across(Rprev, s0), s0}, v0},
               {{across(Rprev, s1), s1}, v1}},
              ph, false);
          put({{{across(0.0, s0), s0}, 0.0},
               {{across(Rprev, s1), s1}, v1},
               {{across(0.0, s1), s1}, 0.0}},
              ph, false);
        }
      }
    }

    // middle slabs between the zone inner boundaries
    double c0 = (1 - w) * delta * w * p0;
    double smid = ts + w * p0;
    put({{{xl(ts) + D, ts}, 0.0},
         {{xr(ts) - D, ts}, 0.0},
         {{xr(smid) - D, smid}, c0},
         {{xl(smid) + D, smid}, c0}},
        pair.phase_p, true);
    put({{{xl(smid) + D, smid}, c0},
         {{xr(smid) - D, smid}, c0},
         {{xr(te) - D, te}, 0.0},
         {{xl(te) + D, te}, 0.0}},
        pair.phase_q, true);
  }
}

double block_elastic_reference(const BlockGeom& g, const BlockPair& pair) {
  const double H = g.s_hi - g.s_lo;
  const double p0 = H / g.teeth;
  const double w = pair.wfrac;
  const double delta = pair.dev_p - pair.dev_q;
  double total = 0;
  for (int t = 0; t < g.teeth; ++t) {
    const double ts = g.s_lo + t * p0;
    const double te = ts + p0;
    const double wl = (g.xr0 + g.kr * (ts - g.s_lo)) - (g.xl0 + g.kl * (ts - g.s_lo));
    const double wh = (g.xr0 + g.kr * (te - g.s_lo)) - (g.xl0 + g.kl * (te - g.s_lo));
    const double wmin = std::min(wl, wh);
    if (wmin < 0.5 * p0 || wmin <= 0) continue;
    double R = wmin / 2.0, p = p0;
    int gg = 0;
    while (R > g.cut_factor * p && gg < 60) {
      double Rg = R * g.refine_ratio;
      double len = R - Rg;
      double shear = w * delta * p / (2.0 * len);
      double area = len * p * (1 - w) / 2.0;
      total += 2.0 * (1 << gg) * shear * shear * area;
      R = Rg;
      p /= 2.0;
      ++gg;
    }
  }
  return total;
}

Scene branching_block(const WellSet& K, int phase_p, int phase_q, double wfrac, double len,
                      double h, int teeth) {
  if (K.n != 2) throw std::invalid_argument("branching_block: 2D well sets only");
  if (phase_p < 0 || phase_p >= K.count() || phase_q < 0 || phase_q >= K.count())
    throw std::invalid_argument("branching_block: bad well index");
  int diff_axis = -1;
  for (int a = 0; a < K.n; ++a)
    if (K.wells[phase_p][a] != K.wells[phase_q][a]) {
      if (diff_axis >= 0)
        throw std::invalid_argument("branching_block: wells differ in more than one entry");
      diff_axis = a;
    }
  if (diff_axis < 0) throw std::invalid_argument("branching_block: identical wells");
  if (len <= 4.0 * h / teeth)
    throw std::invalid_argument("branching_block: aspect violation, need len > 4 h / teeth");

  SceneBuilder b(K.n, K, "branching_block");
  BlockGeom g;
  g.osc_axis = diff_axis;
  g.s_lo = 0;
  g.s_hi = h;
  g.xl0 = 0;
  g.xr0 = len;
  g.teeth = teeth;

  double P = K.well_d(phase_p, diff_axis), Q = K.well_d(phase_q, diff_axis);
  double Bv = wfrac * P + (1 - wfrac) * Q;
  BlockPair pair;
  pair.dev_p = P - Bv;
  pair.dev_q = Q - Bv;
  pair.wfrac = wfrac;
  pair.phase_p = phase_p;
  pair.phase_q = phase_q;

  AffineBase base;
  std::array<double, 3> bd{0, 0, 0};
  for (int a = 0; a < K.n; ++a)
    bd[a] = wfrac * K.well_d(phase_p, a) + (1 - wfrac) * K.well_d(phase_q, a);
  base.grad = mat_diag(bd);

  emit_branch_block(b, g, pair, base);
  Scene s = b.take();
  s.declared_volume = len * h;
  return s;
}

}  // namespace nuclab
