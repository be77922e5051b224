#include <cmath>
#include <stdexcept>
#include <vector>

#include "nuclab/constructions.hpp"

namespace nuclab {

namespace {

// Corner spiral of the four-gradient square: each entry splits 50/50 along
// `axis` into child_a (a well index when a_is_well) and child_b (always
// another spiral node).  Gradients are diagonal, given by g.
struct SpiralNode {
  double g[2];
  int axis;
  int child_a;
  bool a_is_well;
  int child_b;
};

// ids: 0 root, 1 (0,1), 2 (0,-1), 3 (-1,1), 4 (1,1), 5 (1,-1), 6 (-1,-1)
const SpiralNode kSpiral[7] = {
    {{0, 0}, 1, 1, false, 2},   // 0 -> (0,1), (0,-1)
    {{0, 1}, 0, 3, false, 4},   // (0,1) -> (-1,1), (1,1)
    {{0, -1}, 0, 5, false, 6},  // (0,-1) -> (1,-1), (-1,-1)
    {{-1, 1}, 0, 1, true, 4},   // (-1,1) -> well A2, (1,1)
    {{1, 1}, 1, 2, true, 5},    // (1,1) -> well A3, (1,-1)
    {{1, -1}, 0, 3, true, 6},   // (1,-1) -> well A4, (-1,-1)
    {{-1, -1}, 1, 0, true, 3},  // (-1,-1) -> well A1, (-1,1)
};

struct TartarCtx {
  SceneBuilder* b;
  const WellSet* K;
  std::vector<double> rs;  // rs[j] = r (r/L)^(j-1), j = 1..k
  int k;
  double scale;
  long long cells_emitted = 0;
  long long cell_budget = 6000000;
};

int nearest_well(const WellSet& K, double d0, double d1) {
  int best = 0;
  double bd = 1e300;
  for (int w = 0; w < K.count(); ++w) {
    double a = d0 - K.well_d(w, 0), bb = d1 - K.well_d(w, 1);
    double d = a * a + bb * bb;
    if (d < bd) { bd = d; best = w; }
  }
  return best;
}

void plain_cell(TartarCtx& ctx, double x0, double x1, double y0, double y1,
                const AffineBase& base, int phase, uint8_t flags) {
  Vec pts[4] = {vec2(x0, y0), vec2(x1, y0), vec2(x1, y1), vec2(x0, y1)};
  double z[4] = {0, 0, 0, 0};
  add_scalar_cell(*ctx.b, std::span<const Vec>(pts, 4), std::span<const double>(z, 4), base, 0,
                  phase, flags, ctx.scale);
  ctx.cells_emitted++;
}

// rect [x0,x1] x [y0,y1]; node gradient is already folded into `base`.
void stripe(TartarCtx& ctx, double x0, double x1, double y0, double y1, int node, int depth,
            const AffineBase& base) {
  if (ctx.cells_emitted > ctx.cell_budget)
    throw std::invalid_argument("construct_tartar: feature scale too fine (cell budget hit)");
  const SpiralNode& nd = kSpiral[node];
  if (depth >= ctx.k) {
    plain_cell(ctx, x0, x1, y0, y1, base,
               nearest_well(*ctx.K, base.grad[0], base.grad[4]), kCellExempt);
    return;
  }
  const int a = nd.axis;          // oscillation axis of the children
  const int o = 1 - a;
  const double a_lo = a == 0 ? x0 : y0, a_hi = a == 0 ? x1 : y1;
  const double o_lo = o == 0 ? x0 : y0, o_hi = o == 0 ? x1 : y1;
  const double La = a_hi - a_lo, Lo = o_hi - o_lo;

  const double target = ctx.rs[depth + 1];
  int n = std::max(1, (int)std::floor(La / target));
  const double rt = La / n;  // realized period
  double w = std::min(rt, Lo / 4);

  double devA, devB;
  {
    double childA_g =
        nd.a_is_well ? ctx.K->well_d(nd.child_a, a) : kSpiral[nd.child_a].g[a];
    double childB_g = kSpiral[nd.child_b].g[a];
    devA = childA_g - nd.g[a];
    devB = childB_g - nd.g[a];
  }

  auto pt = [&](double sa, double so) { return a == 0 ? vec2(sa, so) : vec2(so, sa); };

  // margin taper strips along the two o-edges
  for (int side = 0; side < 2; ++side) {
    double o_edge = side == 0 ? o_lo : o_hi;
    double o_in = side == 0 ? o_lo + w : o_hi - w;
    for (int t = 0; t < n; ++t) {
      double s0 = a_lo + t * rt, sm = s0 + rt / 2, s1 = s0 + rt;
      double vm = devA * rt / 2;
      double segs[2][3] = {{s0, sm, 0}, {sm, s1, 0}};
      double vals[2][2] = {{0, vm}, {vm, 0}};
      double devs[2] = {devA, devB};
      for (int seg = 0; seg < 2; ++seg) {
        Vec p0 = pt(segs[seg][0], o_edge), p1 = pt(segs[seg][0], o_in),
            p2 = pt(segs[seg][1], o_in), p3 = pt(segs[seg][1], o_edge);
        int ph = nearest_well(*ctx.K, base.grad[0] + (a == 0 ? devs[seg] * 0.5 : 0.0),
                              base.grad[4] + (a == 1 ? devs[seg] * 0.5 : 0.0));
        double t1v[3] = {0, vals[seg][0], vals[seg][1]};
        Vec t1p[3] = {p0, p1, p2};
        add_scalar_cell(*ctx.b, std::span<const Vec>(t1p, 3), std::span<const double>(t1v, 3),
                        base, a, ph, kCellExempt, ctx.scale);
        double t2v[3] = {0, vals[seg][1], 0};
        Vec t2p[3] = {p0, p2, p3};
        add_scalar_cell(*ctx.b, std::span<const Vec>(t2p, 3), std::span<const double>(t2v, 3),
                        base, a, ph, kCellExempt, ctx.scale);
        ctx.cells_emitted += 2;
      }
    }
  }

  // core stripes recurse
  double core_lo = o_lo + w, core_hi = o_hi - w;
  for (int t = 0; t < n; ++t) {
    double s0 = a_lo + t * rt, sm = s0 + rt / 2, s1 = s0 + rt;
    // child A on [s0, sm]
    {
      AffineBase cb = base;
      cb.grad[a * 3 + a] += devA;
      Vec xr = pt(s0, core_lo);
      cb.u_ref = base.at(xr, 2);
      cb.x_ref = xr;
      double cx0 = a == 0 ? s0 : core_lo, cx1 = a == 0 ? sm : core_hi;
      double cy0 = a == 0 ? core_lo : s0, cy1 = a == 0 ? core_hi : sm;
      if (nd.a_is_well) {
        plain_cell(ctx, cx0, cx1, cy0, cy1, cb, nd.child_a, 0);
      } else {
        stripe(ctx, cx0, cx1, cy0, cy1, nd.child_a, depth + 1, cb);
      }
    }
    // child B on [sm, s1]
    {
      AffineBase cb = base;
      cb.grad[a * 3 + a] += devB;
      Vec xr = pt(sm, core_lo);
      Vec ur = base.at(xr, 2);
      ur[a] += devA * rt / 2;  // phi value at the segment midpoint
      cb.u_ref = ur;
      cb.x_ref = xr;
      double cx0 = a == 0 ? sm : core_lo, cx1 = a == 0 ? s1 : core_hi;
      double cy0 = a == 0 ? core_lo : sm, cy1 = a == 0 ? core_hi : s1;
      stripe(ctx, cx0, cx1, cy0, cy1, nd.child_b, depth + 1, cb);
    }
  }
}

}  // namespace

Construction construct_tartar(double L, double H, double r, int k) {
  if (!(H <= L)) throw std::invalid_argument("construct_tartar: requires H <= L");
  if (k < 1) throw std::invalid_argument("construct_tartar: k must be >= 1");
  if (!(r > 0 && r < H / 8))
    throw std::invalid_argument(
        "construct_tartar: scale condition r < H/8 violated (laminate would degenerate)");
  WellSet K = make_well_set(WellFamily::tartar);
  std::vector<double> rs(k + 1, 0.0);
  for (int j = 1; j <= k; ++j) rs[j] = r * std::pow(r / L, j - 1);
  // minimum feature guard: the deepest scales set the cell count
  double est = (L * H) / (rs[k] * (k >= 2 ? rs[k - 1] : H)) * 8;
  if (est > 4e6)
    throw std::invalid_argument(
        "construct_tartar: r_k below the minimum feature scale for this domain");

  SceneBuilder b(2, K, "tartar_k");
  TartarCtx ctx;
  ctx.b = &b;
  ctx.K = &K;
  ctx.rs = rs;
  ctx.k = k;
  ctx.scale = L + H;
  AffineBase base;  // zero state
  stripe(ctx, 0, L, 0, H, 0, 0, base);

  Construction out;
  out.scene = b.take();
  out.scene.declared_volume = L * H;
  double sum = 0;
  for (int j = 2; j <= k; ++j) sum += std::pow(2.0, -j) * (rs[j] / rs[j - 1]);
  out.bound_form =
      L * H * (std::pow(2.0, -k) + r / L + sum + std::pow(2.0, -k) / rs[k]);
  out.bound_desc = "C_T L H (2^-k + r/L + sum 2^-j r_j/r_j-1 + 2^-k / r_k)";
  return out;
}

}  // namespace nuclab
