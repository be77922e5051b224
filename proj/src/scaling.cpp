#include "nuclab/scaling.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nuclab/constants.hpp"
#include "nuclab/faces.hpp"
#include "nuclab/fourier_lab.hpp"

namespace nuclab {

std::string family_name(Family f) {
  switch (f) {
    case Family::ball: return "ball";
    case Family::lens21: return "lens21";
    case Family::diamond_nd: return "diamond_nd";
    case Family::branch_rect21: return "branch_rect21";
    case Family::branch_rect_nd: return "branch_rect_nd";
    case Family::lens_branch_4w: return "lens_branch_4w";
    case Family::double_branch_4w: return "double_branch_4w";
    case Family::tartar_k: return "tartar_k";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& s) {
  for (Family f : {Family::ball, Family::lens21, Family::diamond_nd, Family::branch_rect21,
                   Family::branch_rect_nd, Family::lens_branch_4w, Family::double_branch_4w,
                   Family::tartar_k})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

namespace {

struct ParamSpace {
  std::vector<std::string> names;  // free parameters, optimized in log space
  std::vector<double> init;
  std::vector<std::pair<double, double>> range;  // [lo, hi] per parameter
};

ParamSpace param_space(Family fam, double V, const SweepConfig& cfg) {
  ParamSpace ps;
  auto clamp_init = [&](double v, double lo, double hi) {
    return std::min(std::max(v, lo * 1.0000001), hi * 0.9999999);
  };
  switch (fam) {
    case Family::ball:
      break;  // r is pinned by V
    case Family::lens21: {
      double lo = std::sqrt(2 * V), hi = 2 * V;
      ps.names = {"H"};
      ps.range = {{lo, hi}};
      ps.init = {clamp_init(std::pow(V, 0.6) * std::pow(2.0, 0.4), lo, hi)};
      break;
    }
    case Family::branch_rect21: {
      double lo = std::sqrt(V), hi = V;
      ps.names = {"H"};
      ps.range = {{lo, hi}};
      ps.init = {clamp_init(std::pow(V, 0.6), lo, hi)};
      break;
    }
    case Family::diamond_nd: {
      if (cfg.n == 2) {
        double lo = std::sqrt(2 * V), hi = 2 * V;
        ps.names = {"H"};
        ps.range = {{lo, hi}};
        ps.init = {clamp_init(std::pow(2 * V, 0.6), lo, hi)};
      } else {
        double lo = std::cbrt(6 * V), hi = std::sqrt(6 * V);
        ps.names = {"H"};
        ps.range = {{lo, hi}};
        ps.init = {clamp_init(std::pow(6 * V, 3.0 / 8), lo, hi)};
      }
      break;
    }
    case Family::branch_rect_nd: {
      double lo = std::cbrt(V), hi = std::sqrt(V);
      ps.names = {"H"};
      ps.range = {{lo, hi}};
      ps.init = {clamp_init(std::pow(V, 3.0 / 8), lo, hi)};
      break;
    }
    case Family::lens_branch_4w: {
      double lo = std::sqrt(2 * V), hi = 2 * V;
      double H0 = clamp_init(std::pow(2, 3.0 / 7) * std::pow(V, 4.0 / 7), lo, hi);
      double L0 = 2 * V / H0;
      double r0 = std::min(std::pow(L0, 2.0 / 3) / 2, L0 / 16);
      ps.names = {"H", "r"};
      ps.range = {{lo, hi}, {1e-9, 1e9}};
      ps.init = {H0, r0};
      break;
    }
    case Family::double_branch_4w: {
      double lo = std::sqrt(V), hi = V;
      ps.names = {"H"};
      ps.range = {{lo, hi}};
      ps.init = {clamp_init(std::pow(V, 4.0 / 7), lo, hi)};
      break;
    }
    case Family::tartar_k: {
      double L = std::sqrt(V);
      int k = std::max(1, (int)std::llround(constants::kTartarC1 * std::sqrt(std::log(L))));
      double r0 = constants::kTartarC2 * std::pow(L, double(k) / (k + 1));
      r0 = std::min(r0, 0.99 * L / 8);
      ps.names = {"r"};
      ps.range = {{r0 / 8, std::min(r0 * 8, 0.999 * L / 8)}};
      ps.init = {std::min(r0, ps.range[0].second)};
      break;
    }
  }
  return ps;
}

}  // namespace

Construction build_family(Family fam, double V, const std::vector<double>& p,
                          const SweepConfig& cfg) {
  switch (fam) {
    case Family::ball: {
      WellSet K = make_well_set(WellFamily::two_well,
                                Rational((long long)std::llround(cfg.lambda * 720720), 720720),
                                cfg.n);
      return construct_ball(K, V);
    }
    case Family::lens21: {
      double H = p.at(0), L = 2 * V / H;
      return construct_lens21(cfg.lambda, L, H);
    }
    case Family::branch_rect21: {
      double H = p.at(0), L = V / H;
      return construct_branch_rect21(cfg.lambda, L, H);
    }
    case Family::diamond_nd: {
      double H = p.at(0);
      double L = cfg.n == 2 ? 2 * V / H : 6 * V / (H * H);
      return construct_diamond_nd(cfg.n, L, H);
    }
    case Family::branch_rect_nd: {
      double H = p.at(0), L = V / (H * H);
      return construct_branch_rect_nd(3, cfg.lambda, L, H);
    }
    case Family::lens_branch_4w: {
      double H = p.at(0), L = 2 * V / H, r = p.at(1);
      return construct_lens_branch_4w(L, H, r);
    }
    case Family::double_branch_4w: {
      double H = p.at(0), L = V / H;
      return construct_double_branch_4w(L, H, cfg.theta);
    }
    case Family::tartar_k: {
      double L = std::sqrt(V), H = L;
      int k = std::max(1, (int)std::llround(constants::kTartarC1 * std::sqrt(std::log(L))));
      return construct_tartar(L, H, p.at(0), k);
    }
  }
  throw std::logic_error("unknown family");
}

OptimizedPoint optimize_params(Family fam, double V, const SweepConfig& cfg) {
  if (fam != Family::ball && V <= 1)
    throw std::invalid_argument("optimize_params: V <= 1 is out of the large-volume regime");
  ParamSpace ps = param_space(fam, V, cfg);
  std::vector<double> x = ps.init;

  auto eval = [&](const std::vector<double>& q) -> double {
    try {
      Construction c = build_family(fam, V, q, cfg);
      return exact_energy(c.scene, 1.0, false).total();
    } catch (const std::exception&) {
      return 1e300;
    }
  };

  if (!x.empty()) {
    const double gr = 0.6180339887498949;
    for (int round = 0; round < cfg.rounds; ++round) {
      for (size_t var = 0; var < x.size(); ++var) {
        double la = std::log(ps.range[var].first), lb = std::log(ps.range[var].second);
        // shrink the bracket around the current point after the first round
        if (round > 0) {
          la = std::max(la, std::log(x[var]) - 1.0);
          lb = std::min(lb, std::log(x[var]) + 1.0);
        }
        double a = la, b = lb;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        auto feval = [&](double lv) {
          std::vector<double> q = x;
          q[var] = std::exp(lv);
          return eval(q);
        };
        double fc = feval(c), fd = feval(d);
        for (int it = 0; it < cfg.golden_steps; ++it) {
          if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = feval(c);
          } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = feval(d);
          }
        }
        x[var] = std::exp(0.5 * (a + b));
      }
    }
  }

  OptimizedPoint out;
  try {
    Construction c = build_family(fam, V, x, cfg);
    out.energy = exact_energy(c.scene, 1.0, true);
    if (cfg.check_admissibility) {
      AdmissibilityReport rep = check_admissible(c.scene);
      out.admissible = rep.pass(1e-8) && rep.volume_rel_error < 1e-9;
    } else {
      out.admissible = true;
    }
    for (size_t i = 0; i < ps.names.size(); ++i) out.params.push_back({ps.names[i], x[i]});
    // derived parameters for reporting
    switch (fam) {
      case Family::lens21:
      case Family::diamond_nd:
        out.params.push_back({"L", cfg.n == 2 ? 2 * V / x[0] : 6 * V / (x[0] * x[0])});
        break;
      case Family::branch_rect21:
      case Family::double_branch_4w:
        out.params.push_back({"L", V / x[0]});
        break;
      case Family::branch_rect_nd:
        out.params.push_back({"L", V / (x[0] * x[0])});
        break;
      case Family::lens_branch_4w:
        out.params.push_back({"L", 2 * V / x[0]});
        break;
      case Family::tartar_k: {
        double L = std::sqrt(V);
        out.params.push_back({"L", L});
        out.params.push_back(
            {"k", (double)std::max(1, (int)std::llround(constants::kTartarC1 *
                                                        std::sqrt(std::log(L))))});
        break;
      }
      default:
        break;
    }
  } catch (const std::exception& e) {
    out.failed = true;
    out.error = e.what();
  }
  return out;
}

ScalingReport sweep(Family fam, const std::vector<double>& V_grid, const SweepConfig& cfg) {
  for (size_t i = 1; i < V_grid.size(); ++i)
    if (V_grid[i] <= V_grid[i - 1])
      throw std::invalid_argument("sweep: V grid must be strictly increasing");
  if (V_grid.empty()) throw std::invalid_argument("sweep: empty V grid");
  ScalingReport rep;
  rep.family = fam;
  rep.cfg = cfg;
  switch (fam) {
    case Family::ball:
    case Family::lens21:
    case Family::branch_rect21:
    case Family::diamond_nd:
    case Family::branch_rect_nd:
      rep.wellset = "two_well";
      break;
    case Family::lens_branch_4w:
    case Family::double_branch_4w:
      rep.wellset = "four_well_2d";
      break;
    case Family::tartar_k:
      rep.wellset = "tartar";
      break;
  }
  for (double V : V_grid) {
    SweepRow row;
    row.V = V;
    if (fam == Family::ball) {
      OptimizedPoint pt;
      try {
        Construction c = build_family(fam, V, {}, cfg);
        pt.energy = exact_energy(c.scene, 1.0, true);
        pt.admissible = !cfg.check_admissibility || check_admissible(c.scene).pass(1e-8);
      } catch (const std::exception& e) {
        pt.failed = true;
        pt.error = e.what();
      }
      row.point = pt;
    } else {
      row.point = optimize_params(fam, V, cfg);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace {

FitResult ols(const std::vector<double>& xs, const std::vector<double>& ys, std::string model) {
  double n = (double)xs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0, ybar = sy / n, rmax = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (slope * xs[i] + intercept);
    ss_res += e * e;
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    rmax = std::max(rmax, std::abs(e));
  }
  FitResult f;
  f.model = std::move(model);
  f.slope = slope;
  f.intercept = intercept;
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  f.residual_max = rmax;
  return f;
}

}  // namespace

FitResult fit_power_law(const ScalingReport& rep, double V_min, double V_max) {
  std::vector<double> xs, ys;
  for (const auto& row : rep.rows) {
    if (row.point.failed || row.V < V_min || row.V > V_max) continue;
    xs.push_back(std::log(row.V));
    ys.push_back(std::log(row.point.energy.total()));
  }
  if (xs.size() < 4)
    throw std::invalid_argument("fit_power_law: fewer than 4 rows in range");
  return ols(xs, ys, "power");
}

FitResult fit_stretched_log(const ScalingReport& rep) {
  std::vector<double> xs, ys;
  for (const auto& row : rep.rows) {
    if (row.point.failed || row.V <= 1) continue;
    xs.push_back(std::sqrt(std::log(row.V)));
    ys.push_back(std::log(row.V / row.point.energy.total()));
  }
  if (xs.size() < 5)
    throw std::invalid_argument("fit_stretched_log: fewer than 5 usable rows");
  return ols(xs, ys, "stretched_log");
}

std::string report_to_csv(const ScalingReport& rep) {
  std::string out;
  char buf[512];
  // header: union of parameter names in first non-failed row order
  std::vector<std::string> pnames;
  for (const auto& row : rep.rows)
    if (!row.point.failed) {
      for (auto& kv : row.point.params) pnames.push_back(kv.first);
      break;
    }
  out += "V";
  for (auto& p : pnames) out += "," + p;
  out += ",E_el,E_surf,E_total,admissible\n";
  for (const auto& row : rep.rows) {
    if (row.point.failed) {
      snprintf(buf, sizeof buf, "%.12g", row.V);
      out += buf;
      for (size_t i = 0; i < pnames.size(); ++i) out += ",nan";
      out += ",nan,nan,nan,failed\n";
      continue;
    }
    snprintf(buf, sizeof buf, "%.12g", row.V);
    out += buf;
    for (auto& p : pnames) {
      double v = std::nan("");
      for (auto& kv : row.point.params)
        if (kv.first == p) v = kv.second;
      snprintf(buf, sizeof buf, ",%.12g", v);
      out += buf;
    }
    snprintf(buf, sizeof buf, ",%.12g,%.12g,%.12g,%d\n", row.point.energy.elastic,
             row.point.energy.surface, row.point.energy.total(), row.point.admissible ? 1 : 0);
    out += buf;
  }
  for (const auto& f : rep.fits) {
    snprintf(buf, sizeof buf,
             "# fit {\"model\":\"%s\",\"slope\":%.12g,\"intercept\":%.12g,\"r2\":%.12g,"
             "\"residual_max\":%.12g}\n",
             f.model.c_str(), f.slope, f.intercept, f.r2, f.residual_max);
    out += buf;
  }
  return out;
}

namespace {

Prediction make_pred(int n, Rational large, std::string key) {
  Prediction p;
  p.small_volume = Rational(n - 1, n);
  p.large_volume = large;
  p.eps_exponent = Rational(n) * (Rational(1) - large);
  p.key = std::move(key);
  return p;
}

}  // namespace

Prediction predicted_scaling_family(Family fam, int n) {
  switch (fam) {
    case Family::ball:
      return make_pred(n, Rational(n - 1, n), "ball");
    case Family::lens21:
    case Family::branch_rect21:
      return make_pred(2, lower_exponent(2, 1), family_name(fam));
    case Family::diamond_nd:
    case Family::branch_rect_nd:
      return make_pred(n, Rational(3 * n - 3, 3 * n - 1), family_name(fam));
    case Family::lens_branch_4w:
    case Family::double_branch_4w:
      return make_pred(2, lower_exponent(2, 2), family_name(fam));
    case Family::tartar_k: {
      Prediction p;
      p.small_volume = Rational(1, 2);
      p.large_volume = Rational(1);
      p.eps_exponent = Rational(0);
      p.stretched = true;
      p.key = "tartar_k";
      return p;
    }
  }
  throw std::logic_error("unknown family");
}

Prediction predicted_scaling_nm(int n, int m) {
  Prediction p = make_pred(n, lower_exponent(n, m), "n" + std::to_string(n) + "_m" +
                                                        std::to_string(m));
  if (m == n && n >= 3) p.conjecture = true;  // no matching construction
  return p;
}

Prediction predicted_scaling_one_plus_one(int n) {
  return make_pred(n, Rational(2 * n - 2, 2 * n - 1), "one_plus_one_n" + std::to_string(n));
}

}  // namespace nuclab
