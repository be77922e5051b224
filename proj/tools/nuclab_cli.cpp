// Command-line front end: construct scenes, evaluate energies, run scaling
// sweeps and fits, run Fourier diagnostics, and emit CSV/JSON/SVG reports.

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"
#include "nuclab/constants.hpp"
#include "nuclab/constructions.hpp"
#include "nuclab/energy.hpp"
#include "nuclab/faces.hpp"
#include "nuclab/fourier_lab.hpp"
#include "nuclab/lamination.hpp"
#include "nuclab/rasterize.hpp"
#include "nuclab/scaling.hpp"
#include "nuclab/svg.hpp"

using namespace nuclab;

namespace {

double parse_fraction(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return std::stod(s);
  return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
}

struct FamilyArgs {
  std::string family;
  std::string lambda = "1/2";
  double L = 0, H = 0, r = 0, V = 0, theta = 1.0 / 3;
  int k = 1, n = 2;
};

Construction build_from_args(const FamilyArgs& a) {
  auto fam = family_from_name(a.family);
  if (!fam) throw std::invalid_argument("unknown family '" + a.family + "'");
  double lambda = parse_fraction(a.lambda);
  switch (*fam) {
    case Family::ball: {
      WellSet K = make_well_set(WellFamily::two_well,
                                Rational((long long)std::llround(lambda * 720720), 720720), a.n);
      return construct_ball(K, a.V);
    }
    case Family::lens21: return construct_lens21(lambda, a.L, a.H);
    case Family::diamond_nd: return construct_diamond_nd(a.n, a.L, a.H);
    case Family::branch_rect21: return construct_branch_rect21(lambda, a.L, a.H);
    case Family::branch_rect_nd: return construct_branch_rect_nd(3, lambda, a.L, a.H);
    case Family::lens_branch_4w: return construct_lens_branch_4w(a.L, a.H, a.r);
    case Family::double_branch_4w: return construct_double_branch_4w(a.L, a.H, a.theta);
    case Family::tartar_k: return construct_tartar(a.L, a.H, a.r, a.k);
  }
  throw std::logic_error("unreachable");
}

void add_family_options(CLI::App* cmd, FamilyArgs& a) {
  cmd->add_option("--family", a.family, "construction family")->required();
  cmd->add_option("--lambda", a.lambda, "two-well fraction (rational like 1/2 or decimal)");
  cmd->add_option("--L", a.L, "length parameter");
  cmd->add_option("--H", a.H, "height parameter");
  cmd->add_option("--r", a.r, "fine-scale parameter");
  cmd->add_option("--V", a.V, "support volume (ball family)");
  cmd->add_option("--theta", a.theta, "outer refinement ratio (double branching)");
  cmd->add_option("--k", a.k, "laminate order (nested laminate)");
  cmd->add_option("--n", a.n, "spatial dimension");
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> g;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) g.push_back(std::stod(tok));
  return g;
}

std::string timestamp() {
  char buf[64];
  std::time_t t = std::time(nullptr);
  std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", std::gmtime(&t));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nuclab: multi-well nucleation scaling laboratory"};
  app.require_subcommand(1);
  int jobs = 0;
  app.add_option("--jobs", jobs, "worker threads (0 = library default)");

  // ---- construct ----
  FamilyArgs ca;
  std::string c_scene, c_field, c_svg;
  int c_N = 256;
  double c_padding = 2.0;
  auto* construct = app.add_subcommand("construct", "build a scene, print its energy");
  add_family_options(construct, ca);
  construct->add_option("--scene", c_scene, "write scene JSON here");
  construct->add_option("--field", c_field, "rasterize and write a NUCF field here");
  construct->add_option("--svg", c_svg, "write an SVG rendering here (2D only)");
  construct->add_option("--N", c_N, "rasterization resolution (power of two)");
  construct->add_option("--padding", c_padding, "rasterization padding factor (>= 2)");

  // ---- energy ----
  FamilyArgs ea;
  bool e_spectral = false;
  int e_N = 256;
  auto* energy = app.add_subcommand("energy", "evaluate the exact energy of a construction");
  add_family_options(energy, ea);
  energy->add_flag("--spectral", e_spectral, "also rasterize and report the spectral energy");
  energy->add_option("--N", e_N, "spectral resolution");

  // ---- sweep ----
  std::string s_family, s_grid, s_out, s_fit = "power";
  SweepConfig s_cfg;
  std::string s_lambda = "1/2";
  auto* sw = app.add_subcommand("sweep", "volume sweep with per-volume optimization");
  sw->add_option("--family", s_family)->required();
  sw->add_option("--grid", s_grid, "comma-separated volumes, increasing")->required();
  sw->add_option("--out", s_out, "CSV output path (default {family}_{wellset}_{time}.csv)");
  sw->add_option("--fit", s_fit, "power | stretched | both | none");
  sw->add_option("--n", s_cfg.n);
  sw->add_option("--lambda", s_lambda);
  sw->add_option("--theta", s_cfg.theta);
  sw->add_option("--seed", s_cfg.seed);

  // ---- fit ----
  std::string f_csv, f_model = "power";
  double f_vmin = 0, f_vmax = 1e300;
  auto* fit = app.add_subcommand("fit", "fit a scaling model to a sweep CSV");
  fit->add_option("--csv", f_csv)->required();
  fit->add_option("--model", f_model, "power | stretched");
  fit->add_option("--vmin", f_vmin);
  fit->add_option("--vmax", f_vmax);

  // ---- diagnose ----
  std::string d_mode, d_field, d_relation = "g", d_out;
  double d_mu = 0.3, d_mu1 = 0, d_mu2 = 0, d_gamma = constants::kDefaultGamma;
  int d_axis = 0, d_comp = -1, d_comp_b = -1;
  auto* diag = app.add_subcommand("diagnose", "Fourier-space diagnostics on a field file");
  diag->add_option("mode", d_mode, "cones | lowfreq | commutator")->required();
  diag->add_option("field", d_field, "NUCF field file")->required();
  diag->add_option("--mu", d_mu, "cone aperture");
  diag->add_option("--mu1", d_mu1, "outer radius (commutator)");
  diag->add_option("--mu2", d_mu2, "cone radius");
  diag->add_option("--axis", d_axis, "cone axis (0-based)");
  diag->add_option("--comp", d_comp, "component (default: cone axis)");
  diag->add_option("--comp-b", d_comp_b, "target component of the relation");
  diag->add_option("--relation", d_relation, "relation name in the field's well set");
  diag->add_option("--gamma", d_gamma, "psi_gamma exponent");
  diag->add_option("--out", d_out, "write the JSON report here as well");

  // ---- predict ----
  std::string p_family;
  int p_n = 0, p_m = 0;
  bool p_oneone = false;
  auto* pred = app.add_subcommand("predict", "predicted scaling exponent table");
  pred->add_option("--family", p_family);
  pred->add_option("--n", p_n);
  pred->add_option("--m", p_m);
  pred->add_flag("--one-plus-one", p_oneone, "single rank-one well plus austenite");

  // ---- wells ----
  std::string w_family;
  std::string w_lambda = "1/2";
  int w_n = 0, w_max_order = 10;
  auto* wells = app.add_subcommand("wells", "well-set data, relations, lamination order");
  wells->add_option("--family", w_family)->required();
  wells->add_option("--lambda", w_lambda);
  wells->add_option("--n", w_n);
  wells->add_option("--max-order", w_max_order);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#endif

  try {
    if (*construct) {
      Construction c = build_from_args(ca);
      EnergyBreakdown e = exact_energy(c.scene, 1.0, true);
      if (!c_scene.empty()) {
        std::ofstream f(c_scene);
        f << scene_to_json(c.scene);
      }
      if (!c_field.empty()) {
        GridField g = rasterize(c.scene, c_N, c_padding);
        write_field(g, c_field);
        nlohmann::json side;
        side["wellset"] = c.scene.wells.name;
        side["family"] = c.scene.family;
        side["N"] = g.N;
        side["T"] = g.T;
        side["feature_warning"] = g.feature_warning;
        std::ofstream f(c_field + ".json");
        f << side.dump(2) << "\n";
      }
      if (!c_svg.empty()) write_svg(c.scene, c_svg);
      std::cout << energy_to_json(e) << "\n";
    } else if (*energy) {
      Construction c = build_from_args(ea);
      EnergyBreakdown e = exact_energy(c.scene, 1.0, true);
      nlohmann::json j = nlohmann::json::parse(energy_to_json(e));
      j["bound_form"] = c.bound_form;
      j["bound_desc"] = c.bound_desc;
      if (e_spectral) {
        GridField g = rasterize(c.scene, e_N, 2.0);
        double k0 = 0;
        j["spectral_elastic"] = spectral_elastic(g, &k0);
        j["spectral_k0"] = k0;
        j["resolution"] = e_N;
      }
      std::cout << j.dump() << "\n";
    } else if (*sw) {
      auto fam = family_from_name(s_family);
      if (!fam) throw std::invalid_argument("unknown family '" + s_family + "'");
      s_cfg.lambda = parse_fraction(s_lambda);
      auto grid = parse_grid(s_grid);
      ScalingReport rep = sweep(*fam, grid, s_cfg);
      if (s_fit == "power" || s_fit == "both")
        rep.fits.push_back(fit_power_law(rep, 0, 1e300));
      if (s_fit == "stretched" || s_fit == "both")
        rep.fits.push_back(fit_stretched_log(rep));
      std::string path = s_out.empty()
                             ? family_name(*fam) + "_" + rep.wellset + "_" + timestamp() + ".csv"
                             : s_out;
      std::ofstream f(path);
      f << report_to_csv(rep);
      int failed = 0;
      for (auto& row : rep.rows)
        if (row.point.failed) ++failed;
      nlohmann::json j;
      j["csv"] = path;
      j["rows"] = rep.rows.size();
      j["failed"] = failed;
      for (auto& fr : rep.fits)
        j["fits"].push_back({{"model", fr.model},
                             {"slope", fr.slope},
                             {"intercept", fr.intercept},
                             {"r2", fr.r2}});
      std::cout << j.dump() << "\n";
      if (failed > 0) std::cerr << failed << " row(s) infeasible; see CSV\n";
    } else if (*fit) {
      std::ifstream f(f_csv);
      if (!f) throw std::runtime_error("cannot open " + f_csv);
      std::string line;
      std::getline(f, line);  // header
      std::stringstream hs(line);
      std::vector<std::string> cols;
      std::string tok;
      while (std::getline(hs, tok, ',')) cols.push_back(tok);
      int vcol = -1, ecol = -1;
      for (size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == "V") vcol = (int)i;
        if (cols[i] == "E_total") ecol = (int)i;
      }
      if (vcol < 0 || ecol < 0) throw std::runtime_error("CSV lacks V / E_total columns");
      ScalingReport rep;
      while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ls(line);
        std::vector<std::string> vals;
        while (std::getline(ls, tok, ',')) vals.push_back(tok);
        if ((int)vals.size() <= std::max(vcol, ecol)) continue;
        if (vals.back() == "failed") continue;
        SweepRow row;
        row.V = std::stod(vals[vcol]);
        double et = std::stod(vals[ecol]);
        row.point.energy.elastic = et;  // only the total matters for fitting
        row.point.energy.epsilon = 0;
        rep.rows.push_back(row);
      }
      FitResult fr = f_model == "stretched" ? fit_stretched_log(rep)
                                            : fit_power_law(rep, f_vmin, f_vmax);
      nlohmann::json j{{"model", fr.model},
                       {"slope", fr.slope},
                       {"intercept", fr.intercept},
                       {"r2", fr.r2},
                       {"residual_max", fr.residual_max}};
      std::cout << j.dump() << "\n";
    } else if (*diag) {
      GridField g = read_field(d_field);
      if (d_comp < 0) d_comp = d_axis;
      if (d_mu2 <= 0) d_mu2 = 3.14159265358979 * g.N / g.T / 2;  // half Nyquist
      nlohmann::json j;
      if (d_mode == "cones") {
        Cone cone{d_axis, d_mu, d_mu2};
        double res = cone_residual(g, cone, d_comp);
        j = {{"mode", "cones"}, {"axis", d_axis},   {"mu", d_mu},
             {"mu2", d_mu2},    {"comp", d_comp},   {"residual", res},
             {"l2sq", g.l2sq(d_comp)}};
      } else if (d_mode == "lowfreq") {
        Cone cone{d_axis, d_mu, d_mu2};
        LowFreqResult lf = low_frequency_mass(g, cone, d_comp);
        j = {{"mode", "lowfreq"}, {"axis", d_axis}, {"mu", d_mu},      {"mu2", d_mu2},
             {"comp", d_comp},    {"mass", lf.mass}, {"bound", lf.bound},
             {"holds", lf.mass <= lf.bound}};
      } else if (d_mode == "commutator") {
        // locate the relation in the field's well set
        auto wsname = g.wellset_name.empty() ? std::string("four_well_2d") : g.wellset_name;
        WellSet K;
        if (wsname == "four_well_2d") K = make_well_set(WellFamily::four_well_2d);
        else if (wsname == "tartar") K = make_well_set(WellFamily::tartar);
        else if (wsname == "four_well_3d") K = make_well_set(WellFamily::four_well_3d);
        else if (wsname == "eight_well_3d") K = make_well_set(WellFamily::eight_well_3d);
        else throw std::invalid_argument("no relation registry for well set " + wsname);
        const Relation* rel = nullptr;
        for (const auto& r : K.relations)
          if (r.name == d_relation) rel = &r;
        if (!rel) throw std::invalid_argument("unknown relation '" + d_relation + "'");
        if (rel->from.size() != 1)
          throw std::invalid_argument("commutator probe needs a single-component relation");
        RelationReport rr = verify_relation(K, rel->from, rel->to, rel->p);
        if (!rr.pass)
          throw std::invalid_argument("relation '" + d_relation +
                                      "' does not verify on the well set");
        if (d_mu1 <= 0) d_mu1 = 3.14159265358979 * g.N / g.T;
        CommutatorReport cr =
            commutator_probe(g, rel->p, rel->from[0], rel->to, d_mu, d_mu1, d_mu2, d_gamma);
        j = {{"mode", "commutator"}, {"relation", d_relation}, {"mu", d_mu},
             {"mu1", d_mu1},         {"mu2", d_mu2},           {"mu_tilde", cr.mu_tilde},
             {"gamma", d_gamma},     {"lhs", cr.lhs},          {"rhs_relation", cr.rhs_relation},
             {"rhs_tail", cr.rhs_tail}, {"fitted_c", cr.fitted_c}};
      } else {
        throw std::invalid_argument("diagnose mode must be cones | lowfreq | commutator");
      }
      if (!d_out.empty()) {
        std::ofstream f(d_out);
        f << j.dump(2) << "\n";
      }
      std::cout << j.dump() << "\n";
    } else if (*pred) {
      Prediction p;
      if (!p_family.empty()) {
        auto fam = family_from_name(p_family);
        if (!fam) throw std::invalid_argument("unknown family '" + p_family + "'");
        p = predicted_scaling_family(*fam, p_n == 0 ? (*fam == Family::diamond_nd ||
                                                       *fam == Family::branch_rect_nd ||
                                                       *fam == Family::ball
                                                           ? 3
                                                           : 2)
                                                    : p_n);
      } else if (p_oneone) {
        p = predicted_scaling_one_plus_one(p_n == 0 ? 2 : p_n);
      } else if (p_n > 0 && p_m > 0) {
        p = predicted_scaling_nm(p_n, p_m);
      } else {
        throw std::invalid_argument("predict needs --family, --n/--m, or --one-plus-one");
      }
      nlohmann::json j;
      j["key"] = p.key;
      j["small_volume_exponent"] = p.small_volume.str();
      if (p.stretched) {
        j["large_volume"] = "V exp(-C sqrt(log V))";
      } else {
        j["large_volume_exponent"] = p.large_volume.str();
        j["eps_exponent"] = p.eps_exponent.str();
      }
      if (p.conjecture) j["conjecture"] = true;
      std::cout << j.dump() << "\n";
    } else if (*wells) {
      WellFamily wf;
      if (w_family == "two_well") wf = WellFamily::two_well;
      else if (w_family == "four_well_2d") wf = WellFamily::four_well_2d;
      else if (w_family == "four_well_3d") wf = WellFamily::four_well_3d;
      else if (w_family == "eight_well_3d") wf = WellFamily::eight_well_3d;
      else if (w_family == "tartar") wf = WellFamily::tartar;
      else if (w_family == "single_well_rank1") wf = WellFamily::single_well_rank1;
      else throw std::invalid_argument("unknown well family '" + w_family + "'");
      WellSet K = make_well_set(wf,
                                Rational((long long)std::llround(parse_fraction(w_lambda) *
                                                                 720720),
                                         720720),
                                w_n);
      nlohmann::json j = nlohmann::json::parse(well_set_to_json(K));
      auto order = lamination_order_of_zero(K, w_max_order);
      j["lamination_order_of_zero"] =
          order ? nlohmann::json(*order) : nlohmann::json("not reached");
      for (auto& r : K.relations) {
        RelationReport rr = verify_relation(K, r.from, r.to, r.p);
        nlohmann::json res = nlohmann::json::array();
        for (auto& x : rr.residuals) res.push_back(x.str());
        j["relation_checks"].push_back(
            {{"name", r.name}, {"pass", rr.pass}, {"residuals", res}});
      }
      std::cout << j.dump(2) << "\n";
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
