#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nuclab/constructions.hpp"
#include "nuclab/energy.hpp"
#include "nuclab/rational.hpp"

namespace nuclab {

enum class Family {
  ball,
  lens21,
  diamond_nd,
  branch_rect21,
  branch_rect_nd,
  lens_branch_4w,
  double_branch_4w,
  tartar_k,
};

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& s);

struct SweepConfig {
  int n = 2;               // dimension for ball / diamond_nd / branch_rect_nd
  double lambda = 0.5;     // two-well fraction
  double theta = 1.0 / 3;  // double-branch outer ratio
  int rounds = 3;          // coordinate-descent rounds
  int golden_steps = 20;   // golden-section iterations per round
  bool check_admissibility = true;
  uint64_t seed = 0;       // recorded in reports; the pipeline is deterministic
};

struct OptimizedPoint {
  std::vector<std::pair<std::string, double>> params;
  EnergyBreakdown energy;
  bool admissible = false;
  bool failed = false;
  std::string error;
};

// Optimizes the family's free parameters at volume V: starts from the
// asymptotic relation, then golden-section coordinate descent in log space
// with a fixed budget.  Throws on V outside the family regime.
OptimizedPoint optimize_params(Family fam, double V, const SweepConfig& cfg);

// Builds the construction at explicit parameters (no optimization).
Construction build_family(Family fam, double V, const std::vector<double>& params,
                          const SweepConfig& cfg);

struct SweepRow {
  double V = 0;
  OptimizedPoint point;
};

struct FitResult {
  std::string model;  // "power" | "stretched_log"
  double slope = 0;   // power slope, or the stretched constant C
  double intercept = 0;
  double r2 = 0;
  double residual_max = 0;
};

struct ScalingReport {
  Family family = Family::ball;
  std::string wellset;
  SweepConfig cfg;
  std::vector<SweepRow> rows;
  std::vector<FitResult> fits;
};

ScalingReport sweep(Family fam, const std::vector<double>& V_grid, const SweepConfig& cfg);

// OLS on (log V, log E_total) over rows with V in [V_min, V_max].
FitResult fit_power_law(const ScalingReport& rep, double V_min, double V_max);
// OLS on (sqrt(log V), log(V / E_total)); the slope is the reported C.
FitResult fit_stretched_log(const ScalingReport& rep);

std::string report_to_csv(const ScalingReport& rep);

// Piecewise exponent prediction table.
struct Prediction {
  Rational small_volume;        // exponent for V <= 1
  Rational large_volume;        // exponent for V > 1 (power families)
  Rational eps_exponent;        // epsilon power via n (1 - large_volume)
  bool stretched = false;       // infinite-order laminate: V exp(-C sqrt(log V))
  bool conjecture = false;
  std::string key;
};

Prediction predicted_scaling_family(Family fam, int n = 2);
Prediction predicted_scaling_nm(int n, int m);
Prediction predicted_scaling_one_plus_one(int n);

}  // namespace nuclab
