#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nuclab/polynomial.hpp"
#include "nuclab/rational.hpp"

namespace nuclab {

enum class WellFamily {
  two_well,
  four_well_2d,
  four_well_3d,
  eight_well_3d,
  tartar,
  single_well_rank1,
};

// Polynomial relation between diagonal components of the phase indicator:
// chi[to] = p(sum over `from` of chi[i]).  Component indices are 0-based.
struct Relation {
  std::string name;
  std::vector<int> from;
  int to = 0;
  Polynomial p;
  // true for relations reproduced verbatim from a source with a known bad
  // coefficient; kept so the discrepancy stays visible in reports.
  bool known_discrepant = false;
};

// A finite set of diagonal n x n matrices (the martensite wells).  The
// austenite zero matrix is an implicit member of K0 = K u {0}, never stored.
struct WellSet {
  int n = 2;
  std::string name;
  std::vector<std::array<Rational, 3>> wells;   // diagonal entries, first n used
  std::vector<Relation> relations;

  int count() const { return (int)wells.size(); }
  double well_d(int w, int j) const { return wells[w][j].value(); }
  std::array<double, 3> diag_d(int w) const {
    return {wells[w][0].value(), wells[w][1].value(), wells[w][2].value()};
  }
  // Frobenius norm of well w (diagonal matrix).
  double norm_d(int w) const;
};

inline constexpr int kAustenite = -1;

WellSet make_well_set(WellFamily family, Rational lambda = Rational(1, 2), int n = 0);
WellSet make_custom_well_set(std::string name, int n,
                             std::vector<std::array<Rational, 3>> wells);

struct Projection {
  int phase = kAustenite;  // kAustenite or well index
  double distance = 0.0;
};

// Nearest element of K0 in Frobenius distance; ties prefer austenite, then
// the lowest well index.
Projection project_to_K0(const double* diag, int n, const WellSet& K);

struct RelationReport {
  bool pass = false;
  std::vector<Rational> residuals;  // one per well, plus the residual at 0 last
};

// Evaluates p at each well's source component (or component sum) and at 0,
// against the target component.  Exact arithmetic.
RelationReport verify_relation(const WellSet& K, const std::vector<int>& from, int to,
                               const Polynomial& p);

// Builds the minimal-degree relation polynomial through the given (s, t)
// pairs; thin wrapper kept for spec-level naming.
Polynomial interpolate_relation(const std::vector<std::pair<Rational, Rational>>& pairs);

std::string well_set_to_json(const WellSet& K);
WellSet well_set_from_json(const std::string& text);

}  // namespace nuclab
