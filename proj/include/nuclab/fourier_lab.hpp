#pragma once

#include "nuclab/grid.hpp"
#include "nuclab/polynomial.hpp"
#include "nuclab/rational.hpp"
#include "nuclab/wells.hpp"

namespace nuclab {

// Frequency cone about axis j: sum_{l != j} k_l^2 <= mu^2 |k|^2, |k| <= radius.
// Sharp indicator; k = 0 counts as inside.
struct Cone {
  int axis = 0;        // 0-based
  double mu = 0.5;     // aperture in (0,1)
  double radius = 0;   // physical |k| bound (2 pi m / T lattice)
  bool contains(const double* k, int n) const {
    double k2 = 0, off = 0;
    for (int a = 0; a < n; ++a) {
      k2 += k[a] * k[a];
      if (a != axis) off += k[a] * k[a];
    }
    if (k2 == 0) return true;
    return off <= mu * mu * k2 && k2 <= radius * radius;
  }
};

// Mass of component j outside the cone: sum_{k not in cone} |hat chi_jj|^2.
double cone_residual(const GridField& f, const Cone& cone, int comp);
namespace serial {
double cone_residual(const GridField& f, const Cone& cone, int comp);
}

// Mass inside the cone and the universal volume bound
// 8 |phi|_L1^2 radius^n mu^(n-1).
struct LowFreqResult {
  double mass = 0;
  double bound = 0;
};
LowFreqResult low_frequency_mass(const GridField& f, const Cone& cone, int comp);

// psi_gamma(z) = max(z, z^(1-gamma))
inline double psi_gamma(double z, double gamma) {
  return std::max(z, std::pow(z, 1.0 - gamma));
}

// Commutator probe: with chi_b = p(chi_a) verified on the grid, compares
//   lhs  = residual of b outside the refined cone (mu, mu_tilde = M mu mu2)
//   rhs1 = psi_gamma(residual of a outside (mu, mu2))
//   rhs2 = residual of b outside (mu, mu1)
// M = 8 by project decision; requires mu_tilde <= mu2 <= mu1.
struct CommutatorReport {
  double lhs = 0;
  double rhs_relation = 0;  // psi_gamma term
  double rhs_tail = 0;      // residual at the larger radius
  double mu_tilde = 0;
  double fitted_c = 0;      // lhs / (rhs_relation + rhs_tail)
};
CommutatorReport commutator_probe(const GridField& f, const Polynomial& p, int comp_a,
                                  int comp_b, double mu, double mu1, double mu2,
                                  double gamma = 0.5);

// Volume exponent of the lower bound for an m-th order laminate parent in
// dimension n: (n m + 2n - 3) / (n m + 2n - 1), exact.
Rational lower_exponent(int n, int m);

// Numerical optimization of the cone parameters in the lower-bound balance;
// reproduces lower_exponent and the paper's mu ~ V^(-1/(nm+2n-1)) slopes.
struct ConeOptimum {
  double mu = 0, mu2 = 0;
  double bound = 0;  // implied lower-bound value at this V
};
ConeOptimum optimize_cone_parameters(int n, int m, double V);

// Iterated-commutator balance for the infinite-order laminate: minimizes
// C0^m V^(2/(2m+1)) over even m and reports the implied bound.
struct TartarLowerForm {
  int m_star = 0;
  double bound = 0;       // V^((2m-1)/(2m+1)) / C0^m at m_star
  double implied_c = 0;   // C with bound ~ V exp(-C sqrt(log V))
};
TartarLowerForm tartar_lower_form(double V, double C0 = 2.0);

}  // namespace nuclab
