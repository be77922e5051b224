#pragma once

#include <string>

#include "nuclab/faces.hpp"
#include "nuclab/geom.hpp"
#include "nuclab/grid.hpp"

namespace nuclab {

struct EnergyBreakdown {
  double elastic = 0;
  double surface = 0;
  double epsilon = 1;
  double V = 0;
  double k0_term = 0;   // torus zero-mode contribution (spectral evaluations only)
  int resolution = 0;   // grid resolution (spectral evaluations only)
  double total() const { return elastic + epsilon * surface; }
};

std::string energy_to_json(const EnergyBreakdown& e);

// Exact energy of a piecewise-affine pair (scene, u) at weight eps:
// elastic = sum over cells of vol * |M - chi|_F^2, surface = |D chi| with
// Frobenius jump weights including the boundary against austenite.
// Throws if the continuity check exceeds tolerance unless check = false.
EnergyBreakdown exact_energy(const Scene& s, double eps = 1.0, bool check = true);

namespace serial {
// Reference implementations: straight serial loops, no chunked reduction.
double elastic_energy(const Scene& s);
double spectral_elastic(const GridField& f, double* k0_out = nullptr);
}

// Parallel elastic accumulation (deterministic chunked reduction).
double elastic_energy(const Scene& s);

// Relaxed elastic energy of a grid field on the torus:
//   sum_j sum_{l != j} sum_{k != 0} (k_l^2/|k|^2) |hat chi_jj(k)|^2
// plus the k = 0 term |mean chi_jj|^2 * T^n per component (reported via
// k0_out and included in the return value).  N must be a power of two.
double spectral_elastic(const GridField& f, double* k0_out = nullptr);

// Rescaling identity: from a breakdown at eps = 1 for (u, chi) to the
// eps-dilated pair. total(eps) = eps^n * total(1), V -> eps^n V.
EnergyBreakdown rescale_energy(const EnergyBreakdown& at_unit, double eps, int n);

}  // namespace nuclab
