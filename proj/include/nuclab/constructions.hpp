#pragma once

#include <string>

#include "nuclab/block.hpp"
#include "nuclab/geom.hpp"

namespace nuclab {

// Upper-bound microstructures.  Every generator returns an admissible
// (scene, u) pair with |supp chi| equal to the declared volume, plus a
// closed-form bound value the measured energy is tested against.
struct Construction {
  Scene scene;
  double bound_form = 0;   // family bound evaluated at the parameters (up to constants)
  std::string bound_desc;  // human-readable bound expression
};

// chi = A chi_{B_2r}, u = Ax on B_r with an affine cutoff on the annulus.
// Polytopal ball: regular 64-gon (2D), subdivided octahedron (3D); r chosen
// so the polytopal |B_2r| equals V exactly.  Bound c1 V + c2 V^((n-1)/n).
Construction construct_ball(const WellSet& K, double V);

// Lens inclusion conv{(0,0),(lam L, +-H/2),(L,0)} for the two-well set,
// elastic 2 lam^2 (1-lam)^2 L^3 / H exactly.  Requires H > L > 1.
Construction construct_lens21(double lambda, double L, double H);

// n-dimensional diamond conv{+-(L/2)e1, +-(H/2)ej} with wells +- e1 x e1.
// Requires n in {2,3}, H > L > 1.  Bound c (L^3 H^(n-3) + H^(n-1)).
Construction construct_diamond_nd(int n, double L, double H);

// Branched laminate on [0,L] x [0,H], H > L > 1, two-well set; N = ceil(4L/H)
// coarse periods.  Bound c (L^3/H + H).
Construction construct_branch_rect21(double lambda, double L, double H);

// Extrusion of the rectangular branching to n = 3 through the corner fold
// rho(x2,x3) = max(|x2 - H/2|, |x3 - H/2|) + H/2.  Bound c (L^3/H + H) H^(n-2).
Construction construct_branch_rect_nd(int n, double lambda, double L, double H);

// Four-well second-order laminate in the rhombus of diagonals L, H: stacked
// same-aspect rectangles R_j filled with branched (A1,A2)/(A3,A4) blocks over
// the macroscopic lens state.  Requires H > L > 1, blocks need l_j > 4 r_j.
// Bound c (rL + H + L^3/H + r^2 H/L + H L / r).
Construction construct_lens_branch_4w(double L, double H, double r);

// Four-well double branching on [0,L] x [0,H]: outer dyadic refinement of a
// B1/B2 laminate with cells ~ [0, L 2^-j] x [h_j, h_j+1], h_j = (H/2) theta^j,
// each piece filled by an inner branched block with N_j fine periods.
// theta in (1/4, 1/2).  Bound c (H L^(1/3) + L^3/H).
Construction construct_double_branch_4w(double L, double H, double theta);

// Tartar-square nested laminate of order k on [0,L] x [0,H] with coarse
// scale r; requires H <= L, r < H/8 and L exp(-C sqrt(log L)) < H/8.
// Bound form LH (2^-k + r/L + sum 2^-j r_j/r_j-1 + 2^-k/r_k).
Construction construct_tartar(double L, double H, double r, int k);

}  // namespace nuclab
