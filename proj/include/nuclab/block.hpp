#pragma once

#include <functional>
#include <span>

#include "nuclab/geom.hpp"

namespace nuclab {

// Affine base deformation u(x) = u_ref + grad (x - x_ref).
struct AffineBase {
  Mat grad = mat_zero();
  Vec x_ref{0, 0, 0};
  Vec u_ref{0, 0, 0};
  Vec at(const Vec& x, int n) const {
    Vec r = matvec(grad, sub(x, x_ref), n);
    return add(r, u_ref);
  }
};

// Adds one convex 2D cell carrying u = base + phi * e_osc, with phi affine
// and given by its vertex values.  Vertices may repeat (collapsed quads);
// orientation is fixed automatically; extra vertices are checked against
// the affine extension of the first three.
void add_scalar_cell(SceneBuilder& b, std::span<const Vec> pts, std::span<const double> phi,
                     const AffineBase& base, int osc, int phase, uint8_t flags, double scale);

// Branched laminate building block (2D).  The scalar profile phi oscillates
// along `osc_axis` between the deviation slopes dev_p / dev_q with dyadic
// period halving toward both lateral ends (generation depth shrinks the
// remaining distance by refine_ratio each step) and a cutoff layer one fine
// period wide, so u = base + phi e_osc equals the base on the block boundary.
//
// Lateral bounds are affine in the oscillation coordinate s:
//   across_left(s) = xl0 + kl (s - s_lo),  across_right(s) = xr0 + kr (s - s_lo)
// which covers rectangles, parallelograms, trapezoids and triangles.  Teeth
// narrower than half a period are emitted as plain exempt cells.
struct BlockGeom {
  int osc_axis = 1;
  double s_lo = 0, s_hi = 1;
  double xl0 = 0, kl = 0;
  double xr0 = 1, kr = 0;
  int teeth = 1;
  double refine_ratio = 1.0 / 3.0;  // remaining-length fraction per refinement
  double cut_factor = 1.0;          // stop when remaining <= cut_factor * period
};

struct BlockPair {
  double dev_p = 0, dev_q = 0;  // d phi / d s on P and Q cells
  double wfrac = 0.5;           // volume fraction of P
  int phase_p = 0, phase_q = 1;
};

// Receives finished block pieces instead of emitting them: CCW vertices,
// matching phi values, the pair phase tag, and whether the piece is
// structural (laminate) or a cutoff/stub.  Used to nest constructions.
using PieceSink = std::function<void(std::span<const Vec>, std::span<const double>, int, bool)>;

void emit_branch_block(SceneBuilder& b, const BlockGeom& g, const BlockPair& pair,
                       const AffineBase& base, const PieceSink& sink = nullptr);

// Closed-form sum of the sheared-quad elastic contributions of the ideal
// block; cross-check oracle for the measured elastic energy.
double block_elastic_reference(const BlockGeom& g, const BlockPair& pair);

// Spec-level standalone block on [0,len] x [0,h]: oscillation between wells
// phase_p / phase_q of K (differing in exactly one diagonal entry), boundary
// data B x with B = w P + (1-w) Q.  Requires len > 4 h / teeth.
Scene branching_block(const WellSet& K, int phase_p, int phase_q, double wfrac, double len,
                      double h, int teeth = 1);

}  // namespace nuclab
