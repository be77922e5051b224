#pragma once

#include <cstdint>

#include "nuclab/geom.hpp"

namespace nuclab {

// One geometric pass over all cell faces.  Edges (2D) / triangle faces (3D)
// are grouped by supporting line / plane and matched by interval or polygon
// overlap, so hanging nodes between independently meshed regions are fine.
//
// surface_frobenius is |D chi| with Frobenius-norm jump weights, counting
// domain-boundary faces against austenite.  The admissibility maxima are raw
// (unscaled) so callers can compare against a tolerance of their choice.
struct FaceScanResult {
  double surface_frobenius = 0;
  double max_continuity_jump = 0;    // |u_A - u_B| at shared-face sample points
  double max_boundary_trace = 0;     // |u| at boundary-face sample points
  double max_rank_one_violation = 0; // |(M_A - M_B) t| over face tangents t
  double overlap_measure = 0;        // same-side double coverage; 0 for a partition
  int64_t internal_faces = 0;
  int64_t boundary_faces = 0;
};

FaceScanResult scan_faces(const Scene& s);

// Spec-level admissibility report: continuity, boundary trace and rank-one
// compatibility, plus the volume error against the declared support volume.
struct AdmissibilityReport {
  double max_continuity_jump = 0;
  double max_boundary_trace = 0;
  double max_rank_one_violation = 0;
  double overlap_measure = 0;
  double support_volume = 0;
  double volume_rel_error = 0;
  // scale used to decide pass(): max |u| proxy + domain diameter
  double scale = 1;
  bool pass(double rel_tol = 1e-8) const {
    return max_continuity_jump <= rel_tol * scale && max_boundary_trace <= rel_tol * scale &&
           max_rank_one_violation <= rel_tol * scale && overlap_measure <= rel_tol * scale;
  }
};

AdmissibilityReport check_admissible(const Scene& s);

}  // namespace nuclab
