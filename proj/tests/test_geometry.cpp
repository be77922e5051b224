#include <cmath>

#include "doctest.h"
#include "nuclab/constructions.hpp"
#include "nuclab/faces.hpp"
#include "nuclab/geom.hpp"
#include "nuclab/rasterize.hpp"

using namespace nuclab;

namespace {

Scene unit_square_two_tris() {
  WellSet K = make_well_set(WellFamily::two_well, Rational(1, 2));
  SceneBuilder b(2, K, "test");
  Mat Z = mat_zero();
  Vec t1[3] = {vec2(0, 0), vec2(1, 0), vec2(1, 1)};
  Vec t2[3] = {vec2(0, 0), vec2(1, 1), vec2(0, 1)};
  b.add_cell(std::span<const Vec>(t1, 3), Z, vec2(0, 0), 0, 0);
  b.add_cell(std::span<const Vec>(t2, 3), Z, vec2(0, 0), 0, 0);
  Scene s = b.take();
  s.declared_volume = 1.0;
  return s;
}

}  // namespace

TEST_CASE("unit square volumes and partition") {
  Scene s = unit_square_two_tris();
  CHECK(s.volume_total() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.volume_support() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.volume_where([](int16_t p) { return p == 5; }) == 0.0);
}

TEST_CASE("scene volume of the diamond is L H / 2") {
  Construction c = construct_diamond_nd(2, 2.0, 4.0);
  CHECK(c.scene.volume_support() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(c.scene.volume_total() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("face scan on a compatible pair reports zeros") {
  // u = 0 with chi = A in both triangles: boundary trace 0, internal
  // diagonal has zero jump
  Scene s = unit_square_two_tris();
  FaceScanResult f = scan_faces(s);
  CHECK(f.max_continuity_jump == doctest::Approx(0.0));
  CHECK(f.max_boundary_trace == doctest::Approx(0.0));
  CHECK(f.max_rank_one_violation == doctest::Approx(0.0));
  CHECK(f.overlap_measure == doctest::Approx(0.0));
  // boundary surface: perimeter 4 times |A|_F = 1/2
  CHECK(f.surface_frobenius == doctest::Approx(4.0 * 0.5).epsilon(1e-12));
}

TEST_CASE("a single affine cell with u = Ax is flagged at the boundary") {
  WellSet K = make_well_set(WellFamily::two_well, Rational(1, 2));
  SceneBuilder b(2, K, "test");
  Mat A = mat_diag(K.diag_d(0));
  Vec sq[4] = {vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)};
  b.add_cell(std::span<const Vec>(sq, 4), A, vec2(0, 0), 0, 0);
  Scene s = b.take();
  FaceScanResult f = scan_faces(s);
  CHECK(f.max_boundary_trace > 0.1);  // u = Ax does not vanish on the boundary
}

TEST_CASE("non rank-one jump across a shared face is detected") {
  WellSet K = make_well_set(WellFamily::four_well_2d);
  SceneBuilder b(2, K, "test");
  // left gradient diag(-1,-2), right diag(1,2): the vertical interface sees
  // a tangential mismatch of 4 in the second component
  Mat Ml = mat_diag(K.diag_d(0)), Mr = mat_diag(K.diag_d(2));
  Vec left[4] = {vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)};
  Vec right[4] = {vec2(1, 0), vec2(2, 0), vec2(2, 1), vec2(1, 1)};
  b.add_cell(std::span<const Vec>(left, 4), Ml, vec2(0, 0), 0, 0);
  b.add_cell(std::span<const Vec>(right, 4), Mr, vec2(1, 0), 2, 0);
  Scene s = b.take();
  FaceScanResult f = scan_faces(s);
  CHECK(f.max_rank_one_violation > 1.0);
  CHECK(f.max_continuity_jump > 0.5);
}

TEST_CASE("hanging nodes are matched by overlap, not vertex identity") {
  WellSet K = make_well_set(WellFamily::two_well, Rational(1, 2));
  SceneBuilder b(2, K, "test");
  Mat Z = mat_zero();
  // one big cell on the left, two stacked on the right: T junction at (1, 1/2)
  Vec left[4] = {vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)};
  Vec r1[4] = {vec2(1, 0), vec2(2, 0), vec2(2, 0.5), vec2(1, 0.5)};
  Vec r2[4] = {vec2(1, 0.5), vec2(2, 0.5), vec2(2, 1), vec2(1, 1)};
  b.add_cell(std::span<const Vec>(left, 4), Z, vec2(0, 0), 0, 0);
  b.add_cell(std::span<const Vec>(r1, 4), Z, vec2(0, 0), 0, 0);
  b.add_cell(std::span<const Vec>(r2, 4), Z, vec2(0, 0), 0, 0);
  Scene s = b.take();
  FaceScanResult f = scan_faces(s);
  CHECK(f.overlap_measure == doctest::Approx(0.0));
  CHECK(f.max_continuity_jump == doctest::Approx(0.0));
  // total boundary length 2*(2+1) = 6, all at |chi|_F = 1/2
  CHECK(f.surface_frobenius == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("transforms preserve volume and admissibility") {
  Construction c = construct_lens21(0.5, 2.0, 4.0);
  Scene s = c.scene;
  double v0 = s.volume_support();
  AdmissibilityReport before = check_admissible(s);
  s.transform({1, 0, 2}, {1, -1, 1}, vec2(3, 7));
  CHECK(s.volume_support() == doctest::Approx(v0).epsilon(1e-12));
  AdmissibilityReport after = check_admissible(s);
  CHECK(after.max_continuity_jump <= before.max_continuity_jump + 1e-12);
  CHECK(after.max_boundary_trace <= before.max_boundary_trace + 1e-12);
}

TEST_CASE("rasterization: well values inside, austenite outside") {
  WellSet K = make_well_set(WellFamily::two_well, Rational(1, 2));
  SceneBuilder b(2, K, "test");
  Mat A = mat_diag(K.diag_d(0));
  Vec sq[4] = {vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)};
  b.add_cell(std::span<const Vec>(sq, 4), A, vec2(0, 0), 0, 0);
  Scene s = b.take();
  s.declared_volume = 1;
  GridField f = rasterize(s, 64, 2.0);
  double measured = 0;
  for (double v : f.comp[0])
    if (v != 0) {
      CHECK(v == doctest::Approx(-0.5));
      measured += f.cell_volume();
    }
  CHECK(measured == doctest::Approx(1.0).epsilon(0.07));  // one boundary layer
  CHECK_THROWS_AS(rasterize(s, 63, 2.0), std::invalid_argument);
}

TEST_CASE("rasterized lens volume converges at O(1/N)") {
  Construction c = construct_lens21(0.5, 2.0, 4.0);
  double err_prev = 1e300;
  for (int N : {128, 256, 512}) {
    GridField f = rasterize(c.scene, N, 2.0);
    double measured = 0;
    for (double v : f.comp[0])
      if (v != 0) measured += f.cell_volume();
    double err = std::abs(measured - 4.0) / 4.0;
    if (N == 256) CHECK(err < 0.02);  // pixel-counting oracle
    CHECK(err < err_prev * 1.6 + 1e-4);
    err_prev = err;
  }
}

TEST_CASE("fine stripes trigger the feature warning") {
  WellSet K = make_well_set(WellFamily::two_well, Rational(1, 2));
  SceneBuilder b(2, K, "test");
  Mat A = mat_diag(K.diag_d(0));
  for (int i = 0; i < 64; ++i) {
    double x0 = i / 64.0, x1 = (i + 1) / 64.0;
    Vec sq[4] = {vec2(x0, 0), vec2(x1, 0), vec2(x1, 1), vec2(x0, 1)};
    b.add_cell(std::span<const Vec>(sq, 4), A, vec2(0, 0), i % 2, 0);
  }
  Scene s = b.take();
  GridField f = rasterize(s, 32, 2.0);
  CHECK(f.feature_warning);
}

TEST_CASE("serial and parallel rasterizers agree bitwise") {
  Construction c = construct_lens21(0.5, 2.0, 4.0);
  GridField a = rasterize(c.scene, 64, 2.0);
  GridField b = serial::rasterize(c.scene, 64, 2.0);
  for (int j = 0; j < 2; ++j)
    for (size_t i = 0; i < a.comp[j].size(); ++i) CHECK(a.comp[j][i] == b.comp[j][i]);
}
