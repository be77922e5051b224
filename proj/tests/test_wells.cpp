#include "doctest.h"
#include "nuclab/lamination.hpp"
#include "nuclab/polynomial.hpp"
#include "nuclab/rational.hpp"
#include "nuclab/wells.hpp"

using namespace nuclab;

TEST_CASE("rational arithmetic stays reduced and exact") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(Rational(-4, -8) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational::parse("-5/12").num() == -5);
  CHECK(Rational::parse("7").den() == 1);
  CHECK(Rational(1, 3).str() == "1/3");
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("well families match the published matrices") {
  WellSet tw = make_well_set(WellFamily::two_well, Rational(1, 2));
  REQUIRE(tw.count() == 2);
  CHECK(tw.wells[0][0] == Rational(-1, 2));
  CHECK(tw.wells[1][0] == Rational(1, 2));
  CHECK(tw.wells[0][1] == Rational(0));

  WellSet fw = make_well_set(WellFamily::four_well_2d);
  REQUIRE(fw.count() == 4);
  CHECK(fw.wells[0][0] == Rational(-1));
  CHECK(fw.wells[0][1] == Rational(-2));
  CHECK(fw.wells[2][1] == Rational(2));

  WellSet ta = make_well_set(WellFamily::tartar);
  CHECK(ta.wells[0][1] == Rational(-3));
  CHECK(ta.wells[3][0] == Rational(3));

  CHECK_THROWS_AS(make_well_set(WellFamily::two_well, Rational(2)), std::invalid_argument);
  CHECK_THROWS_AS(make_well_set(WellFamily::two_well, Rational(0)), std::invalid_argument);
}

TEST_CASE("projection onto K0 with austenite-first tie break") {
  WellSet fw = make_well_set(WellFamily::four_well_2d);
  double zero[2] = {0, 0};
  auto p = project_to_K0(zero, 2, fw);
  CHECK(p.phase == kAustenite);
  CHECK(p.distance == 0);

  double w1[2] = {-1, -2};
  p = project_to_K0(w1, 2, fw);
  CHECK(p.phase == 0);
  CHECK(p.distance == 0);

  // brute-force derived: nearest to diag(0.9, 2.0) is well A3 at distance 0.1
  double m[2] = {0.9, 2.0};
  p = project_to_K0(m, 2, fw);
  CHECK(p.phase == 2);
  CHECK(p.distance == doctest::Approx(0.1).epsilon(1e-12));

  double bad[3] = {0, 0, 0};
  CHECK_THROWS_AS(project_to_K0(bad, 3, fw), std::invalid_argument);
}

TEST_CASE("interpolation recovers the four-well cubic") {
  std::vector<std::pair<Rational, Rational>> pts = {
      {Rational(-2), Rational(-1)}, {Rational(1), Rational(-1)}, {Rational(2), Rational(1)},
      {Rational(-1), Rational(1)},  {Rational(0), Rational(0)},
  };
  Polynomial g = interpolate_relation(pts);
  REQUIRE(g.degree() == 3);
  CHECK(g.coeffs()[3] == Rational(1, 2));
  CHECK(g.coeffs()[1] == Rational(-3, 2));
  CHECK(g.coeffs()[0] == Rational(0));
  CHECK(g.coeffs()[2] == Rational(0));
  for (auto& [s, t] : pts) CHECK(g.eval(s) == t);
}

TEST_CASE("interpolation: identity and Tartar relations") {
  Polynomial id = interpolate_relation(
      {{Rational(-1), Rational(-1)}, {Rational(0), Rational(0)}, {Rational(1), Rational(1)}});
  CHECK(id.degree() == 1);
  CHECK(id.coeffs()[1] == Rational(1));

  // odd cubic through the Tartar wells (chi11, chi22) pairs
  Polynomial g = interpolate_relation({{Rational(-1), Rational(-3)},
                                       {Rational(-3), Rational(1)},
                                       {Rational(1), Rational(3)},
                                       {Rational(3), Rational(-1)},
                                       {Rational(0), Rational(0)}});
  REQUIRE(g.degree() == 3);
  CHECK(g.coeffs()[3] == Rational(-5, 12));
  CHECK(g.coeffs()[1] == Rational(41, 12));

  CHECK_THROWS_AS(
      interpolate_relation({{Rational(1), Rational(2)}, {Rational(1), Rational(3)}}),
      std::invalid_argument);
}

TEST_CASE("relation verification across the families") {
  WellSet fw = make_well_set(WellFamily::four_well_2d);
  auto rep = verify_relation(fw, {1}, 0, fw.relations[0].p);
  CHECK(rep.pass);
  for (auto& r : rep.residuals) CHECK(r.is_zero());

  WellSet f3 = make_well_set(WellFamily::four_well_3d);
  rep = verify_relation(f3, {1, 2}, 0, f3.relations[0].p);
  CHECK(rep.pass);

  WellSet ta = make_well_set(WellFamily::tartar);
  for (auto& r : ta.relations) CHECK(verify_relation(ta, r.from, r.to, r.p).pass);
}

TEST_CASE("eight-well relations: published f13/f23 fail, corrected ones pass") {
  WellSet ew = make_well_set(WellFamily::eight_well_3d);
  auto find = [&](const std::string& name) -> const Relation& {
    for (auto& r : ew.relations)
      if (r.name == name) return r;
    FAIL("missing relation");
    return ew.relations[0];
  };

  auto f12 = verify_relation(ew, {0}, 1, find("f12").p);
  CHECK(f12.pass);

  auto f13p = verify_relation(ew, {0}, 2, find("f13_printed").p);
  CHECK_FALSE(f13p.pass);
  CHECK(find("f13_printed").known_discrepant);
  auto f13 = verify_relation(ew, {0}, 2, find("f13").p);
  CHECK(f13.pass);

  auto f23p = verify_relation(ew, {1}, 2, find("f23_printed").p);
  CHECK_FALSE(f23p.pass);
  // the printed quartic gives 13/3 instead of 1 at chi22 = 2 (well index 2)
  CHECK(f23p.residuals[2] == Rational(13, 3) - Rational(1));
  auto f23 = verify_relation(ew, {1}, 2, find("f23").p);
  CHECK(f23.pass);

  // re-interpolating the even quartic through the well data yields -17/12
  Polynomial q = interpolate_relation({{Rational(-2), Rational(1)},
                                       {Rational(2), Rational(1)},
                                       {Rational(-1), Rational(-1)},
                                       {Rational(1), Rational(-1)},
                                       {Rational(0), Rational(0)}});
  REQUIRE(q.degree() == 4);
  CHECK(q.coeffs()[2] == Rational(-17, 12));
  CHECK(q.coeffs()[4] == Rational(5, 12));
}

TEST_CASE("relation polynomials vanish at zero") {
  for (WellFamily f : {WellFamily::four_well_2d, WellFamily::four_well_3d,
                       WellFamily::eight_well_3d, WellFamily::tartar}) {
    WellSet K = make_well_set(f);
    for (auto& r : K.relations) CHECK(r.p.eval(Rational(0)).is_zero());
  }
}

TEST_CASE("lamination order of zero per family") {
  CHECK(lamination_order_of_zero(make_well_set(WellFamily::two_well, Rational(1, 3)), 10) == 1);
  CHECK(lamination_order_of_zero(make_well_set(WellFamily::four_well_2d), 10) == 2);
  CHECK(lamination_order_of_zero(make_well_set(WellFamily::four_well_3d), 10) == 2);
  CHECK(lamination_order_of_zero(make_well_set(WellFamily::eight_well_3d), 10) == 3);
  CHECK_FALSE(lamination_order_of_zero(make_well_set(WellFamily::tartar), 10).has_value());
}

TEST_CASE("lamination order is monotone in the order cap") {
  WellSet ew = make_well_set(WellFamily::eight_well_3d);
  auto at3 = lamination_order_of_zero(ew, 3);
  REQUIRE(at3.has_value());
  for (int cap = *at3; cap <= 8; ++cap)
    CHECK(lamination_order_of_zero(ew, cap) == *at3);
  CHECK_FALSE(lamination_order_of_zero(ew, 2).has_value());
}

TEST_CASE("four-well second hull contains the unit box") {
  WellSet fw = make_well_set(WellFamily::four_well_2d);
  LaminationHull hull = lamination_hull(fw, 2);
  bool found = false;
  RBox unit;
  unit.n = 2;
  unit.lo = {Rational(-1), Rational(-1), Rational(0)};
  unit.hi = {Rational(1), Rational(1), Rational(0)};
  for (auto& b : hull.boxes)
    if (b.subsumes(unit)) found = true;
  CHECK(found);
}

TEST_CASE("well set JSON round trip") {
  WellSet ew = make_well_set(WellFamily::eight_well_3d);
  WellSet back = well_set_from_json(well_set_to_json(ew));
  CHECK(back.n == ew.n);
  CHECK(back.name == ew.name);
  REQUIRE(back.count() == ew.count());
  for (int w = 0; w < ew.count(); ++w)
    for (int c = 0; c < 3; ++c) CHECK(back.wells[w][c] == ew.wells[w][c]);
  REQUIRE(back.relations.size() == ew.relations.size());
  for (size_t i = 0; i < ew.relations.size(); ++i) {
    CHECK(back.relations[i].name == ew.relations[i].name);
    CHECK(back.relations[i].p.coeffs() == ew.relations[i].p.coeffs());
  }
}
