#include "nuclab/wells.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace nuclab {

namespace {

Polynomial poly(std::vector<Rational> asc) { return Polynomial(std::move(asc)); }

std::array<Rational, 3> diag2(Rational a, Rational b) { return {a, b, Rational(0)}; }
std::array<Rational, 3> diag3(Rational a, Rational b, Rational c) { return {a, b, c}; }

}  // namespace

double WellSet::norm_d(int w) const {
  double s = 0;
  for (int j = 0; j < n; ++j) s += wells[w][j].value() * wells[w][j].value();
  return std::sqrt(s);
}

WellSet make_well_set(WellFamily family, Rational lambda, int n) {
  WellSet K;
  switch (family) {
    case WellFamily::two_well: {
      if (!(Rational(0) < lambda && lambda < Rational(1)))
        throw std::invalid_argument("two_well: lambda must lie in (0,1)");
      K.n = n == 0 ? 2 : n;
      if (K.n < 2 || K.n > 3) throw std::invalid_argument("two_well: n must be 2 or 3");
      K.name = "two_well";
      std::array<Rational, 3> A{-lambda, Rational(0), Rational(0)};
      std::array<Rational, 3> B{Rational(1) - lambda, Rational(0), Rational(0)};
      K.wells = {A, B};
      break;
    }
    case WellFamily::four_well_2d: {
      K.n = 2;
      K.name = "four_well_2d";
      K.wells = {diag2(-1, -2), diag2(-1, 1), diag2(1, 2), diag2(1, -1)};
      // chi11 = g(chi22), g(t) = t^3/2 - 3t/2
      K.relations.push_back({"g", {1}, 0,
                             poly({Rational(0), Rational(-3, 2), Rational(0), Rational(1, 2)})});
      break;
    }
    case WellFamily::four_well_3d: {
      K.n = 3;
      K.name = "four_well_3d";
      K.wells = {diag3(-1, -2, 0), diag3(-1, 1, 0), diag3(1, 0, 2), diag3(1, 0, -1)};
      // chi11 = g(chi22 + chi33) with the same cubic as in 2D
      K.relations.push_back({"g", {1, 2}, 0,
                             poly({Rational(0), Rational(-3, 2), Rational(0), Rational(1, 2)})});
      break;
    }
    case WellFamily::eight_well_3d: {
      K.n = 3;
      K.name = "eight_well_3d";
      K.wells = {diag3(2, -2, 1),  diag3(-2, -2, 1), diag3(-3, 2, 1),  diag3(3, 2, 1),
                 diag3(1, -1, -1), diag3(-1, -1, -1), diag3(-4, 1, -1), diag3(4, 1, -1)};
      // chi22 = f12(chi11): even degree-8, verifies exactly on all wells.
      K.relations.push_back(
          {"f12", {0}, 1,
           poly({Rational(0), Rational(0), Rational(-5801, 5040), Rational(0),
                 Rational(83, 576), Rational(0), Rational(11, 1440), Rational(0),
                 Rational(-1, 1344)})});
      // chi33 = f13(chi11) as printed in the source (t^2 coefficient -1781/1008):
      // fails on every well; kept verbatim and flagged.
      K.relations.push_back(
          {"f13_printed", {0}, 2,
           poly({Rational(0), Rational(0), Rational(5 * -1781, 5040), Rational(0),
                 Rational(5 * 101, 576), Rational(0), Rational(5 * -31, 1440), Rational(0),
                 Rational(5, 1344)}),
           true});
      // chi33 = f13(chi11), re-interpolated: t^2 coefficient -1787/1008.
      K.relations.push_back(
          {"f13", {0}, 2,
           poly({Rational(0), Rational(0), Rational(5 * -1787, 5040), Rational(0),
                 Rational(5 * 101, 576), Rational(0), Rational(5 * -31, 1440), Rational(0),
                 Rational(5, 1344)})});
      // chi33 = f23(chi22) as printed (-7/12): fails at t = +-1 and +-2; flagged.
      K.relations.push_back({"f23_printed", {1}, 2,
                             poly({Rational(0), Rational(0), Rational(-7, 12), Rational(0),
                                   Rational(5, 12)}),
                             true});
      // chi33 = f23(chi22), re-interpolated quadratic coefficient -17/12.
      K.relations.push_back({"f23", {1}, 2,
                             poly({Rational(0), Rational(0), Rational(-17, 12), Rational(0),
                                   Rational(5, 12)})});
      break;
    }
    case WellFamily::tartar: {
      K.n = 2;
      K.name = "tartar";
      K.wells = {diag2(-1, -3), diag2(-3, 1), diag2(1, 3), diag2(3, -1)};
      // chi22 = g(chi11) and chi11 = f(chi22); each component determines the other.
      K.relations.push_back({"g", {0}, 1,
                             poly({Rational(0), Rational(41, 12), Rational(0), Rational(-5, 12)})});
      K.relations.push_back({"f", {1}, 0,
                             poly({Rational(0), Rational(-41, 12), Rational(0), Rational(5, 12)})});
      break;
    }
    case WellFamily::single_well_rank1: {
      K.n = n == 0 ? 2 : n;
      if (K.n < 2 || K.n > 3) throw std::invalid_argument("single_well_rank1: n must be 2 or 3");
      K.name = "single_well_rank1";
      K.wells = {diag3(Rational(1), Rational(0), Rational(0))};
      break;
    }
    default:
      throw std::invalid_argument("unknown well family");
  }
  for (size_t i = 0; i < K.wells.size(); ++i)
    for (size_t j = i + 1; j < K.wells.size(); ++j)
      if (K.wells[i] == K.wells[j]) throw std::logic_error("duplicate wells");
  return K;
}

WellSet make_custom_well_set(std::string name, int n,
                             std::vector<std::array<Rational, 3>> wells) {
  if (n < 2 || n > 3) throw std::invalid_argument("well set: n must be 2 or 3");
  WellSet K;
  K.n = n;
  K.name = std::move(name);
  K.wells = std::move(wells);
  for (size_t i = 0; i < K.wells.size(); ++i)
    for (size_t j = i + 1; j < K.wells.size(); ++j)
      if (K.wells[i] == K.wells[j]) throw std::invalid_argument("duplicate wells");
  return K;
}

Projection project_to_K0(const double* diag, int n, const WellSet& K) {
  if (n != K.n) throw std::invalid_argument("project_to_K0: dimension mismatch");
  double d0 = 0;
  for (int j = 0; j < n; ++j) d0 += diag[j] * diag[j];
  Projection best{kAustenite, d0};
  for (int w = 0; w < K.count(); ++w) {
    double d = 0;
    for (int j = 0; j < n; ++j) {
      double t = diag[j] - K.well_d(w, j);
      d += t * t;
    }
    if (d < best.distance) best = {w, d};
  }
  best.distance = std::sqrt(best.distance);
  return best;
}

RelationReport verify_relation(const WellSet& K, const std::vector<int>& from, int to,
                               const Polynomial& p) {
  for (int c : from)
    if (c < 0 || c >= K.n) throw std::invalid_argument("verify_relation: bad component");
  if (to < 0 || to >= K.n) throw std::invalid_argument("verify_relation: bad component");
  RelationReport rep;
  rep.pass = true;
  for (int w = 0; w < K.count(); ++w) {
    Rational s(0);
    for (int c : from) s += K.wells[w][c];
    Rational res = p.eval(s) - K.wells[w][to];
    if (!res.is_zero()) rep.pass = false;
    rep.residuals.push_back(res);
  }
  Rational at0 = p.eval(Rational(0));
  if (!at0.is_zero()) rep.pass = false;
  rep.residuals.push_back(at0);
  return rep;
}

Polynomial interpolate_relation(const std::vector<std::pair<Rational, Rational>>& pairs) {
  return Polynomial::interpolate(pairs);
}

std::string well_set_to_json(const WellSet& K) {
  nlohmann::json j;
  j["name"] = K.name;
  j["n"] = K.n;
  auto& wells = j["wells"] = nlohmann::json::array();
  for (int w = 0; w < K.count(); ++w) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < K.n; ++c) row.push_back(K.wells[w][c].str());
    wells.push_back(row);
  }
  auto& rels = j["relations"] = nlohmann::json::array();
  for (const auto& r : K.relations) {
    nlohmann::json jr;
    jr["name"] = r.name;
    jr["from"] = r.from;
    jr["to"] = r.to;
    auto& cs = jr["coeffs"] = nlohmann::json::array();
    for (const auto& c : r.p.coeffs()) cs.push_back(c.str());
    if (r.known_discrepant) jr["known_discrepant"] = true;
    rels.push_back(jr);
  }
  return j.dump(2);
}

WellSet well_set_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  WellSet K;
  K.name = j.at("name").get<std::string>();
  K.n = j.at("n").get<int>();
  for (const auto& row : j.at("wells")) {
    std::array<Rational, 3> w{Rational(0), Rational(0), Rational(0)};
    int c = 0;
    for (const auto& v : row) w[c++] = Rational::parse(v.get<std::string>());
    K.wells.push_back(w);
  }
  if (j.contains("relations"))
    for (const auto& jr : j["relations"]) {
      Relation r;
      r.name = jr.at("name").get<std::string>();
      r.from = jr.at("from").get<std::vector<int>>();
      r.to = jr.at("to").get<int>();
      std::vector<Rational> cs;
      for (const auto& c : jr.at("coeffs")) cs.push_back(Rational::parse(c.get<std::string>()));
      r.p = Polynomial(std::move(cs));
      r.known_discrepant = jr.value("known_discrepant", false);
      K.relations.push_back(std::move(r));
    }
  return K;
}

}  // namespace nuclab
