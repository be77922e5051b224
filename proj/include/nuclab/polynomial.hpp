#pragma once

#include <utility>
#include <vector>

#include "nuclab/rational.hpp"

namespace nuclab {

// Univariate polynomial with exact rational coefficients, ascending degree.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return c_.empty() ? -1 : (int)c_.size() - 1; }

  Rational eval(const Rational& t) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
    return r;
  }
  double eval(double t) const {
    double r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + it->value();
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) {
      if (i < a.c_.size()) c[i] += a.c_[i];
      if (i < b.c_.size()) c[i] += b.c_[i];
    }
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    std::vector<Rational> c = p.c_;
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return Polynomial();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }

  // Minimal-degree interpolation through (s, t) pairs, exact arithmetic.
  // Consistent duplicates are merged; conflicting ones throw.
  static Polynomial interpolate(std::vector<std::pair<Rational, Rational>> pts) {
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size();) {
        if (pts[j].first == pts[i].first) {
          if (pts[j].second != pts[i].second)
            throw std::invalid_argument("inconsistent interpolation data at s=" +
                                        pts[i].first.str());
          pts.erase(pts.begin() + j);
        } else {
          ++j;
        }
      }
    Polynomial result;
    for (size_t i = 0; i < pts.size(); ++i) {
      Polynomial basis(std::vector<Rational>{Rational(1)});
      Rational denom(1);
      for (size_t j = 0; j < pts.size(); ++j) {
        if (j == i) continue;
        basis = basis * Polynomial(std::vector<Rational>{-pts[j].first, Rational(1)});
        denom *= pts[i].first - pts[j].first;
      }
      result = result + (pts[i].second / denom) * basis;
    }
    result.trim();
    return result;
  }

private:
  std::vector<Rational> c_;
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
};

}  // namespace nuclab
