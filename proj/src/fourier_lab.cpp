#include "nuclab/fourier_lab.hpp"

#include <cmath>
#include <stdexcept>

namespace nuclab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

template <typename Fn>
void for_each_freq(const GridField& f, const std::vector<std::complex<double>>& sp, Fn&& fn) {
  size_t m = sp.size();
  double dk = kTwoPi / f.T;
  for (size_t idx = 0; idx < m; ++idx) {
    double k[3] = {0, 0, 0};
    size_t r = idx;
    for (int a = f.n - 1; a >= 0; --a) {
      k[a] = dk * freq_of_index((int)(r % f.N), f.N);
      r /= f.N;
    }
    fn(k, std::norm(sp[idx]));
  }
}

}  // namespace

namespace serial {

double cone_residual(const GridField& f, const Cone& cone, int comp) {
  auto sp = spectrum(f, comp);
  double out = 0;
  for_each_freq(f, sp, [&](const double* k, double p) {
    if (!cone.contains(k, f.n)) out += p;
  });
  return out;
}

}  // namespace serial

double cone_residual(const GridField& f, const Cone& cone, int comp) {
  if (cone.axis < 0 || cone.axis >= f.n)
    throw std::invalid_argument("cone_residual: bad cone axis");
  auto sp = spectrum(f, comp);
  size_t rows = (size_t)f.N;
  size_t row_len = sp.size() / rows;
  double dk = kTwoPi / f.T;
  std::vector<double> partial(rows, 0.0);
#pragma omp parallel for schedule(static)
  for (long long i0 = 0; i0 < (long long)rows; ++i0) {
    double k[3] = {0, 0, 0};
    k[0] = dk * freq_of_index((int)i0, f.N);
    double s = 0;
    for (size_t r = 0; r < row_len; ++r) {
      size_t t = r;
      for (int a = f.n - 1; a >= 1; --a) {
        k[a] = dk * freq_of_index((int)(t % f.N), f.N);
        t /= f.N;
      }
      if (!cone.contains(k, f.n)) s += std::norm(sp[(size_t)i0 * row_len + r]);
    }
    partial[i0] = s;
  }
  double out = 0;
  for (double p : partial) out += p;
  return out;
}

LowFreqResult low_frequency_mass(const GridField& f, const Cone& cone, int comp) {
  auto sp = spectrum(f, comp);
  LowFreqResult res;
  for_each_freq(f, sp, [&](const double* k, double p) {
    if (cone.contains(k, f.n)) res.mass += p;
  });
  double l1 = f.l1(comp);
  res.bound = 8.0 * l1 * l1 * std::pow(cone.radius, f.n) * std::pow(cone.mu, f.n - 1);
  return res;
}

CommutatorReport commutator_probe(const GridField& f, const Polynomial& p, int comp_a,
                                  int comp_b, double mu, double mu1, double mu2, double gamma) {
  const double M = 8.0;  // refined-radius factor, covers relation degrees <= 8
  double mu_tilde = M * mu * mu2;
  if (!(mu_tilde <= mu2 && mu2 <= mu1))
    throw std::invalid_argument(
        "commutator_probe: need M mu mu2 <= mu2 <= mu1 (radius ordering)");
  // relation pre-check on the sampled field
  size_t m = f.samples();
  double tol = 1e-8;
  for (size_t i = 0; i < m; ++i) {
    double a = f.comp[comp_a][i], bb = f.comp[comp_b][i];
    if (std::abs(p.eval(a) - bb) > tol)
      throw std::invalid_argument("commutator_probe: field violates the component relation");
  }
  CommutatorReport rep;
  rep.mu_tilde = mu_tilde;
  Cone refined{comp_b, mu, mu_tilde};
  Cone mid{comp_a, mu, mu2};
  Cone wide{comp_b, mu, mu1};
  rep.lhs = cone_residual(f, refined, comp_b);
  rep.rhs_relation = psi_gamma(cone_residual(f, mid, comp_a), gamma);
  rep.rhs_tail = cone_residual(f, wide, comp_b);
  double denom = rep.rhs_relation + rep.rhs_tail;
  rep.fitted_c = denom > 0 ? rep.lhs / denom : 0.0;
  return rep;
}

Rational lower_exponent(int n, int m) {
  if (n < 2 || m < 1) throw std::invalid_argument("lower_exponent: need n >= 2, m >= 1");
  return Rational(n * m + 2 * n - 3, n * m + 2 * n - 1);
}

ConeOptimum optimize_cone_parameters(int n, int m, double V) {
  if (V <= 1)
    throw std::invalid_argument(
        "optimize_cone_parameters: V <= 1 is the isoperimetric regime");
  // implied bound (V - mu^(n-1) mu_m^n V^2)_+ / (mu^-2 + mu2^-1),
  // mu_m = mu^(m-1) mu2; maximize over (mu, mu2) in (0,1)^2 in log space
  auto value = [&](double lmu, double lmu2) {
    double mu = std::exp(lmu), mu2 = std::exp(lmu2);
    double mum = std::pow(mu, m - 1) * mu2;
    double low = std::pow(mu, n - 1) * std::pow(mum, n) * V * V;
    double num = V - low;
    if (num <= 0) return 0.0;
    return num / (1.0 / (mu * mu) + 1.0 / mu2);
  };
  double lV = std::log(V);
  double best = -1, bmu = 0, bmu2 = 0;
  int G = 80;
  for (int i = 0; i <= G; ++i)
    for (int j = 0; j <= G; ++j) {
      double lmu = -lV * i / G, lmu2 = -2.0 * lV * j / G;
      double v = value(lmu, lmu2);
      if (v > best) { best = v; bmu = lmu; bmu2 = lmu2; }
    }
  // coordinate descent with golden sections
  const double gr = 0.6180339887498949;
  for (int round = 0; round < 4; ++round) {
    for (int var = 0; var < 2; ++var) {
      double lo = (var == 0 ? bmu : bmu2) - 2.0 * lV / G;
      double hi = (var == 0 ? bmu : bmu2) + 2.0 * lV / G;
      double a = lo, b = hi;
      double c = b - gr * (b - a), d = a + gr * (b - a);
      for (int it = 0; it < 40; ++it) {
        double fc = var == 0 ? value(c, bmu2) : value(bmu, c);
        double fd = var == 0 ? value(d, bmu2) : value(bmu, d);
        if (fc > fd) { b = d; } else { a = c; }
        c = b - gr * (b - a);
        d = a + gr * (b - a);
      }
      double mid = 0.5 * (a + b);
      if (var == 0) bmu = mid; else bmu2 = mid;
      best = value(bmu, bmu2);
    }
  }
  ConeOptimum out;
  out.mu = std::exp(bmu);
  out.mu2 = std::exp(bmu2);
  out.bound = best;
  return out;
}

TartarLowerForm tartar_lower_form(double V, double C0) {
  if (V <= 1) throw std::invalid_argument("tartar_lower_form: requires V > 1");
  TartarLowerForm out;
  double best = -1;
  for (int m = 2; m <= 64; m += 2) {
    double bound = std::pow(V, double(2 * m - 1) / (2 * m + 1)) / std::pow(C0, m);
    if (bound > best) {
      best = bound;
      out.m_star = m;
    }
  }
  out.bound = best;
  double slog = std::sqrt(std::log(V));
  out.implied_c = (std::log(V) - std::log(best)) / slog;
  return out;
}

}  // namespace nuclab
