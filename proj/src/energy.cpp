#include "nuclab/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace nuclab {

std::string energy_to_json(const EnergyBreakdown& e) {
  nlohmann::json j;
  j["elastic"] = e.elastic;
  j["surface"] = e.surface;
  j["epsilon"] = e.epsilon;
  j["total"] = e.total();
  j["V"] = e.V;
  j["k0_term"] = e.k0_term;
  j["resolution"] = e.resolution;
  return j.dump();
}

namespace serial {

double elastic_energy(const Scene& s) {
  double e = 0;
  for (int c = 0; c < s.cell_count(); ++c) {
    Mat M = s.gradient(c);
    Mat X = s.chi(c);
    e += s.cell_volume(c) * frob2(M, X, s.n);
  }
  return e;
}

}  // namespace serial

double elastic_energy(const Scene& s) {
  // fixed-size chunked reduction: partial sums are combined in chunk order,
  // so the result does not depend on the thread count
  const int64_t m = s.cell_count();
  const int64_t chunk = 4096;
  const int64_t nchunks = (m + chunk - 1) / chunk;
  std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (int64_t q = 0; q < nchunks; ++q) {
    double e = 0;
    int64_t hi = std::min(m, (q + 1) * chunk);
    for (int64_t c = q * chunk; c < hi; ++c) {
      Mat M = s.gradient((int)c);
      Mat X = s.chi((int)c);
      e += s.cell_volume((int)c) * frob2(M, X, s.n);
    }
    partial[q] = e;
  }
  double e = 0;
  for (double p : partial) e += p;
  return e;
}

EnergyBreakdown exact_energy(const Scene& s, double eps, bool check) {
  if (eps <= 0) throw std::invalid_argument("exact_energy: eps must be positive");
  FaceScanResult f = scan_faces(s);
  if (check) {
    double scale = s.diameter_estimate();
    if (f.max_continuity_jump > 1e-6 * scale)
      throw std::runtime_error("exact_energy: deformation is discontinuous (jump " +
                               std::to_string(f.max_continuity_jump) + ")");
  }
  EnergyBreakdown e;
  e.elastic = elastic_energy(s);
  e.surface = f.surface_frobenius;
  e.epsilon = eps;
  e.V = s.volume_support();
  return e;
}

EnergyBreakdown rescale_energy(const EnergyBreakdown& at_unit, double eps, int n) {
  if (eps <= 0) throw std::invalid_argument("rescale_energy: eps must be positive");
  EnergyBreakdown e;
  double en = std::pow(eps, n);
  e.elastic = at_unit.elastic * en;
  e.surface = at_unit.surface * std::pow(eps, n - 1);
  e.epsilon = eps * at_unit.epsilon;
  e.V = at_unit.V * en;
  e.k0_term = at_unit.k0_term * en;
  e.resolution = at_unit.resolution;
  return e;
}

namespace {

// weight sum_{l != j} k_l^2 / |k|^2 on the integer frequency lattice
double multiplier(int j, const int* m, int n) {
  double num = 0, den = 0;
  for (int a = 0; a < n; ++a) {
    double k2 = (double)m[a] * m[a];
    den += k2;
    if (a != j) num += k2;
  }
  return den == 0 ? 0.0 : num / den;
}

}  // namespace

namespace {
void require_pow2(int N) {
  if (N <= 0 || (N & (N - 1)) != 0)
    throw std::invalid_argument("spectral_elastic: resolution must be a power of two");
}
}  // namespace

namespace serial {

double spectral_elastic(const GridField& f, double* k0_out) {
  require_pow2(f.N);
  double total = 0, k0 = 0;
  double Tn = 1;
  for (int i = 0; i < f.n; ++i) Tn *= f.T;
  for (int j = 0; j < f.n; ++j) {
    auto sp = spectrum(f, j);
    size_t mtot = sp.size();
    double s = 0;
    for (size_t idx = 0; idx < mtot; ++idx) {
      int m[3] = {0, 0, 0};
      size_t r = idx;
      for (int a = f.n - 1; a >= 0; --a) {
        m[a] = freq_of_index((int)(r % f.N), f.N);
        r /= f.N;
      }
      s += multiplier(j, m, f.n) * std::norm(sp[idx]);
    }
    double mj = f.mean(j);
    k0 += mj * mj * Tn;
    total += s;
  }
  if (k0_out) *k0_out = k0;
  return total + k0;
}

}  // namespace serial

double spectral_elastic(const GridField& f, double* k0_out) {
  require_pow2(f.N);
  double total = 0, k0 = 0;
  double Tn = 1;
  for (int i = 0; i < f.n; ++i) Tn *= f.T;
  size_t rows = (size_t)f.N;
  for (int j = 0; j < f.n; ++j) {
    auto sp = spectrum(f, j);
    size_t row_len = sp.size() / rows;
    std::vector<double> partial(rows, 0.0);
#pragma omp parallel for schedule(static)
    for (long long i0 = 0; i0 < (long long)rows; ++i0) {
      int m[3] = {0, 0, 0};
      m[0] = freq_of_index((int)i0, f.N);
      double s = 0;
      for (size_t r = 0; r < row_len; ++r) {
        size_t t = r;
        for (int a = f.n - 1; a >= 1; --a) {
          m[a] = freq_of_index((int)(t % f.N), f.N);
          t /= f.N;
        }
        s += multiplier(j, m, f.n) * std::norm(sp[(size_t)i0 * row_len + r]);
      }
      partial[i0] = s;
    }
    for (double p : partial) total += p;
    double mj = f.mean(j);
    k0 += mj * mj * Tn;
  }
  if (k0_out) *k0_out = k0;
  return total + k0;
}

}  // namespace nuclab
