#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nuclab/geom.hpp"

namespace nuclab {

// Uniform periodic sampling of the diagonal phase-indicator components
// chi_jj at cell centers of an N^n box of side T.  Row-major storage,
// index = i0*N^(n-1) + ... (i0 the first axis).
struct GridField {
  int n = 2;
  int N = 0;
  double T = 0;
  Vec origin{0, 0, 0};  // coordinate of the box corner
  std::vector<std::vector<double>> comp;  // n arrays of N^n values
  bool feature_warning = false;           // a scene feature fell under 2 grid cells
  std::string wellset_name, family;

  size_t samples() const {
    size_t m = 1;
    for (int i = 0; i < n; ++i) m *= (size_t)N;
    return m;
  }
  double h() const { return T / N; }
  double cell_volume() const {
    double v = 1;
    for (int i = 0; i < n; ++i) v *= h();
    return v;
  }
  double mean(int j) const;
  double l2sq(int j) const;   // integral of chi_jj^2 (grid quadrature)
  double l1(int j) const;     // integral of |chi_jj|
  // Discrete total variation: sum of |jump| * h^(n-1) over grid faces
  // (periodic), Frobenius over components.
  double grid_tv() const;
};

// NUCF container: "NUCF", u32 version=1, u32 n, u32 N, f64 T, then n arrays
// of N^n float64, little endian, row-major.  A JSON sidecar next to the file
// records the well set and construction parameters.
void write_field(const GridField& f, const std::string& path);
GridField read_field(const std::string& path);

// Forward DFT of one component with Plancherel normalization matching
// sum_k |hat|^2 = integral of |f|^2.  Frequency layout follows FFTW
// (index m corresponds to integer frequency m, wrapped to negative above
// N/2); physical wavevector k = 2 pi m / T.
std::vector<std::complex<double>> spectrum(const GridField& f, int j);

// Integer frequency of index i along one axis.
inline int freq_of_index(int i, int N) { return i <= N / 2 ? i : i - N; }

}  // namespace nuclab
