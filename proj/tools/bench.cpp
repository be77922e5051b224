// Kernel benchmark: serial reference implementations against the
// OpenMP-parallel versions used in production.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nuclab/constructions.hpp"
#include "nuclab/energy.hpp"
#include "nuclab/fourier_lab.hpp"
#include "nuclab/rasterize.hpp"

using namespace nuclab;
using clk = std::chrono::steady_clock;

namespace {

template <typename Fn>
double time_ms(Fn&& fn, int reps = 3) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = clk::now();
    fn();
    auto t1 = clk::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  printf("threads: %d\n", omp_get_max_threads());
#else
  printf("threads: 1 (no OpenMP)\n");
#endif

  Construction lens = construct_lens21(0.5, 30, 200);
  Construction branch = construct_lens_branch_4w(60, 400, 12);
  printf("scenes: lens21 %d cells, lens_branch_4w %d cells\n", lens.scene.cell_count(),
         branch.scene.cell_count());

  double a = 0, b = 0;
  double t_ser = time_ms([&] { a = serial::elastic_energy(branch.scene); });
  double t_par = time_ms([&] { b = elastic_energy(branch.scene); });
  printf("elastic_energy      serial %8.2f ms   parallel %8.2f ms   (rel dev %.2e)\n", t_ser,
         t_par, std::abs(a - b) / std::max(a, 1e-300));

  GridField f_ser, f_par;
  t_ser = time_ms([&] { f_ser = serial::rasterize(lens.scene, 256); });
  t_par = time_ms([&] { f_par = rasterize(lens.scene, 256); });
  double dev = 0;
  for (int j = 0; j < 2; ++j)
    for (size_t i = 0; i < f_ser.comp[j].size(); ++i)
      dev = std::max(dev, std::abs(f_ser.comp[j][i] - f_par.comp[j][i]));
  printf("rasterize 256^2     serial %8.2f ms   parallel %8.2f ms   (max dev %.2e)\n", t_ser,
         t_par, dev);

  GridField g = rasterize(branch.scene, 512);
  t_ser = time_ms([&] { a = serial::spectral_elastic(g); });
  t_par = time_ms([&] { b = spectral_elastic(g); });
  printf("spectral 512^2      serial %8.2f ms   parallel %8.2f ms   (rel dev %.2e)\n", t_ser,
         t_par, std::abs(a - b) / std::max(a, 1e-300));

  Cone cone{0, 0.3, 3.14159 * g.N / g.T / 2};
  t_ser = time_ms([&] { a = serial::cone_residual(g, cone, 0); });
  t_par = time_ms([&] { b = cone_residual(g, cone, 0); });
  printf("cone_residual 512^2 serial %8.2f ms   parallel %8.2f ms   (rel dev %.2e)\n", t_ser,
         t_par, std::abs(a - b) / std::max(a, 1e-300));
  return 0;
}
