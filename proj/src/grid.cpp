#include "nuclab/grid.hpp"

#include <fftw3.h>

#include <cstdio>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace nuclab {

double GridField::mean(int j) const {
  double s = 0;
  for (double v : comp[j]) s += v;
  return s / (double)samples();
}

double GridField::l2sq(int j) const {
  double s = 0;
  for (double v : comp[j]) s += v * v;
  return s * cell_volume();
}

double GridField::l1(int j) const {
  double s = 0;
  for (double v : comp[j]) s += std::abs(v);
  return s * cell_volume();
}

double GridField::grid_tv() const {
  double area = 1;
  for (int i = 0; i < n - 1; ++i) area *= h();
  double tv = 0;
  size_t m = samples();
  std::vector<size_t> stride(n);
  stride[n - 1] = 1;
  for (int a = n - 2; a >= 0; --a) stride[a] = stride[a + 1] * (size_t)N;
  for (int a = 0; a < n; ++a) {
    double s = 0;
    for (size_t i = 0; i < m; ++i) {
      size_t ia = (i / stride[a]) % (size_t)N;
      size_t nb = ia + 1 == (size_t)N ? i - (size_t)(N - 1) * stride[a] : i + stride[a];
      double jump2 = 0;
      for (int j = 0; j < n; ++j) {
        double d = comp[j][nb] - comp[j][i];
        jump2 += d * d;
      }
      s += std::sqrt(jump2);
    }
    tv += s * area;
  }
  return tv;
}

namespace {
void put_u32(FILE* f, uint32_t v) { fwrite(&v, 4, 1, f); }
uint32_t get_u32(FILE* f) {
  uint32_t v = 0;
  if (fread(&v, 4, 1, f) != 1) throw std::runtime_error("field file truncated");
  return v;
}
}  // namespace

void write_field(const GridField& f, const std::string& path) {
  FILE* fp = fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("cannot open " + path);
  fwrite("NUCF", 1, 4, fp);
  put_u32(fp, 1u);
  put_u32(fp, (uint32_t)f.n);
  put_u32(fp, (uint32_t)f.N);
  double T = f.T;
  fwrite(&T, 8, 1, fp);
  for (int j = 0; j < f.n; ++j)
    fwrite(f.comp[j].data(), 8, f.comp[j].size(), fp);
  fclose(fp);
}

GridField read_field(const std::string& path) {
  FILE* fp = fopen(path.c_str(), "rb");
  if (!fp) throw std::runtime_error("cannot open " + path);
  char magic[4];
  if (fread(magic, 1, 4, fp) != 4 || memcmp(magic, "NUCF", 4) != 0) {
    fclose(fp);
    throw std::runtime_error("bad magic: not a NUCF field file");
  }
  uint32_t version = get_u32(fp);
  if (version != 1) {
    fclose(fp);
    throw std::runtime_error("unsupported NUCF version " + std::to_string(version));
  }
  GridField f;
  f.n = (int)get_u32(fp);
  f.N = (int)get_u32(fp);
  if (f.n < 1 || f.n > 3 || f.N < 1 || f.N > (1 << 14)) {
    fclose(fp);
    throw std::runtime_error("corrupt NUCF header");
  }
  if (fread(&f.T, 8, 1, fp) != 1) {
    fclose(fp);
    throw std::runtime_error("field file truncated");
  }
  f.comp.resize(f.n);
  for (int j = 0; j < f.n; ++j) {
    f.comp[j].resize(f.samples());
    if (fread(f.comp[j].data(), 8, f.comp[j].size(), fp) != f.comp[j].size()) {
      fclose(fp);
      throw std::runtime_error("field payload truncated");
    }
  }
  fclose(fp);
  return f;
}

std::vector<std::complex<double>> spectrum(const GridField& f, int j) {
  static std::mutex plan_mutex;  // FFTW planning is not thread safe
  size_t m = f.samples();
  std::vector<std::complex<double>> data(m);
  for (size_t i = 0; i < m; ++i) data[i] = f.comp[j][i];
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_plan plan;
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    if (f.n == 1) plan = fftw_plan_dft_1d(f.N, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
    else if (f.n == 2) plan = fftw_plan_dft_2d(f.N, f.N, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
    else plan = fftw_plan_dft_3d(f.N, f.N, f.N, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  // hat chi_k = DFT_k * h^n / sqrt(T^n)  =>  sum_k |hat|^2 = h^n sum |f|^2
  double Tn = 1, hn = 1;
  for (int i = 0; i < f.n; ++i) { Tn *= f.T; hn *= f.h(); }
  double scale = hn / std::sqrt(Tn);
  for (auto& z : data) z *= scale;
  return data;
}

}  // namespace nuclab
