#include "bgl/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace bgl::fft {
namespace {

enum class Kind { r2c_2d, c2r_2d, r2c_rows, c2r_rows };

using Key = std::tuple<Kind, int, int>;

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan get_plan(Kind kind, int rows, int cols) {
  static std::map<Key, fftw_plan> cache;
  std::lock_guard lock(plan_mutex());
  const Key key{kind, rows, cols};
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const int half = cols / 2 + 1;
  std::vector<double> real(static_cast<std::size_t>(rows) * cols);
  std::vector<cplx> spec(static_cast<std::size_t>(rows) * half);
  auto* r = real.data();
  auto* c = reinterpret_cast<fftw_complex*>(spec.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int n[1] = {cols};
  fftw_plan p = nullptr;
  switch (kind) {
    case Kind::r2c_2d:
      p = fftw_plan_dft_r2c_2d(rows, cols, r, c, flags);
      break;
    case Kind::c2r_2d:
      p = fftw_plan_dft_c2r_2d(rows, cols, c, r, flags);
      break;
    case Kind::r2c_rows:
      p = fftw_plan_many_dft_r2c(1, n, rows, r, nullptr, 1, cols, c, nullptr, 1,
                                 half, flags);
      break;
    case Kind::c2r_rows:
      p = fftw_plan_many_dft_c2r(1, n, rows, c, nullptr, 1, half, r, nullptr, 1,
                                 cols, flags);
      break;
  }
  cache.emplace(key, p);
  return p;
}

void run_r2c(Kind kind, int rows, int cols, const double* in, cplx* out,
             double scale) {
  fftw_plan p = get_plan(kind, rows, cols);
  // FFTW does not write to the input of an r2c transform.
  fftw_execute_dft_r2c(p, const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
  const std::size_t n = static_cast<std::size_t>(rows) * (cols / 2 + 1);
  for (std::size_t i = 0; i < n; ++i) out[i] *= scale;
}

void run_c2r(Kind kind, int rows, int cols, const cplx* in, double* out) {
  fftw_plan p = get_plan(kind, rows, cols);
  // c2r destroys its input, so work on a copy.
  std::vector<cplx> scratch(in, in + static_cast<std::size_t>(rows) * (cols / 2 + 1));
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace

void forward_2d(int rows, int cols, const double* in, cplx* out) {
  run_r2c(Kind::r2c_2d, rows, cols, in, out, 1.0 / (static_cast<double>(rows) * cols));
}

void inverse_2d(int rows, int cols, const cplx* in, double* out) {
  run_c2r(Kind::c2r_2d, rows, cols, in, out);
}

void forward_rows(int rows, int cols, const double* in, cplx* out) {
  run_r2c(Kind::r2c_rows, rows, cols, in, out, 1.0 / cols);
}

void inverse_rows(int rows, int cols, const cplx* in, double* out) {
  run_c2r(Kind::c2r_rows, rows, cols, in, out);
}

}  // namespace bgl::fft
