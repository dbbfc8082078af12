#pragma once

#include <complex>

// Thin FFTW kernels shared by the field transforms and the solvers. Plans are
// created once per shape under a lock (FFTW_ESTIMATE, so results are
// bit-reproducible) and executed through the thread-safe new-array interface.
// Forward transforms are normalised by the number of transformed samples.
namespace bgl::fft {

using cplx = std::complex<double>;

/// Full 2D real transform of a rows × cols array into rows × (cols/2+1).
void forward_2d(int rows, int cols, const double* in, cplx* out);
/// Inverse of forward_2d. `in` is left untouched.
void inverse_2d(int rows, int cols, const cplx* in, double* out);

/// Independent 1D transforms of every row (length cols).
void forward_rows(int rows, int cols, const double* in, cplx* out);
void inverse_rows(int rows, int cols, const cplx* in, double* out);

}  // namespace bgl::fft
