#pragma once

#include <cstddef>

// Data-parallel inner loops used by the estimators and scenarios.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The backend is chosen once at runtime from CPUID;
// setting the environment variable TVOPT_FORCE_SCALAR=1 pins the scalar
// reference path. Vector variants are equivalence-tested against the
// scalar ones in tests/test_kernels.cpp.

namespace tvopt::kernels {

enum class Backend { Scalar, Avx2 };

/// Backend selected for this process.
Backend active_backend();

/// Human-readable name of the active backend ("scalar" or "avx2").
const char* backend_name();

/// y[i] += a * x[i]
void axpy(double* y, double a, const double* x, std::size_t n);

/// sum_i x[i] * y[i]
double dot(const double* x, const double* y, std::size_t n);

/// sum_i x[i]
double sum(const double* x, std::size_t n);

/// out[i] = a[i] - b[i]
void sub(double* out, const double* a, const double* b, std::size_t n);

/// out[i] = (xs[i] - px)^2 + (ys[i] - py)^2
void squared_dist_2d(double* out, const double* xs, const double* ys,
                     double px, double py, std::size_t n);

/// out[j] = sum_i w[i] * rows[i][j]; rows holds `count` pointers to
/// contiguous runs of length n. out is overwritten.
void weighted_sum_rows(double* out, const double* const* rows,
                       const double* w, std::size_t count, std::size_t n);

namespace detail {
// Scalar reference kernels, exposed for equivalence tests.
void axpy_scalar(double* y, double a, const double* x, std::size_t n);
double dot_scalar(const double* x, const double* y, std::size_t n);
double sum_scalar(const double* x, std::size_t n);
void sub_scalar(double* out, const double* a, const double* b, std::size_t n);
void squared_dist_2d_scalar(double* out, const double* xs, const double* ys,
                            double px, double py, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
#define TVOPT_HAVE_AVX2_KERNELS 1
void axpy_avx2(double* y, double a, const double* x, std::size_t n);
double dot_avx2(const double* x, const double* y, std::size_t n);
double sum_avx2(const double* x, std::size_t n);
void sub_avx2(double* out, const double* a, const double* b, std::size_t n);
void squared_dist_2d_avx2(double* out, const double* xs, const double* ys,
                          double px, double py, std::size_t n);
#else
#define TVOPT_HAVE_AVX2_KERNELS 0
#endif
}  // namespace detail

}  // namespace tvopt::kernels
