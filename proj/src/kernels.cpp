#include "tvopt/kernels.hpp"

#include <cstdlib>

namespace tvopt::kernels {

namespace detail {

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

void sub_scalar(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void squared_dist_2d_scalar(double* out, const double* xs, const double* ys,
                            double px, double py, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - px;
        const double dy = ys[i] - py;
        out[i] = dx * dx + dy * dy;
    }
}

}  // namespace detail

namespace {

bool force_scalar() {
    const char* v = std::getenv("TVOPT_FORCE_SCALAR");
    return v != nullptr && v[0] != '\0' && v[0] != '0';
}

Backend pick_backend() {
#if TVOPT_HAVE_AVX2_KERNELS
    if (!force_scalar() && __builtin_cpu_supports("avx2") &&
        __builtin_cpu_supports("fma")) {
        return Backend::Avx2;
    }
#endif
    return Backend::Scalar;
}

}  // namespace

Backend active_backend() {
    static const Backend b = pick_backend();
    return b;
}

const char* backend_name() {
    return active_backend() == Backend::Avx2 ? "avx2" : "scalar";
}

void axpy(double* y, double a, const double* x, std::size_t n) {
#if TVOPT_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::Avx2) return detail::axpy_avx2(y, a, x, n);
#endif
    detail::axpy_scalar(y, a, x, n);
}

double dot(const double* x, const double* y, std::size_t n) {
#if TVOPT_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::Avx2) return detail::dot_avx2(x, y, n);
#endif
    return detail::dot_scalar(x, y, n);
}

double sum(const double* x, std::size_t n) {
#if TVOPT_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::Avx2) return detail::sum_avx2(x, n);
#endif
    return detail::sum_scalar(x, n);
}

void sub(double* out, const double* a, const double* b, std::size_t n) {
#if TVOPT_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::Avx2) return detail::sub_avx2(out, a, b, n);
#endif
    detail::sub_scalar(out, a, b, n);
}

void squared_dist_2d(double* out, const double* xs, const double* ys,
                     double px, double py, std::size_t n) {
#if TVOPT_HAVE_AVX2_KERNELS
    if (active_backend() == Backend::Avx2)
        return detail::squared_dist_2d_avx2(out, xs, ys, px, py, n);
#endif
    detail::squared_dist_2d_scalar(out, xs, ys, px, py, n);
}

void weighted_sum_rows(double* out, const double* const* rows,
                       const double* w, std::size_t count, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) out[j] = 0.0;
    for (std::size_t i = 0; i < count; ++i) axpy(out, w[i], rows[i], n);
}

}  // namespace tvopt::kernels
