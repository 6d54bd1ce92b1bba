#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "tvopt/errors.hpp"

namespace tvopt {

/// Dense real vector. Parameter vectors, gradients and observations are
/// all plain Vecs; dimensions in this library are small (d <= 3) except
/// for observation rows (up to a few hundred entries).
using Vec = std::vector<double>;

/// Dense row-major matrix.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline bool all_finite(const Mat& m) {
    for (double x : m.data)
        if (!std::isfinite(x)) return false;
    return true;
}

/// Gradient, Hessian and time-derivative-of-gradient of the risk at one
/// (theta, t). The Hessian is symmetrized on construction; asymmetry
/// beyond kSymTol is a construction error.
struct DerivativeBundle {
    Vec gradient;
    Mat hessian;
    Vec cross;

    static constexpr double kSymTol = 1e-10;

    DerivativeBundle() = default;
    DerivativeBundle(Vec grad, Mat hess, Vec cr)
        : gradient(std::move(grad)), hessian(std::move(hess)), cross(std::move(cr)) {
        symmetrize();
    }

    std::size_t dim() const { return gradient.size(); }

    void symmetrize() {
        for (std::size_t i = 0; i < hessian.rows; ++i) {
            for (std::size_t j = i + 1; j < hessian.cols; ++j) {
                const double avg = 0.5 * (hessian(i, j) + hessian(j, i));
                hessian(i, j) = avg;
                hessian(j, i) = avg;
            }
        }
    }

    bool finite() const {
        return all_finite(gradient) && all_finite(hessian) && all_finite(cross);
    }
};

}  // namespace tvopt
