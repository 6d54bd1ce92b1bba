#include "tvopt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tvopt/errors.hpp"
#include "tvopt/kernels.hpp"

namespace tvopt {

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: size mismatch");
    return kernels::dot(a.data(), b.data(), a.size());
}

double norm2(const Vec& a) {
    return std::sqrt(kernels::dot(a.data(), a.data(), a.size()));
}

void axpy_inplace(Vec& y, double a, const Vec& x) {
    if (y.size() != x.size())
        throw std::invalid_argument("axpy_inplace: size mismatch");
    kernels::axpy(y.data(), a, x.data(), x.size());
}

Vec matvec(const Mat& A, const Vec& x) {
    if (x.size() != A.cols)
        throw std::invalid_argument("matvec: size mismatch");
    Vec out(A.rows, 0.0);
    for (std::size_t i = 0; i < A.rows; ++i)
        out[i] = kernels::dot(A.data.data() + i * A.cols, x.data(), A.cols);
    return out;
}

Vec matvec_t(const Mat& A, const Vec& x) {
    if (x.size() != A.rows)
        throw std::invalid_argument("matvec_t: size mismatch");
    Vec out(A.cols, 0.0);
    for (std::size_t i = 0; i < A.rows; ++i)
        kernels::axpy(out.data(), x[i], A.data.data() + i * A.cols, A.cols);
    return out;
}

Mat gram(const Mat& A) {
    Mat g(A.cols, A.cols);
    for (std::size_t i = 0; i < A.rows; ++i) {
        const double* row = A.data.data() + i * A.cols;
        for (std::size_t j = 0; j < A.cols; ++j)
            for (std::size_t k = j; k < A.cols; ++k)
                g(j, k) += row[j] * row[k];
    }
    for (std::size_t j = 0; j < A.cols; ++j)
        for (std::size_t k = 0; k < j; ++k) g(j, k) = g(k, j);
    return g;
}

namespace {

// In-place lower Cholesky; returns false on a non-positive pivot.
bool cholesky(Mat& A) {
    const std::size_t n = A.rows;
    for (std::size_t j = 0; j < n; ++j) {
        double d = A(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= A(j, k) * A(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        A(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = A(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= A(i, k) * A(j, k);
            A(i, j) = s / ljj;
        }
    }
    return true;
}

Vec cholesky_solve(const Mat& L, const Vec& rhs) {
    const std::size_t n = L.rows;
    Vec y(rhs);
    for (std::size_t i = 0; i < n; ++i) {
        double s = y[i];
        for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * y[k];
        y[i] = s / L(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= L(k, ii) * y[k];
        y[ii] = s / L(ii, ii);
    }
    return y;
}

}  // namespace

Vec solve_spd(const Mat& hessian, const Vec& rhs, SolveDiag* diag) {
    if (hessian.rows != hessian.cols)
        throw std::invalid_argument("solve_spd: matrix must be square");
    if (rhs.size() != hessian.rows)
        throw std::invalid_argument("solve_spd: rhs dimension mismatch");

    SolveDiag local;
    double ridge = 0.0;
    for (;;) {
        Mat L = hessian;
        if (ridge > 0.0)
            for (std::size_t i = 0; i < L.rows; ++i) L(i, i) += ridge;
        ++local.attempts;
        if (cholesky(L)) {
            local.ridge = ridge;
            if (diag) *diag = local;
            return cholesky_solve(L, rhs);
        }
        if (ridge == 0.0)
            ridge = kRidgeMin;
        else if (ridge < kRidgeMax)
            ridge = std::min(2.0 * ridge, kRidgeMax);
        else
            throw SingularHessian(
                "solve_spd: factorization failed at maximum ridge " +
                std::to_string(kRidgeMax));
    }
}

Vec symmetric_eigenvalues(const Mat& A) {
    if (A.rows != A.cols)
        throw std::invalid_argument("symmetric_eigenvalues: matrix must be square");
    Mat B = A;
    const std::size_t n = B.rows;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += B(i, j) * B(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (B(p, q) == 0.0) continue;
                const double theta = (B(q, q) - B(p, p)) / (2.0 * B(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double bkp = B(k, p), bkq = B(k, q);
                    B(k, p) = c * bkp - s * bkq;
                    B(k, q) = s * bkp + c * bkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double bpk = B(p, k), bqk = B(q, k);
                    B(p, k) = c * bpk - s * bqk;
                    B(q, k) = s * bpk + c * bqk;
                }
            }
        }
    }
    Vec evals(n);
    for (std::size_t i = 0; i < n; ++i) evals[i] = B(i, i);
    std::sort(evals.begin(), evals.end());
    return evals;
}

}  // namespace tvopt
