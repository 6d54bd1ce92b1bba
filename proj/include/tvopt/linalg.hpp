#pragma once

#include "tvopt/types.hpp"

namespace tvopt {

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);

/// y += a * x
void axpy_inplace(Vec& y, double a, const Vec& x);

/// A * x (A row-major, x of length A.cols)
Vec matvec(const Mat& A, const Vec& x);

/// A^T * x (x of length A.rows)
Vec matvec_t(const Mat& A, const Vec& x);

/// A^T * A
Mat gram(const Mat& A);

/// Diagnostics for one symmetric solve.
struct SolveDiag {
    double ridge = 0.0;   // ridge that made the factorization succeed
    int attempts = 0;     // factorization attempts (1 = clean solve)
};

/// Solves H x = rhs for symmetric positive definite H by Cholesky
/// factorization. If the factorization fails, retries with H + ridge*I,
/// doubling the ridge from 1e-10 up to 1e-4 before giving up with
/// SingularHessian. Never forms an explicit inverse.
Vec solve_spd(const Mat& hessian, const Vec& rhs, SolveDiag* diag = nullptr);

constexpr double kRidgeMin = 1e-10;
constexpr double kRidgeMax = 1e-4;

/// Eigenvalues of a small symmetric matrix (Jacobi rotations), ascending.
/// Test and diagnostic use only.
Vec symmetric_eigenvalues(const Mat& A);

}  // namespace tvopt
