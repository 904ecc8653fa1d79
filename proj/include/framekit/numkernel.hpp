#pragma once

// Dense complex linear-algebra substrate. Everything downstream (operator
// assembly, classification, duals, truncation studies) goes through the
// functions here so that rank decisions and pseudo-inverses share a single
// tolerance model and a single, deterministic SVD algorithm.

#include <complex>
#include <Eigen/Dense>

namespace framekit {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;   // column-major, heap-allocated
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Rank / cutoff policy shared by every operation that has to decide whether
// a singular value counts as zero. The effective cutoff for a matrix with
// largest singular value s is max(rank_rel * s, abs_floor).
struct Tolerance {
    double rank_rel = 1e-10;
    double abs_floor = 1e-14;

    double cutoff(double sigma_max) const;
    void validate() const;  // both fields strictly positive and finite
};

// Full SVD: m = left_basis * diag(singular_values) * right_basis^*.
// left_basis is rows x rows unitary, right_basis is cols x cols unitary,
// singular_values holds min(rows, cols) entries in non-increasing order.
struct SvdResult {
    CMatrix left_basis;
    RVector singular_values;
    CMatrix right_basis;
};

// Deterministic full SVD (two-sided Jacobi; no randomized methods).
// Throws InputError on non-finite entries.
SvdResult svd(const CMatrix& m);

// Moore-Penrose pseudo-inverse through the SVD, inverting only singular
// values above the tolerance cutoff.
CMatrix pinv(const CMatrix& m, const Tolerance& tol);

// Number of singular values above the cutoff.
Eigen::Index numeric_rank(const CMatrix& m, const Tolerance& tol);

// Smallest singular value of m measured over its full domain (the space of
// dimension cols the matrix acts on): zero as soon as the kernel is
// nontrivial, +infinity for a 0-column matrix (nothing to bound). Returns
// the raw value; thresholding is the caller's job.
double sigma_min_full(const CMatrix& m);

// Largest singular value; zero for empty matrices.
double sigma_max(const CMatrix& m);

// Plain inner product, linear in the first argument: <x, y> = sum x_i conj(y_i).
Complex inner(const CVector& x, const CVector& y);

bool all_entries_finite(const CMatrix& m);

}  // namespace framekit
