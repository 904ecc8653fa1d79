#include "framekit/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "framekit/errors.hpp"

namespace framekit {

bool all_entries_finite(const CMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Complex& z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    }
    return true;
}

double Tolerance::cutoff(double sigma_max_value) const {
    return std::max(rank_rel * sigma_max_value, abs_floor);
}

void Tolerance::validate() const {
    if (!(rank_rel > 0.0) || !std::isfinite(rank_rel))
        throw ValidationError("tolerance: rank_rel must be a strictly positive finite value");
    if (!(abs_floor > 0.0) || !std::isfinite(abs_floor))
        throw ValidationError("tolerance: abs_floor must be a strictly positive finite value");
}

SvdResult svd(const CMatrix& m) {
    if (!all_entries_finite(m)) throw InputError("svd: matrix has a non-finite entry");
    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    if (rows == 0 || cols == 0) {
        // Degenerate shapes keep the unitarity contract with empty factors.
        return {CMatrix::Identity(rows, rows), RVector(), CMatrix::Identity(cols, cols)};
    }
    Eigen::JacobiSVD<CMatrix> dec(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

CMatrix pinv(const CMatrix& m, const Tolerance& tol) {
    tol.validate();
    const SvdResult dec = svd(m);
    CMatrix x = CMatrix::Zero(m.cols(), m.rows());
    if (dec.singular_values.size() == 0) return x;
    const double cut = tol.cutoff(dec.singular_values(0));
    for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
        const double s = dec.singular_values(i);
        if (s > cut) {
            x.noalias() +=
                (1.0 / s) * dec.right_basis.col(i) * dec.left_basis.col(i).adjoint();
        }
    }
    return x;
}

Eigen::Index numeric_rank(const CMatrix& m, const Tolerance& tol) {
    tol.validate();
    const SvdResult dec = svd(m);
    if (dec.singular_values.size() == 0) return 0;
    const double cut = tol.cutoff(dec.singular_values(0));
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < dec.singular_values.size(); ++i) {
        if (dec.singular_values(i) > cut) ++rank;
    }
    return rank;
}

double sigma_min_full(const CMatrix& m) {
    if (!all_entries_finite(m)) throw InputError("sigma_min_full: matrix has a non-finite entry");
    if (m.cols() == 0) return std::numeric_limits<double>::infinity();
    if (m.rows() == 0) return 0.0;
    if (m.cols() > m.rows()) return 0.0;  // kernel forced by shape
    const SvdResult dec = svd(m);
    return dec.singular_values(m.cols() - 1);
}

double sigma_max(const CMatrix& m) {
    if (!all_entries_finite(m)) throw InputError("sigma_max: matrix has a non-finite entry");
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    return svd(m).singular_values(0);
}

Complex inner(const CVector& x, const CVector& y) {
    if (x.size() != y.size()) throw InputError("inner: length mismatch");
    return y.dot(x);  // Eigen's dot conjugates its callee
}

}  // namespace framekit
