#include "framekit/duality.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "framekit/errors.hpp"

namespace framekit {

namespace {

CVector project_to_span(const OperatorBundle& b, const CVector& f) {
    return b.span_basis * (b.span_basis.adjoint() * f);
}

CMatrix dual_matrix(const DualSystem& d) {
    CMatrix m(d.duals.space_dim, d.duals.count());
    for (Eigen::Index j = 0; j < d.duals.count(); ++j) m.col(j) = d.duals.elements[j];
    return m;
}

void check_vector_dim(const OperatorBundle& b, const CVector& v, const char* who) {
    if (v.size() != b.dim())
        throw InputError(std::string(who) + ": vector has length " +
                         std::to_string(v.size()) + ", expected " + std::to_string(b.dim()));
    if (!all_entries_finite(v))
        throw InputError(std::string(who) + ": vector has a non-finite entry");
}

}  // namespace

DualSystem canonical_dual(const OperatorBundle& b) {
    const Eigen::Index r = b.span_dim();
    const double cut = b.tol.cutoff(sigma_max(b.synthesis));
    if (r == 0)
        throw DegenerateFrameError(
            "canonical_dual: frame operator vanishes on the span (eigenvalue 0)", 0.0);

    Eigen::SelfAdjointEigenSolver<CMatrix> eig(b.gamma_span);
    if (eig.info() != Eigen::Success)
        throw Error("canonical_dual: eigensolver failed on gamma_span");
    const RVector lam = eig.eigenvalues();  // ascending
    if (lam(0) <= cut * cut) {
        std::ostringstream msg;
        msg << "canonical_dual: frame operator is degenerate on the span, smallest "
               "eigenvalue "
            << lam(0) << " is at or below the cutoff " << cut * cut;
        throw DegenerateFrameError(msg.str(), lam(0));
    }

    CMatrix gamma_inv_r = CMatrix::Zero(r, r);
    const CMatrix v = eig.eigenvectors();
    for (Eigen::Index i = 0; i < r; ++i)
        gamma_inv_r += (1.0 / lam(i)) * v.col(i) * v.col(i).adjoint();

    DualSystem d;
    d.span_lower_bound = lam(0);
    d.gamma_inv_on_span = b.span_basis * gamma_inv_r * b.span_basis.adjoint();

    const CMatrix dtilde = d.gamma_inv_on_span * b.synthesis;
    d.duals.space_dim = b.dim();
    for (Eigen::Index j = 0; j < b.count(); ++j) d.duals.elements.push_back(dtilde.col(j));

    // Reconstruction f = sum_i <f, psi_i> dual_i over an orthonormal probe
    // basis of the span; linearity extends the bound to the whole span.
    double worst = 0.0;
    for (Eigen::Index k = 0; k < r; ++k) {
        const CVector f = b.span_basis.col(k);
        const CVector back = dtilde * (b.analysis * f);
        worst = std::max(worst, (back - f).norm());
    }
    d.residual = worst;
    return d;
}

CVector dual_reconstruction_inverse(const OperatorBundle& b, const DualSystem& dual,
                                    const CVector& f) {
    check_vector_dim(b, f, "dual_reconstruction_inverse");
    const CMatrix dtilde = dual_matrix(dual);
    const CVector via_duals = dtilde * (dtilde.adjoint() * f);
    const CVector via_inverse = dual.gamma_inv_on_span * f;
    const double gap = (via_duals - via_inverse).norm();
    if (gap > 1e-9 * (1.0 + f.norm())) {
        std::ostringstream msg;
        msg << "dual_reconstruction_inverse: dual frame operator and span inverse "
               "disagree by "
            << gap;
        throw Error(msg.str());
    }
    return via_duals;
}

CMatrix pseudo_inverse_analysis(const OperatorBundle& b, const DualSystem& dual) {
    const CMatrix via_svd = pinv(b.analysis, b.tol);
    const CMatrix via_span = dual.gamma_inv_on_span * b.synthesis;
    const CMatrix via_duals = dual_matrix(dual);

    const double scale = 1.0 + via_svd.cwiseAbs().maxCoeff();
    const double gap_span = (via_svd - via_span).cwiseAbs().maxCoeff();
    const double gap_duals = (via_svd - via_duals).cwiseAbs().maxCoeff();
    if (gap_span > 1e-10 * scale || gap_duals > 1e-10 * scale) {
        std::ostringstream msg;
        msg << "pseudo_inverse_analysis: closed forms disagree (span route off by "
            << gap_span << ", dual route off by " << gap_duals << ")";
        throw Error(msg.str());
    }
    return via_svd;
}

CoefficientReport minimal_norm_coefficients(const OperatorBundle& b, const DualSystem& dual,
                                            const CVector& h) {
    check_vector_dim(b, h, "minimal_norm_coefficients");
    CoefficientReport rep;
    const CVector ph = project_to_span(b, h);
    rep.input_projected = (h - ph).norm() > b.tol.rank_rel * (1.0 + h.norm());
    rep.canonical = dual_matrix(dual).adjoint() * h;  // <h, dual_i>
    rep.canonical_norm_sq = rep.canonical.squaredNorm();
    return rep;
}

CoefficientReport minimal_norm_coefficients(const OperatorBundle& b, const DualSystem& dual,
                                            const CVector& h, const CVector& alternative) {
    if (alternative.size() != b.count())
        throw InputError("minimal_norm_coefficients: alternative has length " +
                         std::to_string(alternative.size()) + ", expected " +
                         std::to_string(b.count()));
    if (!all_entries_finite(alternative))
        throw InputError("minimal_norm_coefficients: alternative has a non-finite entry");

    CoefficientReport rep = minimal_norm_coefficients(b, dual, h);
    const CVector target = project_to_span(b, h);
    const double synth_err = (b.synthesis * alternative - target).norm();
    if (synth_err > 1e-8 * (1.0 + h.norm())) {
        std::ostringstream msg;
        msg << "minimal_norm_coefficients: alternative misses the representable part "
               "of h by "
            << synth_err;
        throw InputError(msg.str());
    }

    rep.alternative_checked = true;
    rep.alternative_norm_sq = alternative.squaredNorm();
    rep.correction_norm_sq = (alternative - rep.canonical).squaredNorm();
    const double gap = std::abs(rep.alternative_norm_sq -
                                (rep.canonical_norm_sq + rep.correction_norm_sq));
    if (gap > 1e-9 * (1.0 + rep.alternative_norm_sq)) {
        std::ostringstream msg;
        msg << "minimal_norm_coefficients: Pythagorean split violated by " << gap;
        throw Error(msg.str());
    }
    return rep;
}

ExactnessReport exactness_probe(const OperatorBundle& b, const DualSystem& dual, int j,
                                double unit_tol) {
    if (j < 1 || j > b.count())
        throw InputError("exactness_probe: index " + std::to_string(j) + " outside [1, " +
                         std::to_string(b.count()) + "]");

    const CVector psi = b.synthesis.col(j - 1);
    const Complex a = inner(psi, dual.duals.elements[j - 1]);

    ExactnessReport rep;
    rep.pairing = a.real();  // a_j is real: <psi, S^+ psi> with S^+ PSD

    CMatrix rest(b.dim(), b.count() - 1);
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < b.count(); ++i) {
        if (i == j - 1) continue;
        rest.col(c++) = b.synthesis.col(i);
    }
    const Eigen::Index full_rank = numeric_rank(b.synthesis, b.tol);
    const Eigen::Index rest_rank = numeric_rank(rest, b.tol);

    if (std::abs(a - Complex(1.0)) <= unit_tol) {
        rep.verdict = ExactnessVerdict::CriticalElement;
        if (rest_rank != full_rank - 1)
            throw Error("exactness_probe: pairing says element " + std::to_string(j) +
                        " is critical but deleting it kept the span");
    } else {
        rep.verdict = ExactnessVerdict::Removable;
        if (rest_rank != full_rank)
            throw Error("exactness_probe: pairing says element " + std::to_string(j) +
                        " is removable but deleting it shrank the span");
        if (rest_rank > 0) {
            // the survivors must keep a positive lower bound on their span
            const SvdResult dec = svd(rest);
            if (!(dec.singular_values(rest_rank - 1) > 0.0))
                throw Error("exactness_probe: deleted sequence lost its span lower bound");
        }
    }
    return rep;
}

BiorthogonalReport biorthogonal_system(const OperatorBundle& b, const DualSystem& dual) {
    const Eigen::Index rank = numeric_rank(b.synthesis, b.tol);
    for (Eigen::Index j = 0; j < b.count(); ++j) {
        CMatrix rest(b.dim(), b.count() - 1);
        Eigen::Index c = 0;
        for (Eigen::Index i = 0; i < b.count(); ++i) {
            if (i == j) continue;
            rest.col(c++) = b.synthesis.col(i);
        }
        if (numeric_rank(rest, b.tol) == rank)
            throw NotMinimalError("biorthogonal_system: element " + std::to_string(j + 1) +
                                      " lies in the closed span of the others",
                                  static_cast<int>(j + 1));
    }

    const CMatrix m = dual_matrix(dual).adjoint() * b.synthesis;  // m(j, i) = <psi_i, dual_j>
    BiorthogonalReport rep;
    rep.biorthogonal = dual.duals;
    rep.pairing = m.transpose();
    rep.max_deviation =
        (rep.pairing - CMatrix::Identity(b.count(), b.count())).cwiseAbs().maxCoeff();
    if (rep.max_deviation > 1e-9) {
        std::ostringstream msg;
        msg << "biorthogonal_system: pairing deviates from the identity by "
            << rep.max_deviation;
        throw Error(msg.str());
    }
    return rep;
}

double weak_representation_check(const OperatorBundle& b, const DualSystem& dual,
                                 const CVector& h, const CVector& g) {
    check_vector_dim(b, h, "weak_representation_check");
    check_vector_dim(b, g, "weak_representation_check");
    const CVector pg = project_to_span(b, g);
    if ((g - pg).norm() > 1e-9 * (1.0 + g.norm()))
        throw InputError("weak_representation_check: g lies outside the span");

    const Complex direct = inner(h, g);
    const CVector ch = dual_matrix(dual).adjoint() * h;  // <h, dual_i>
    const CVector cg = b.analysis * g;                   // <g, psi_i>
    const Complex expanded = inner(ch, cg);              // sum <h,dual_i><psi_i,g>
    const double residual = std::abs(direct - expanded);
    if (residual > 1e-9 * (1.0 + std::abs(direct))) {
        std::ostringstream msg;
        msg << "weak_representation_check: identity violated by " << residual;
        throw Error(msg.str());
    }
    return residual;
}

}  // namespace framekit
