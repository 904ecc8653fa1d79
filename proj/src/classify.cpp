#include "framekit/classify.hpp"

#include <cmath>

#include "framekit/errors.hpp"

namespace framekit {

namespace {

double sq(double x) { return x * x; }

// Rank-drop probe: psi_j lies outside the span of the others exactly when
// removing column j lowers the rank.
bool column_is_essential(const CMatrix& d, Eigen::Index j, Eigen::Index full_rank,
                         const Tolerance& tol) {
    CMatrix rest(d.rows(), d.cols() - 1);
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < d.cols(); ++i) {
        if (i == j) continue;
        rest.col(c++) = d.col(i);
    }
    return numeric_rank(rest, tol) < full_rank;
}

}  // namespace

ClassificationReport classify_finite(const OperatorBundle& b) {
    ClassificationReport r;
    r.provenance = Provenance::NumericAtTruncation;
    r.truncation_size = static_cast<int>(b.count());
    r.tol = b.tol;

    const CMatrix& d = b.synthesis;
    const Eigen::Index rank = numeric_rank(d, b.tol);

    r.bessel_bound = Bound::of(sq(sigma_max(d)));
    r.is_bessel = true;

    // A probes the analysis map over the whole space: zero when the
    // elements fail to span.
    r.lower_frame_bound = Bound::of(sq(sigma_min_full(b.analysis)));
    r.is_complete = rank == b.dim();
    r.is_lower_frame = r.is_complete;
    r.is_frame = r.is_bessel && r.is_lower_frame;

    // A' probes synthesis over all coefficients: zero on a nontrivial kernel.
    r.riesz_fischer_bound = Bound::of(sq(sigma_min_full(d)));
    r.is_omega_independent = rank == b.count();
    r.is_riesz_fischer = r.is_omega_independent;

    bool minimal = true;
    for (Eigen::Index j = 0; j < b.count() && minimal; ++j)
        minimal = column_is_essential(d, j, rank, b.tol);
    r.is_minimal = minimal;
    r.is_exact = r.is_minimal;

    r.is_riesz_basis = r.is_frame && r.is_riesz_fischer;
    return r;
}

ClassificationReport classify_structured(const StructuredSequence& s, const DomainProfile& p) {
    validate(s);

    ClassificationReport r;
    r.provenance = Provenance::Analytic;
    r.truncation_size = 0;
    if (!p.analytic_classification) {
        r.resolved = false;
        return r;
    }

    // Bessel: the masses must stay bounded across every basis index.
    if (p.sup_mass.kind == XReal::Kind::Infinite) {
        r.bessel_bound = Bound::inf();
        r.is_bessel = false;
    } else {
        r.bessel_bound = Bound::of(p.sup_mass.is_finite() ? p.sup_mass.value : 0.0);
        r.is_bessel = true;
    }

    // Lower frame: infimum over the masses, where a divergent mass satisfies
    // any bound vacuously (vectors weighted there fall outside the analysis
    // domain). With no finite mass at all the bound is symbolic infinity.
    if (p.inf_finite_mass.is_finite()) {
        r.lower_frame_bound = Bound::of(p.inf_finite_mass.value);
        r.is_lower_frame = p.inf_finite_mass.value > 0.0;
    } else {
        r.lower_frame_bound = Bound::inf();
        r.is_lower_frame = true;
    }
    r.is_frame = r.is_bessel && r.is_lower_frame;

    // Coefficient side: a repeated basis index kills the lower bound
    // outright, otherwise it is the infimum of the squared weights.
    r.riesz_fischer_bound = Bound::of(p.sigma_injective ? p.inf_weight_sq : 0.0);
    r.is_riesz_fischer = p.sigma_injective && p.inf_weight_sq > 0.0;

    r.is_complete = !p.any_zero_mass;
    r.is_minimal = p.sigma_injective && !p.any_zero_weight;
    r.is_omega_independent = r.is_minimal;
    r.is_exact = r.is_minimal;
    r.is_riesz_basis = r.is_frame && r.is_riesz_fischer;
    return r;
}

InvertibilityVerdict invertibility(const CMatrix& m, const Tolerance& tol) {
    tol.validate();
    if (!all_entries_finite(m)) throw InputError("invertibility: matrix has a non-finite entry");

    InvertibilityVerdict v;
    const Eigen::Index rank = numeric_rank(m, tol);
    v.injective = rank == m.cols();
    v.surjective = rank == m.rows();
    v.closed_range = true;
    v.bb = v.injective;
    v.bb_constant = sigma_min_full(m);
    v.bir = v.injective && v.closed_range;
    v.bi = v.injective && v.surjective;
    return v;
}

}  // namespace framekit
