#pragma once

// Canonical duals and everything they unlock: reconstruction, the
// pseudo-inverse of the analysis operator, minimal-norm coefficients,
// exactness probes, and biorthogonal systems.
//
// All inversion happens in span coordinates through gamma_span; the ambient
// frame operator S is never inverted directly, so null directions of a
// degenerate sequence cannot amplify noise. Operations that encode a proven
// identity verify it on the spot and throw Error on violation rather than
// return silently wrong data.

#include "framekit/frameops.hpp"

namespace framekit {

struct DualSystem {
    FiniteSequence duals;        // dual_j = (pseudo-inverse of S) psi_j
    CMatrix gamma_inv_on_span;   // dim x dim: inverts S on span(Psi), kills the rest
    double span_lower_bound = 0.0;  // smallest eigenvalue of gamma_span
    double residual = 0.0;          // worst reconstruction error over span probes
};

// Requires the frame operator to be invertible on the span: the smallest
// gamma_span eigenvalue must clear the tolerance cutoff, else
// DegenerateFrameError naming that eigenvalue.
DualSystem canonical_dual(const OperatorBundle& b);

// sum_i <f, dual_i> dual_i. Verifies on the spot that it equals
// gamma_inv_on_span * f within 1e-9 (the two sides are distinct routes).
CVector dual_reconstruction_inverse(const OperatorBundle& b, const DualSystem& dual,
                                    const CVector& f);

// Moore-Penrose pseudo-inverse of the analysis operator, computed by SVD.
// Verifies both closed forms before returning: it must match the span-
// coordinate inversion applied to synthesis, and the dual synthesis matrix,
// entrywise within 1e-10.
CMatrix pseudo_inverse_analysis(const OperatorBundle& b, const DualSystem& dual);

struct CoefficientReport {
    CVector canonical;               // <h, dual_i>, the minimal-norm choice
    bool input_projected = false;    // h had a component outside the span
    double canonical_norm_sq = 0.0;
    bool alternative_checked = false;
    double alternative_norm_sq = 0.0;
    double correction_norm_sq = 0.0;  // |alternative - canonical|^2
};

// Canonical coefficients of h (its representable part when h leaves the
// span; the report says so). The overload taking an alternative coefficient
// vector requires it to synthesize the same vector (within
// 1e-8 * (1 + |h|), else InputError) and verifies the Pythagorean split
// |c|^2 = |canonical|^2 + |c - canonical|^2 within 1e-9.
CoefficientReport minimal_norm_coefficients(const OperatorBundle& b, const DualSystem& dual,
                                            const CVector& h);
CoefficientReport minimal_norm_coefficients(const OperatorBundle& b, const DualSystem& dual,
                                            const CVector& h, const CVector& alternative);

enum class ExactnessVerdict { Removable, CriticalElement };

struct ExactnessReport {
    ExactnessVerdict verdict = ExactnessVerdict::Removable;
    double pairing = 0.0;  // Re <psi_j, dual_j>; the decisive number
};

// Element j (1-based) pairs with its own dual to a_j = <psi_j, dual_j>.
// a_j = 1 marks an element whose removal shrinks the span (CriticalElement);
// anything else marks a redundant element (Removable). Each verdict's
// structural consequence is verified by a rank test before returning.
// unit_tol widens the |a_j - 1| comparison.
ExactnessReport exactness_probe(const OperatorBundle& b, const DualSystem& dual, int j,
                                double unit_tol = 1e-8);

struct BiorthogonalReport {
    FiniteSequence biorthogonal;  // the canonical dual again, now certified
    CMatrix pairing;              // pairing(i, j) = <psi_i, dual_j>
    double max_deviation = 0.0;   // worst |pairing - identity| entry
};

// Requires a minimal sequence; a dependent element raises NotMinimalError
// citing its (1-based) column. On success the pairing matrix is the
// identity within 1e-9, verified entrywise.
BiorthogonalReport biorthogonal_system(const OperatorBundle& b, const DualSystem& dual);

// |<h,g> - sum_i <h, dual_i><psi_i, g>| for g in the span (within tolerance,
// else InputError). The identity is verified against 1e-9 * (1 + |<h,g>|)
// before the residual is returned.
double weak_representation_check(const OperatorBundle& b, const DualSystem& dual,
                                 const CVector& h, const CVector& g);

}  // namespace framekit
