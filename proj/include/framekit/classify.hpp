#pragma once

// Frame-theoretic classification. Two evaluation modes share one report
// type: numeric verdicts read off the singular values of an assembled
// bundle at a fixed truncation, analytic verdicts read off the exact
// DomainProfile of a structured family.
//
// Finite-scale collapses (used deliberately, and asserted by the tests):
//   lower frame  <=> complete           <=> rank(D) = dim
//   Riesz-Fischer <=> minimal <=> omega-independent <=> rank(D) = count
//   exact        <=> minimal

#include "framekit/frameops.hpp"

namespace framekit {

// A bound that may be the symbolic +infinity. Never a sentinel float.
struct Bound {
    bool infinite = false;
    double value = 0.0;

    static Bound inf() { return {true, 0.0}; }
    static Bound of(double v) { return {false, v}; }
};

enum class Provenance { Analytic, NumericAtTruncation };

struct ClassificationReport {
    Bound bessel_bound;         // B: sup of the analysis quadratic form
    Bound lower_frame_bound;    // A: inf of the same form (0 when incomplete)
    Bound riesz_fischer_bound;  // A': coefficient-side lower bound

    bool is_bessel = false;
    bool is_frame = false;
    bool is_lower_frame = false;
    bool is_riesz_fischer = false;
    bool is_riesz_basis = false;
    bool is_complete = false;
    bool is_minimal = false;
    bool is_omega_independent = false;
    bool is_exact = false;

    // False when no analytic verdict exists for the family; the flags above
    // are then placeholders and the truncation study carries the evidence.
    bool resolved = true;

    Provenance provenance = Provenance::NumericAtTruncation;
    int truncation_size = 0;  // element count behind a numeric verdict
    Tolerance tol;
};

// Invertibility taxonomy of one finite matrix. "bb" is bounded-below on the
// whole domain; at finite scale that coincides with injectivity, and every
// range is closed.
struct InvertibilityVerdict {
    bool bb = false;
    double bb_constant = 0.0;  // sharp constant: smallest full-domain singular value
    bool injective = false;
    bool surjective = false;
    bool closed_range = true;
    bool bir = false;  // boundedly invertible onto the range
    bool bi = false;   // boundedly invertible onto the codomain
};

ClassificationReport classify_finite(const OperatorBundle& b);

// Analytic classification from the exact profile. Families whose profile
// defers (analytic_classification == false) come back with resolved == false.
ClassificationReport classify_structured(const StructuredSequence& s, const DomainProfile& p);

InvertibilityVerdict invertibility(const CMatrix& m, const Tolerance& tol);

}  // namespace framekit
