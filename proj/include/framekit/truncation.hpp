#pragma once

// Truncation studies: evaluate the finite classifications across a plan of
// growing sizes, detect trends, and reconcile them with the analytic
// verdicts. Studies never extrapolate; they report trends, and only
// reconcile() compares those trends with analytic claims.

#include <string>
#include <vector>

#include "framekit/classify.hpp"

namespace framekit {

// Trend thresholds. These are configuration, echoed into every report.
struct TrendConfig {
    double converge_rel = 1e-6;   // last `window` values pairwise within this
    double blowup_factor = 1e6;   // last > factor * (first + 1) means divergence
    double growth_ratio = 2.0;    // or: every recent step grows by this much
    int window = 3;
};

enum class TrendKind { Converged, Diverging, Inconclusive };

struct Trend {
    TrendKind kind = TrendKind::Inconclusive;
    double value = 0.0;  // the last value when converged
};

struct StudyRow {
    int size = 0;         // element count N at this truncation
    int ambient_dim = 0;  // ambient dimension the truncation landed in
    double a = 0.0;       // lower frame bound at N
    double b = 0.0;       // Bessel bound at N
    double a_prime = 0.0; // coefficient-side bound at N
    int span_dim = 0;
    // the same quantities inside the support subspace, when the family's
    // support is a proper subset of the basis
    bool has_restricted = false;
    double restricted_a = 0.0;
    double restricted_b = 0.0;
    double restricted_a_prime = 0.0;
    int restricted_span_dim = 0;
};

struct StudySeries {
    std::vector<StudyRow> rows;
    TrendConfig config;
    Trend trend_a, trend_b, trend_a_prime;
    bool has_restricted = false;
    Trend trend_restricted_a, trend_restricted_b;
    DomainProfile profile;  // the exact profile the restriction came from
    Tolerance tol;
};

// Trend of one value series under the config rules. Convergence needs at
// least `window` values; divergence needs either the blowup test or growth
// by `growth_ratio` across each of the last min(window, count-1) steps.
// Convergence wins when both fire.
Trend assess_trend(const std::vector<double>& values, const TrendConfig& cfg);

// Truncate, assemble and classify at every size of the plan. Families whose
// support excludes some basis indices get restricted rows as well; an empty
// support yields all-zero restricted rows. Asserts the structural guards
// B(N) nondecreasing and A'(N) nonincreasing and throws Error on violation.
StudySeries run_study(const StructuredSequence& s, const TruncationPlan& plan,
                      const Tolerance& tol, int max_dim = kDefaultMaxDim);

enum class ReconcileVerdict { Agree, Mismatch, EmpiricalOnly, Inconclusive };

struct ReconcileRow {
    std::string quantity;  // "A", "B", "A_prime", "restricted_A", "restricted_B"
    std::string analytic;  // rendered analytic claim
    std::string numeric;   // rendered trend
    ReconcileVerdict verdict = ReconcileVerdict::Inconclusive;
};

struct Reconciliation {
    std::vector<ReconcileRow> rows;
    bool any_mismatch = false;
};

// Pair each analytic claim with its numeric trend. Unresolved analytics
// (deferred families) make every row empirical-only. A vacuous lower bound
// (no finite mass at all) has no numeric probe and is also empirical-only.
// Mismatches are flagged, never auto-resolved.
Reconciliation reconcile(const StudySeries& series, const ClassificationReport& analytic);

}  // namespace framekit
