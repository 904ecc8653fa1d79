#include "framekit/truncation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "framekit/errors.hpp"

namespace framekit {

namespace {

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string render_trend(const Trend& t) {
    switch (t.kind) {
        case TrendKind::Converged:
            return "converged(" + fmt_value(t.value) + ")";
        case TrendKind::Diverging:
            return "diverging";
        case TrendKind::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

// verdict for a finite analytic value against a numeric trend
ReconcileVerdict match_finite(double analytic, const Trend& t) {
    switch (t.kind) {
        case TrendKind::Converged: {
            const bool close =
                std::abs(t.value - analytic) <= 1e-6 * std::max(1.0, std::abs(analytic));
            return close ? ReconcileVerdict::Agree : ReconcileVerdict::Mismatch;
        }
        case TrendKind::Diverging:
            return ReconcileVerdict::Mismatch;
        case TrendKind::Inconclusive:
            return ReconcileVerdict::Inconclusive;
    }
    return ReconcileVerdict::Inconclusive;
}

// verdict for an analytic claim of divergence (symbolic infinity)
ReconcileVerdict match_infinite(const Trend& t) {
    switch (t.kind) {
        case TrendKind::Diverging:
            return ReconcileVerdict::Agree;
        case TrendKind::Converged:
            return ReconcileVerdict::Mismatch;
        case TrendKind::Inconclusive:
            return ReconcileVerdict::Inconclusive;
    }
    return ReconcileVerdict::Inconclusive;
}

}  // namespace

Trend assess_trend(const std::vector<double>& values, const TrendConfig& cfg) {
    Trend t;
    const int n = static_cast<int>(values.size());
    if (n == 0) return t;

    if (n >= cfg.window) {
        bool settled = true;
        for (int i = n - cfg.window; i < n && settled; ++i)
            for (int j = i + 1; j < n && settled; ++j)
                settled = std::abs(values[i] - values[j]) <=
                          cfg.converge_rel * std::max(1.0, std::abs(values[j]));
        if (settled) {
            t.kind = TrendKind::Converged;
            t.value = values[n - 1];
            return t;
        }
    }

    if (values[n - 1] > cfg.blowup_factor * (values[0] + 1.0)) {
        t.kind = TrendKind::Diverging;
        return t;
    }
    const int steps = std::min(cfg.window, n - 1);
    if (steps >= 1) {
        bool growing = true;
        // 1e-9 relative slack keeps an exact doubling from failing by one ulp
        for (int i = n - steps; i < n && growing; ++i)
            growing = values[i] >= cfg.growth_ratio * values[i - 1] * (1.0 - 1e-9) &&
                      values[i] > values[i - 1];
        if (growing) t.kind = TrendKind::Diverging;
    }
    return t;
}

StudySeries run_study(const StructuredSequence& s, const TruncationPlan& plan,
                      const Tolerance& tol, int max_dim) {
    validate(s);
    validate(plan);
    tol.validate();

    StudySeries series;
    series.tol = tol;
    series.profile = domain_profile(s);
    series.has_restricted = !series.profile.support.covers_everything();

    for (int n : plan.sizes) {
        FiniteSequence trunc;
        try {
            trunc = truncate(s, n, max_dim, plan.dim_override);
        } catch (const ResourceError& e) {
            throw ResourceError("study at size " + std::to_string(n) + ": " + e.what());
        }
        const auto bundle = assemble(trunc, tol);
        const auto rep = classify_finite(bundle);

        StudyRow row;
        row.size = n;
        row.ambient_dim = static_cast<int>(trunc.space_dim);
        row.a = rep.lower_frame_bound.value;
        row.b = rep.bessel_bound.value;
        row.a_prime = rep.riesz_fischer_bound.value;
        row.span_dim = static_cast<int>(bundle.span_dim());

        if (series.has_restricted) {
            row.has_restricted = true;
            const auto support =
                series.profile.support.within(static_cast<int>(trunc.space_dim));
            if (!support.empty()) {
                const auto rbundle = restricted_bundle(trunc, support, tol);
                const auto rrep = classify_finite(rbundle);
                row.restricted_a = rrep.lower_frame_bound.value;
                row.restricted_b = rrep.bessel_bound.value;
                row.restricted_a_prime = rrep.riesz_fischer_bound.value;
                row.restricted_span_dim = static_cast<int>(rbundle.span_dim());
            }
            // empty support: the restricted system is the zero space and the
            // zero-initialized row says exactly that
        }
        series.rows.push_back(row);
    }

    // structural guards: columns only accumulate, so the sup grows and the
    // coefficient-side inf shrinks
    for (std::size_t i = 1; i < series.rows.size(); ++i) {
        const auto& prev = series.rows[i - 1];
        const auto& cur = series.rows[i];
        if (cur.b < prev.b * (1.0 - 1e-12) - 1e-15)
            throw Error("run_study: Bessel bound decreased between sizes " +
                        std::to_string(prev.size) + " and " + std::to_string(cur.size));
        if (cur.a_prime > prev.a_prime * (1.0 + 1e-12) + 1e-15)
            throw Error("run_study: coefficient bound increased between sizes " +
                        std::to_string(prev.size) + " and " + std::to_string(cur.size));
    }

    std::vector<double> va, vb, vap, vra, vrb;
    for (const auto& r : series.rows) {
        va.push_back(r.a);
        vb.push_back(r.b);
        vap.push_back(r.a_prime);
        vra.push_back(r.restricted_a);
        vrb.push_back(r.restricted_b);
    }
    series.trend_a = assess_trend(va, series.config);
    series.trend_b = assess_trend(vb, series.config);
    series.trend_a_prime = assess_trend(vap, series.config);
    if (series.has_restricted) {
        series.trend_restricted_a = assess_trend(vra, series.config);
        series.trend_restricted_b = assess_trend(vrb, series.config);
    }
    return series;
}

Reconciliation reconcile(const StudySeries& series, const ClassificationReport& analytic) {
    Reconciliation rec;
    auto add = [&rec](std::string quantity, std::string claim, const Trend& t,
                      ReconcileVerdict v) {
        rec.rows.push_back({std::move(quantity), std::move(claim), render_trend(t), v});
        if (v == ReconcileVerdict::Mismatch) rec.any_mismatch = true;
    };

    if (!analytic.resolved) {
        add("A", "unresolved", series.trend_a, ReconcileVerdict::EmpiricalOnly);
        add("B", "unresolved", series.trend_b, ReconcileVerdict::EmpiricalOnly);
        add("A_prime", "unresolved", series.trend_a_prime, ReconcileVerdict::EmpiricalOnly);
        if (series.has_restricted) {
            add("restricted_A", "unresolved", series.trend_restricted_a,
                ReconcileVerdict::EmpiricalOnly);
            add("restricted_B", "unresolved", series.trend_restricted_b,
                ReconcileVerdict::EmpiricalOnly);
        }
        return rec;
    }

    // A: a symbolic-infinity lower bound is vacuous (no finite mass); the
    // full-space numeric bound cannot probe it
    if (analytic.lower_frame_bound.infinite)
        add("A", "infinite", series.trend_a, ReconcileVerdict::EmpiricalOnly);
    else
        add("A", fmt_value(analytic.lower_frame_bound.value), series.trend_a,
            match_finite(analytic.lower_frame_bound.value, series.trend_a));

    if (analytic.bessel_bound.infinite)
        add("B", "infinite", series.trend_b, match_infinite(series.trend_b));
    else
        add("B", fmt_value(analytic.bessel_bound.value), series.trend_b,
            match_finite(analytic.bessel_bound.value, series.trend_b));

    add("A_prime", fmt_value(analytic.riesz_fischer_bound.value), series.trend_a_prime,
        match_finite(analytic.riesz_fischer_bound.value, series.trend_a_prime));

    if (series.has_restricted) {
        const XReal& lo = series.profile.inf_finite_mass;
        if (lo.is_finite())
            add("restricted_A", fmt_value(lo.value), series.trend_restricted_a,
                match_finite(lo.value, series.trend_restricted_a));
        else
            add("restricted_A", "none", series.trend_restricted_a,
                ReconcileVerdict::EmpiricalOnly);

        const XReal& hi = series.profile.sup_finite_mass;
        if (hi.is_finite())
            add("restricted_B", fmt_value(hi.value), series.trend_restricted_b,
                match_finite(hi.value, series.trend_restricted_b));
        else if (hi.kind == XReal::Kind::Infinite)
            add("restricted_B", "infinite", series.trend_restricted_b,
                match_infinite(series.trend_restricted_b));
        else
            add("restricted_B", "none", series.trend_restricted_b,
                ReconcileVerdict::EmpiricalOnly);
    }
    return rec;
}

}  // namespace framekit
