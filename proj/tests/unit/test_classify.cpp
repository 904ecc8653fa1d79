#include "framekit/classify.hpp"

#include <cmath>

#include "doctest.h"
#include "framekit/errors.hpp"
#include "support/test_support.hpp"

using namespace framekit;
using testsupport::frob;

namespace {

FiniteSequence seq2(std::initializer_list<std::pair<double, double>> cols) {
    FiniteSequence s;
    s.space_dim = 2;
    for (const auto& [a, b] : cols) {
        CVector v(2);
        v << Complex(a), Complex(b);
        s.elements.push_back(v);
    }
    return s;
}

FiniteSequence onb(int n) {
    FiniteSequence s;
    s.space_dim = n;
    for (int j = 0; j < n; ++j) {
        CVector v = CVector::Zero(n);
        v(j) = 1.0;
        s.elements.push_back(v);
    }
    return s;
}

bool flags_equal(const ClassificationReport& x, const ClassificationReport& y) {
    return x.is_bessel == y.is_bessel && x.is_frame == y.is_frame &&
           x.is_lower_frame == y.is_lower_frame &&
           x.is_riesz_fischer == y.is_riesz_fischer &&
           x.is_riesz_basis == y.is_riesz_basis && x.is_complete == y.is_complete &&
           x.is_minimal == y.is_minimal &&
           x.is_omega_independent == y.is_omega_independent && x.is_exact == y.is_exact;
}

}  // namespace

TEST_CASE("orthonormal basis: every flag true, unit bounds") {
    const auto r = classify_finite(assemble(onb(3), Tolerance{}));
    CHECK(r.bessel_bound.value == doctest::Approx(1.0));
    CHECK(r.lower_frame_bound.value == doctest::Approx(1.0));
    CHECK(r.riesz_fischer_bound.value == doctest::Approx(1.0));
    CHECK_FALSE(r.bessel_bound.infinite);
    CHECK(r.is_bessel);
    CHECK(r.is_frame);
    CHECK(r.is_lower_frame);
    CHECK(r.is_riesz_fischer);
    CHECK(r.is_riesz_basis);
    CHECK(r.is_complete);
    CHECK(r.is_minimal);
    CHECK(r.is_omega_independent);
    CHECK(r.is_exact);
    CHECK(r.resolved);
    CHECK(r.provenance == Provenance::NumericAtTruncation);
    CHECK(r.truncation_size == 3);
}

TEST_CASE("independent pair e1, e1+e2: golden-ratio spectrum, Riesz basis") {
    const auto r = classify_finite(assemble(seq2({{1, 0}, {1, 1}}), Tolerance{}));
    const double lo = (3.0 - std::sqrt(5.0)) / 2.0;
    const double hi = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(r.lower_frame_bound.value == doctest::Approx(lo).epsilon(1e-12));
    CHECK(r.bessel_bound.value == doctest::Approx(hi).epsilon(1e-12));
    CHECK(r.riesz_fischer_bound.value == doctest::Approx(lo).epsilon(1e-12));
    CHECK(r.is_riesz_basis);
    CHECK(r.is_minimal);
    CHECK(r.is_frame);
}

TEST_CASE("dependent triple e1, e2, e1+e2: frame but nothing coefficient-side") {
    const auto r = classify_finite(assemble(seq2({{1, 0}, {0, 1}, {1, 1}}), Tolerance{}));
    CHECK(r.lower_frame_bound.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.bessel_bound.value == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.riesz_fischer_bound.value == 0.0);  // wide matrix: exact zero
    CHECK(r.is_frame);
    CHECK(r.is_complete);
    CHECK_FALSE(r.is_riesz_fischer);
    CHECK_FALSE(r.is_minimal);
    CHECK_FALSE(r.is_omega_independent);
    CHECK_FALSE(r.is_exact);
    CHECK_FALSE(r.is_riesz_basis);
}

TEST_CASE("zero element breaks minimality but not completeness") {
    const auto r = classify_finite(assemble(seq2({{1, 0}, {0, 1}, {0, 0}}), Tolerance{}));
    CHECK(r.is_complete);
    CHECK_FALSE(r.is_minimal);
    CHECK_FALSE(r.is_riesz_fischer);
    CHECK(r.lower_frame_bound.value == doctest::Approx(1.0));
}

TEST_CASE("incomplete independent pair in C^3") {
    FiniteSequence s = onb(3);
    s.elements.pop_back();
    const auto r = classify_finite(assemble(s, Tolerance{}));
    CHECK_FALSE(r.is_complete);
    CHECK_FALSE(r.is_lower_frame);
    CHECK(r.lower_frame_bound.value == 0.0);  // analysis map has a kernel
    CHECK(r.is_riesz_fischer);                // coefficients still separated
    CHECK(r.is_minimal);
    CHECK_FALSE(r.is_riesz_basis);
}

TEST_CASE("scaling covariance: bounds scale by t^2, flags unchanged") {
    const double t = 2.5;
    for (int c = 0; c < 40; ++c) {
        const auto s = testsupport::random_sequence(c + 500);
        FiniteSequence scaled = s;
        for (auto& v : scaled.elements) v *= t;

        const auto r0 = classify_finite(assemble(s, Tolerance{}));
        const auto r1 = classify_finite(assemble(scaled, Tolerance{}));
        CHECK(flags_equal(r0, r1));
        CHECK(r1.bessel_bound.value ==
              doctest::Approx(t * t * r0.bessel_bound.value).epsilon(1e-9));
        CHECK(r1.lower_frame_bound.value ==
              doctest::Approx(t * t * r0.lower_frame_bound.value).epsilon(1e-9));
        CHECK(r1.riesz_fischer_bound.value ==
              doctest::Approx(t * t * r0.riesz_fischer_bound.value).epsilon(1e-9));
    }
}

TEST_CASE("bound ordering and the finite-scale collapses on the random suite") {
    int rf_count = 0, dependent_count = 0;
    for (int c = 0; c < 120; ++c) {
        const auto s = testsupport::random_sequence(c + 900);
        const auto b = assemble(s, Tolerance{});
        const auto r = classify_finite(b);

        CHECK(r.lower_frame_bound.value <= r.bessel_bound.value * (1.0 + 1e-12));
        CHECK(r.is_frame == (r.is_bessel && r.is_lower_frame));
        // collapse: coefficient separation, minimality, omega-independence
        CHECK(r.is_riesz_fischer == r.is_minimal);
        CHECK(r.is_minimal == r.is_omega_independent);
        CHECK(r.is_exact == r.is_minimal);
        if (r.is_riesz_basis) CHECK((r.is_frame && r.is_minimal));
        // minimal + lower frame + complete forces coefficient separation
        if (r.is_minimal && r.is_lower_frame && r.is_complete) CHECK(r.is_riesz_fischer);
        r.is_riesz_fischer ? ++rf_count : ++dependent_count;
    }
    // the population must exercise both sides
    CHECK(rf_count > 10);
    CHECK(dependent_count > 10);
}

TEST_CASE("Riesz-Fischer instances invert the Gram matrix with norm 1/A'") {
    int checked = 0;
    for (int c = 0; c < 60; ++c) {
        const auto s = testsupport::random_sequence(c + 1300);
        const auto b = assemble(s, Tolerance{});
        const auto r = classify_finite(b);
        if (!r.is_riesz_fischer) continue;
        ++checked;
        const CMatrix ginv = pinv(b.gram, b.tol);
        CHECK(frob(ginv * b.gram - CMatrix::Identity(b.count(), b.count())) < 1e-8);
        const double norm_inv = sigma_max(ginv);
        CHECK(norm_inv ==
              doctest::Approx(1.0 / r.riesz_fischer_bound.value).epsilon(1e-8));
    }
    CHECK(checked > 10);
}

TEST_CASE("structured: linear weights give an unbounded lower frame family") {
    const StructuredSequence s = WeightedOnb{IdentityMap{}, PolyWeight{1.0, 1, 1.0}};
    const auto r = classify_structured(s, domain_profile(s));

    CHECK(r.resolved);
    CHECK(r.provenance == Provenance::Analytic);
    CHECK(r.is_lower_frame);
    CHECK(r.lower_frame_bound.value == doctest::Approx(4.0));
    CHECK_FALSE(r.is_bessel);
    CHECK(r.bessel_bound.infinite);
    CHECK_FALSE(r.is_frame);
    CHECK(r.is_riesz_fischer);
    CHECK(r.riesz_fischer_bound.value == doctest::Approx(4.0));
    CHECK(r.is_complete);
    CHECK(r.is_minimal);
    CHECK(r.is_exact);
    CHECK_FALSE(r.is_riesz_basis);
}

TEST_CASE("structured: alternating family is a lower frame, not Riesz-Fischer") {
    const StructuredSequence s =
        WeightedOnb{PrefixPeriodicMap{{}, {FixedSlot{1}, ArithSlot{2, 1}}},
                    ConstantWeight{1.0}};
    const auto r = classify_structured(s, domain_profile(s));

    CHECK(r.is_lower_frame);
    CHECK(r.lower_frame_bound.value == doctest::Approx(1.0));
    CHECK_FALSE(r.is_bessel);
    CHECK(r.bessel_bound.infinite);
    CHECK_FALSE(r.is_riesz_fischer);
    CHECK(r.riesz_fischer_bound.value == 0.0);
    CHECK(r.is_complete);
    CHECK_FALSE(r.is_minimal);
}

TEST_CASE("structured: all-repeats family satisfies bounds only vacuously") {
    const StructuredSequence s = WeightedOnb{RoundRobinBlocks{}, ConstantWeight{1.0}};
    const auto r = classify_structured(s, domain_profile(s));

    CHECK(r.is_lower_frame);  // no finite mass: nothing to violate
    CHECK(r.lower_frame_bound.infinite);
    CHECK(r.bessel_bound.infinite);
    CHECK_FALSE(r.is_bessel);
    CHECK(r.is_complete);
    CHECK_FALSE(r.is_riesz_fischer);
    CHECK_FALSE(r.is_minimal);
}

TEST_CASE("structured: unit weights on the identity map form an exact frame") {
    const StructuredSequence s = WeightedOnb{IdentityMap{}, ConstantWeight{1.0}};
    const auto r = classify_structured(s, domain_profile(s));
    CHECK(r.is_frame);
    CHECK(r.lower_frame_bound.value == doctest::Approx(1.0));
    CHECK(r.bessel_bound.value == doctest::Approx(1.0));
    CHECK(r.is_riesz_basis);
    CHECK(r.is_minimal);
}

TEST_CASE("structured: decaying weights are minimal yet lose both lower bounds") {
    const StructuredSequence s = WeightedOnb{IdentityMap{}, ExpWeight{1.0, 0.5}};
    const auto r = classify_structured(s, domain_profile(s));
    CHECK_FALSE(r.is_lower_frame);
    CHECK(r.lower_frame_bound.value == 0.0);
    CHECK(r.is_bessel);
    CHECK(r.bessel_bound.value == doctest::Approx(0.25));
    CHECK_FALSE(r.is_riesz_fischer);  // weights sink to zero
    CHECK(r.is_minimal);              // yet no element is redundant
    CHECK(r.is_complete);
}

TEST_CASE("structured: anchored family comes back unresolved") {
    const StructuredSequence s = AnchoredOnb{1};
    const auto r = classify_structured(s, domain_profile(s));
    CHECK_FALSE(r.resolved);
    CHECK(r.provenance == Provenance::Analytic);
}

TEST_CASE("invertibility: shift embedding is bounded below but not surjective") {
    CMatrix shift = CMatrix::Zero(4, 3);
    for (int j = 0; j < 3; ++j) shift(j + 1, j) = 1.0;
    const auto v = invertibility(shift, Tolerance{});
    CHECK(v.bb);
    CHECK(v.bb_constant == doctest::Approx(1.0));
    CHECK(v.injective);
    CHECK_FALSE(v.surjective);
    CHECK(v.closed_range);
    CHECK(v.bir);
    CHECK_FALSE(v.bi);
}

TEST_CASE("invertibility: identity, projector, wide full-rank") {
    const auto id = invertibility(CMatrix::Identity(3, 3), Tolerance{});
    CHECK(id.bi);
    CHECK(id.bir);
    CHECK(id.bb_constant == doctest::Approx(1.0));

    CMatrix proj = CMatrix::Zero(2, 2);
    proj(0, 0) = 1.0;
    const auto p = invertibility(proj, Tolerance{});
    CHECK_FALSE(p.injective);
    CHECK_FALSE(p.surjective);
    CHECK(p.closed_range);
    CHECK_FALSE(p.bb);
    CHECK_FALSE(p.bir);

    CMatrix wide(2, 3);
    wide << Complex(1), Complex(0), Complex(1), Complex(0), Complex(1), Complex(1);
    const auto w = invertibility(wide, Tolerance{});
    CHECK(w.surjective);
    CHECK_FALSE(w.injective);
    CHECK_FALSE(w.bi);
}

TEST_CASE("invertibility collapses hold across the random population") {
    for (int c = 0; c < 150; ++c) {
        auto rng = testsupport::make_rng(0xabc000 + c);
        const int rows = 1 + static_cast<int>(rng() % 7);
        const int cols = 1 + static_cast<int>(rng() % 7);
        CMatrix m = testsupport::random_matrix(rows, cols, rng);
        if (c % 5 == 0 && cols > 1) m.col(cols - 1) = m.col(0);  // force a kernel

        const auto v = invertibility(m, Tolerance{});
        CHECK(v.bb == v.injective);
        CHECK(v.closed_range);
        CHECK(v.bir == v.injective);
        CHECK(v.bi == (v.injective && v.surjective));
        if (v.bb) CHECK(v.bb_constant > 0.0);
    }
}

TEST_CASE("classification routes agree with the invertibility taxonomy") {
    for (int c = 0; c < 80; ++c) {
        const auto s = testsupport::random_sequence(c + 2100);
        const auto b = assemble(s, Tolerance{});
        const auto r = classify_finite(b);
        const auto v = invertibility(b.synthesis, b.tol);
        // two independently computed renderings of the same facts
        CHECK(r.is_lower_frame == v.surjective);
        CHECK(r.is_riesz_fischer == v.injective);
        CHECK(r.is_riesz_basis == v.bi);
    }
}
