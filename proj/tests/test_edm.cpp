#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "pennycdv/edm.hpp"
#include "pennycdv/errors.hpp"
#include "pennycdv/realization.hpp"

using namespace pennycdv;

namespace {

const TolerancePolicy kPolicy;

Realization points_of(std::vector<std::array<double, 2>> pts) {
    Realization r;
    r.name = "fixture";
    r.points = std::move(pts);
    return r;
}

Realization make(Family f, int n, int k = 0) {
    GenSpec spec;
    spec.family = f;
    spec.n = n;
    spec.k = k;
    return generate_realization(spec);
}

const Realization kSquare = points_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
const Realization kCollinear3 = points_of({{0, 0}, {1, 0}, {2, 0}});

}  // namespace

TEST_CASE("edm_from_points frozen matrices") {
    const Edm two = edm_from_points(points_of({{0, 0}, {1, 0}}));
    CHECK(two.d(0, 0) == 0.0);
    CHECK(two.d(0, 1) == 1.0);

    const Edm coll = edm_from_points(kCollinear3);
    CHECK(coll.d(0, 1) == 1.0);
    CHECK(coll.d(0, 2) == 4.0);
    CHECK(coll.d(1, 2) == 1.0);

    // strip off-diagonal multiset {1 x7, 3 x2, 4 x1}, exactly rational
    const Edm strip = edm_from_points(make(Family::LatticeStrip, 5));
    REQUIRE(strip.exact.has_value());
    std::map<double, int> multiset;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) {
            ++multiset[strip.d(i, j)];
            CHECK((*strip.exact)(i, j).b == 0);  // lattice distances are rational
        }
    CHECK(multiset == std::map<double, int>{{1.0, 7}, {3.0, 2}, {4.0, 1}});
}

TEST_CASE("validate_edm accepts realization EDMs with r <= 2") {
    CHECK(validate_edm(edm_from_points(kCollinear3).d, kPolicy) == 1);
    CHECK(validate_edm(edm_from_points(kSquare).d, kPolicy) == 2);
    for (int n = 3; n <= 24; ++n)
        for (Family f : {Family::PathArc, Family::CyclePolygon, Family::LatticeStrip}) {
            const int r = validate_edm(edm_from_points(make(f, n)).d, kPolicy);
            CHECK(r >= 1);
            CHECK(r <= 2);
        }
}

TEST_CASE("validate_edm rejections") {
    // diagonal violation rejected before the PSD test
    SymMatrix neg_diag(2);
    neg_diag.set(0, 1, 1.0);
    neg_diag.set(1, 1, -1.0);
    CHECK_THROWS_AS(validate_edm(neg_diag, kPolicy), NotAnEdmError);

    SymMatrix neg_off(2);
    neg_off.set(0, 1, -1.0);
    CHECK_THROWS_AS(validate_edm(neg_off, kPolicy), NotAnEdmError);

    // hollow symmetric but violates the triangle inequality badly
    auto fake = SymMatrix::from_rows({{0, 1, 10}, {1, 0, 1}, {10, 1, 0}});
    CHECK_THROWS_AS(validate_edm(fake, kPolicy), NotAnEdmError);
}

TEST_CASE("classify: pentagon, collinear, hexagon") {
    const EdmClassification pent = classify(edm_from_points(make(Family::CyclePolygon, 5)), kPolicy);
    CHECK(pent.kind == EdmKind::Spherical);
    CHECK(pent.embedding_dim == 2);
    CHECK(pent.rank_d == 3);
    const double rho_sq = 1.0 / (4.0 * std::pow(std::sin(M_PI / 5.0), 2));
    CHECK(pent.rho_sq == doctest::Approx(rho_sq).epsilon(1e-12));
    CHECK(pent.etw == doctest::Approx(1.0 / (2.0 * rho_sq)).epsilon(1e-12));

    const EdmClassification coll = classify(edm_from_points(kCollinear3), kPolicy);
    CHECK(coll.kind == EdmKind::Nonspherical);
    CHECK(coll.embedding_dim == 1);
    CHECK(coll.rank_d == 3);
    CHECK(std::abs(coll.etw) < 1e-12);

    const EdmClassification hex = classify(edm_from_points(make(Family::CyclePolygon, 6)), kPolicy);
    CHECK(hex.kind == EdmKind::Spherical);
    CHECK(hex.rho_sq == doctest::Approx(1.0));
    CHECK(hex.rank_d == 3);
}

TEST_CASE("classify handles the full-affine-span case r = n-1") {
    // two points: r = 1 = n-1, spherical with rho^2 = 1/4
    const EdmClassification two = classify(edm_from_points(points_of({{0, 0}, {1, 0}})), kPolicy);
    CHECK(two.kind == EdmKind::Spherical);
    CHECK(two.rho_sq == doctest::Approx(0.25));

    // unit triangle: r = 2 = n-1, rho^2 = 1/3
    const EdmClassification tri = classify(edm_from_points(make(Family::CyclePolygon, 3)), kPolicy);
    CHECK(tri.kind == EdmKind::Spherical);
    CHECK(tri.rho_sq == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("classification cross-check holds on every generated family, n = 3..40") {
    for (int n = 3; n <= 40; ++n) {
        for (Family f : {Family::PathArc, Family::PathCollinear, Family::UnionPathsArc,
                         Family::CyclePolygon, Family::LatticeStrip}) {
            const EdmClassification cls = classify(edm_from_points(make(f, n)), kPolicy);
            // rank dichotomy of the two theorems, asserted per instance
            const int delta = cls.rank_d - cls.embedding_dim;
            CHECK((delta == 1 || delta == 2));
            CHECK(cls.solve_residual <= cls.rank_decision.tau);
        }
    }
    for (int k = 4; k <= 6; ++k) {
        const EdmClassification cls =
            classify(edm_from_points(make(Family::Flower, 0, k)), kPolicy);
        CHECK(cls.kind == EdmKind::Nonspherical);  // center plus rim is never concyclic
        CHECK(cls.rank_d == cls.embedding_dim + 2);
    }
}

TEST_CASE("beta_psd_check at the extremal shift") {
    // unit square, rho^2 = 1/2: E - D is PSD, 0.999 E - D is not
    const Edm square = edm_from_points(kSquare);
    const EdmClassification sq_cls = classify(square, kPolicy);
    CHECK(sq_cls.rho_sq == doctest::Approx(0.5));
    CHECK(beta_psd_check(square.d, sq_cls, kPolicy));

    const Edm pent = edm_from_points(make(Family::CyclePolygon, 5));
    CHECK(beta_psd_check(pent.d, classify(pent, kPolicy), kPolicy));

    const Edm two = edm_from_points(points_of({{0, 0}, {1, 0}}));
    CHECK(beta_psd_check(two.d, classify(two, kPolicy), kPolicy));

    // nonspherical input is a caller error
    const Edm coll = edm_from_points(kCollinear3);
    CHECK_THROWS_AS(beta_psd_check(coll.d, classify(coll, kPolicy), kPolicy), ParameterError);
}

TEST_CASE("nullspace_relation: equality and the rho^2 = 1/2 boundary") {
    // pentagon: null(M) = null(D), both of dimension 2
    const auto pent = nullspace_relation(edm_from_points(make(Family::CyclePolygon, 5)).d, kPolicy);
    CHECK(pent.dim_null_d == 2);
    CHECK(pent.dim_null_m == 2);
    CHECK(pent.equal);
    CHECK(pent.expected_equal);
    CHECK(pent.max_projection_residual <= 1e-9);

    // unit square sits exactly on the excluded boundary: strict inclusion
    const auto sq = nullspace_relation(edm_from_points(kSquare).d, kPolicy);
    CHECK(sq.dim_null_d == 1);
    CHECK(sq.dim_null_m == 2);
    CHECK(sq.d_in_m);
    CHECK_FALSE(sq.equal);
    CHECK_FALSE(sq.expected_equal);

    // nonspherical strip: equality via the r+2 route
    const auto strip = nullspace_relation(edm_from_points(make(Family::LatticeStrip, 5)).d, kPolicy);
    CHECK(strip.dim_null_d == 1);
    CHECK(strip.dim_null_m == 1);
    CHECK(strip.equal);
}

TEST_CASE("null(D) is contained in null(M) unconditionally") {
    for (int n = 5; n <= 30; n += 5)
        for (Family f : {Family::PathArc, Family::CyclePolygon, Family::LatticeStrip,
                         Family::PathCollinear}) {
            const auto rel = nullspace_relation(edm_from_points(make(f, n)).d, kPolicy);
            CHECK(rel.d_in_m);
            CHECK(rel.equal == rel.expected_equal);
        }
}

TEST_CASE("three_columns_independent") {
    const Edm coll = edm_from_points(kCollinear3);
    CHECK(three_columns_independent(coll, 0, 1, 2, kPolicy));

    // all C(5,3) = 10 triples of the pentagon EDM
    const Edm pent = edm_from_points(make(Family::CyclePolygon, 5));
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            for (int k = j + 1; k < 5; ++k) CHECK(three_columns_independent(pent, i, j, k, kPolicy));

    // exact route on the strip
    const Edm strip = edm_from_points(make(Family::LatticeStrip, 6));
    REQUIRE(strip.exact.has_value());
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            for (int k = j + 1; k < 6; ++k)
                CHECK(three_columns_independent(strip, i, j, k, kPolicy));

    // coincident points violate the positive off-diagonal hypothesis
    SymMatrix dup(3);
    dup.set(0, 1, 0.0);
    dup.set(0, 2, 1.0);
    dup.set(1, 2, 1.0);
    Edm dup_edm;
    dup_edm.d = dup;
    CHECK_THROWS_AS(three_columns_independent(dup_edm, 0, 1, 2, kPolicy), ParameterError);

    CHECK_THROWS_AS(three_columns_independent(coll, 0, 1, 1, kPolicy), ParameterError);
}

TEST_CASE("householder basis is orthonormal and spans the complement of e") {
    for (int n : {2, 3, 7, 20}) {
        const Matrix v = householder_complement_basis(n);
        REQUIRE(v.cols() == n - 1);
        for (int a = 0; a < n - 1; ++a) {
            double se = 0.0;
            for (int i = 0; i < n; ++i) se += v(i, a);
            CHECK(std::abs(se) < 1e-12);  // orthogonal to e
            for (int b = a; b < n - 1; ++b) {
                double s = 0.0;
                for (int i = 0; i < n; ++i) s += v(i, a) * v(i, b);
                CHECK(std::abs(s - (a == b ? 1.0 : 0.0)) < 1e-12);
            }
        }
    }
}
