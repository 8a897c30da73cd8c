#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "pennycdv/errors.hpp"
#include "pennycdv/graph.hpp"
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

std::set<std::pair<int, int>> edge_set(const Graph& g) {
    const auto e = g.edges();
    return {e.begin(), e.end()};
}

}  // namespace

TEST_CASE("contact_graph pairwise cases") {
    CHECK(contact_graph(points_of({{0, 0}, {1, 0}}), kPolicy).edge_count() == 1);
    CHECK(contact_graph(points_of({{0, 0}, {2, 0}}), kPolicy).edge_count() == 0);
}

TEST_CASE("contact_graph of the 5-point triangular strip") {
    const Realization strip = make(Family::LatticeStrip, 5);
    // matches the frozen coordinates (0,0),(1,0),(2,0),(1/2,rt3/2),(3/2,rt3/2)
    CHECK(strip.points[2][0] == doctest::Approx(2.0));
    CHECK(strip.points[3][0] == doctest::Approx(0.5));
    CHECK(strip.points[4][1] == doctest::Approx(std::sqrt(3.0) / 2.0));

    const Graph g = contact_graph(strip, kPolicy);
    const std::set<std::pair<int, int>> expected = {{0, 1}, {1, 2}, {3, 4}, {0, 3},
                                                    {1, 3}, {1, 4}, {2, 4}};
    CHECK(edge_set(g) == expected);
}

TEST_CASE("packing violations carry the offending pair") {
    const Realization bad = points_of({{0, 0}, {0.5, 0}, {5, 5}});
    try {
        validate_packing(bad, kPolicy);
        FAIL("expected PackingError");
    } catch (const PackingError& e) {
        CHECK(e.i == 0);
        CHECK(e.j == 1);
    }
    CHECK_THROWS_AS(contact_graph(bad, kPolicy), PackingError);
}

TEST_CASE("contact dead zone is reported, not silently classified") {
    // squared distance 1 + 5e-9: too far for contact, close enough to warn
    const double x = std::sqrt(1.0 + 5e-9);
    const Realization r = points_of({{0, 0}, {x, 0}});
    ContactReport report;
    const Graph g = contact_graph(r, kPolicy, &report);
    CHECK(g.edge_count() == 0);
    REQUIRE(report.dead_zone_pairs.size() == 1);
    CHECK(report.dead_zone_pairs[0] == std::pair<int, int>{0, 1});

    // clearly separated pair produces no warning
    ContactReport quiet;
    contact_graph(points_of({{0, 0}, {1.5, 0}}), kPolicy, &quiet);
    CHECK(quiet.dead_zone_pairs.empty());
}

TEST_CASE("cycle generator builds the regular polygon") {
    const Realization hex = make(Family::CyclePolygon, 6);
    for (const auto& p : hex.points)
        CHECK(std::hypot(p[0], p[1]) == doctest::Approx(1.0));  // circumradius exactly 1
    const Graph g = contact_graph(hex, kPolicy);
    CHECK(classify_family(g) == GraphFamily::Cycle);
    CHECK(g.edge_count() == 6);

    CHECK_THROWS_AS(make(Family::CyclePolygon, 2), ParameterError);
}

TEST_CASE("flower generator realizes the three kissing configurations") {
    const Realization f4 = make(Family::Flower, 0, 4);
    REQUIRE(f4.size() == 5);
    const Graph g4 = contact_graph(f4, kPolicy);
    CHECK(g4.degree(0) == 4);
    CHECK(g4.edge_count() == 4);  // star: petals sit sqrt(2) apart

    const Realization f5 = make(Family::Flower, 0, 5);
    const Graph g5 = contact_graph(f5, kPolicy);
    CHECK(g5.degree(0) == 5);
    CHECK(g5.edge_count() == 5);

    const Realization f6 = make(Family::Flower, 0, 6);
    const Graph g6 = contact_graph(f6, kPolicy);
    CHECK(g6.degree(0) == 6);
    CHECK(g6.edge_count() == 12);  // six spokes plus six rim contacts

    CHECK_THROWS_AS(make(Family::Flower, 0, 3), ParameterError);
    CHECK_THROWS_AS(make(Family::Flower, 0, 7), ParameterError);
    CHECK_THROWS_AS(make(Family::Flower, 6, 4), ParameterError);  // n != k + 1
}

TEST_CASE("path and union generators touch consecutively only") {
    const Realization arc = make(Family::PathArc, 9);
    const Graph g = contact_graph(arc, kPolicy);
    CHECK(classify_family(g) == GraphFamily::Path);
    CHECK(g.edge_count() == 8);

    const Realization uni = make(Family::UnionPathsArc, 7);
    const Graph gu = contact_graph(uni, kPolicy);
    CHECK(classify_family(gu) == GraphFamily::UnionOfPaths);
    CHECK(connected_components(gu).size() == 2);
    CHECK(gu.edge_count() == 5);

    GenSpec three;
    three.family = Family::UnionPathsArc;
    three.n = 9;
    three.segments = 3;
    const Graph g3 = contact_graph(generate_realization(three), kPolicy);
    CHECK(connected_components(g3).size() == 3);

    CHECK_THROWS_AS(make(Family::UnionPathsArc, 1), ParameterError);
}

TEST_CASE("circumcircle_classify on closed-form fixtures") {
    // regular pentagon of side 1: rho^2 = 1/(4 sin^2(pi/5))
    const Realization pent = make(Family::CyclePolygon, 5);
    const auto pr = circumcircle_classify(pent, kPolicy);
    CHECK(pr.concyclic);
    const double expected = 1.0 / (4.0 * std::pow(std::sin(M_PI / 5.0), 2));
    CHECK(pr.radius_sq == doctest::Approx(expected).epsilon(1e-12));
    CHECK(pr.radius_sq == doctest::Approx(0.7236068).epsilon(1e-6));

    // collinear points cannot be concyclic
    const auto cr = circumcircle_classify(make(Family::PathCollinear, 5), kPolicy);
    CHECK_FALSE(cr.concyclic);
    CHECK(cr.degenerate_fit);

    // unit square corners: diagonal sqrt(2), circumradius sqrt(2)/2
    const auto sr =
        circumcircle_classify(points_of({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), kPolicy);
    CHECK(sr.concyclic);
    CHECK(sr.radius_sq == doctest::Approx(0.5));

    CHECK_THROWS_AS(circumcircle_classify(points_of({{0, 0}, {1, 0}}), kPolicy),
                    ParameterError);
}

TEST_CASE("concyclicity matches family expectations") {
    for (int n = 5; n <= 40; ++n) {
        CHECK(circumcircle_classify(make(Family::PathArc, n), kPolicy).concyclic);
        CHECK(circumcircle_classify(make(Family::UnionPathsArc, n), kPolicy).concyclic);
        CHECK(circumcircle_classify(make(Family::CyclePolygon, n), kPolicy).concyclic);
        CHECK_FALSE(circumcircle_classify(make(Family::PathCollinear, n), kPolicy).concyclic);
        CHECK_FALSE(circumcircle_classify(make(Family::LatticeStrip, n), kPolicy).concyclic);
    }
}

TEST_CASE("harborth_bound values") {
    CHECK(harborth_bound(1) == 0);
    CHECK(harborth_bound(2) == 1);   // two disks touch at most once
    CHECK(harborth_bound(3) == 3);   // the touching triangle achieves it
    CHECK(harborth_bound(7) == 12);  // sqrt(81) = 9 exactly; wheel achieves it
    CHECK(harborth_bound(37) == 90); // 12n-3 = 441 = 21^2, exact again
    CHECK_THROWS_AS(harborth_bound(0), ParameterError);
}

TEST_CASE("generator outputs satisfy packing and the edge bound") {
    for (int n = 5; n <= 40; ++n) {
        for (Family f : {Family::PathArc, Family::PathCollinear, Family::UnionPathsArc,
                         Family::CyclePolygon, Family::LatticeStrip}) {
            const Realization r = make(f, n);
            validate_packing(r, kPolicy);
            ContactReport report;
            const Graph g = contact_graph(r, kPolicy, &report);
            CHECK(report.dead_zone_pairs.empty());
            CHECK(g.edge_count() <= harborth_bound(n));
        }
    }
    for (int k = 4; k <= 6; ++k) {
        const Realization r = make(Family::Flower, 0, k);
        validate_packing(r, kPolicy);
        CHECK(contact_graph(r, kPolicy).edge_count() <= harborth_bound(k + 1));
    }
}

TEST_CASE("realization JSON round-trips bit-exactly") {
    for (const Realization& r :
         {make(Family::LatticeStrip, 7), make(Family::PathArc, 6), make(Family::Flower, 0, 5)}) {
        std::stringstream buf;
        write_realization(r, buf);
        const Realization back = read_realization(buf);
        CHECK(back.name == r.name);
        REQUIRE(back.size() == r.size());
        for (int i = 0; i < r.size(); ++i) {
            CHECK(back.points[i][0] == r.points[i][0]);  // bitwise
            CHECK(back.points[i][1] == r.points[i][1]);
        }
        CHECK(back.exact.has_value() == r.exact.has_value());
        if (r.exact)
            for (int i = 0; i < r.size(); ++i) {
                CHECK((*back.exact)[i][0] == (*r.exact)[i][0]);
                CHECK((*back.exact)[i][1] == (*r.exact)[i][1]);
            }
    }
}

TEST_CASE("realization reader rejects malformed input") {
    auto parse = [](const std::string& text) {
        std::stringstream buf(text);
        return read_realization(buf);
    };
    CHECK_THROWS_AS(parse("not json"), IoError);
    CHECK_THROWS_AS(parse("{\"name\": \"x\"}"), IoError);
    CHECK_THROWS_AS(parse("{\"points\": [[0, 0], [1]]}"), IoError);
    CHECK_THROWS_AS(parse("{\"points\": []}"), IoError);
    // exact list must reproduce the floating coordinates
    CHECK_THROWS_AS(
        parse("{\"points\": [[0,0]], \"exact\": [[{\"a_num\":\"7\",\"a_den\":\"1\","
              "\"b_num\":\"0\",\"b_den\":\"1\"}, {\"a_num\":\"0\",\"a_den\":\"1\","
              "\"b_num\":\"0\",\"b_den\":\"1\"}]]}"),
        IoError);
}

TEST_CASE("generated strips carry faithful exact coordinates") {
    for (int n : {5, 12, 31}) {
        const Realization r = make(Family::LatticeStrip, n);
        REQUIRE(r.exact.has_value());
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs((*r.exact)[i][0].to_double() - r.points[i][0]) <= 1e-15);
            CHECK(std::abs((*r.exact)[i][1].to_double() - r.points[i][1]) <= 1e-15);
        }
    }
}
