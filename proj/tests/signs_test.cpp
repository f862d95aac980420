#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "homsign/oracle.hpp"
#include "homsign/signs.hpp"

using namespace homsign;

namespace {

const std::vector<std::string> X2{"x1", "x2"};

QPoly from_roots(const std::vector<Rational>& roots) {
    QPoly p{Rational(1)};
    for (const auto& r : roots) p = p * QPoly{Rational(-r), Rational(1)};
    return p;
}

SamplePointSet point_set(std::size_t n, std::vector<GeometricResolution> rs) {
    SamplePointSet pts;
    pts.n = n;
    pts.M = QMatrix::identity(n, Rational(0));
    pts.p = std::vector<Rational>(n);
    for (auto& r : rs) pts.resolutions.push_back({std::move(r), {}});
    return pts;
}

// The circle's intersections with x2 = 0 and x2 = 2, and the origin.
SamplePointSet circle_points() {
    GeometricResolution on{from_roots({-1, 1}), QPoly{Rational(1)}, {variable_poly(), QPoly{}}};
    GeometricResolution off{poly_from_ints({-5, 0, 1}), QPoly{Rational(1)}, {variable_poly(), QPoly{Rational(2)}}};
    return point_set(2, {on, off, point_resolution({Rational(0), Rational(0)})});
}

}  // namespace

TEST(RealRoots, SignsAtRootsExamples) {
    EXPECT_EQ(signs_at_roots(poly_from_ints({-2, 0, 1}), variable_poly()), (std::vector<int>{-1, 1}));
    EXPECT_TRUE(signs_at_roots(poly_from_ints({1, 0, 1}), variable_poly()).empty());
    EXPECT_EQ(signs_at_roots(from_roots({0, 3}), variable_poly()), (std::vector<int>{0, 1}));
}

TEST(RealRoots, RationalRootsAgainstDirectEvaluation) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> roots;
        const int k = 1 + static_cast<int>(rng() % 6);
        while (static_cast<int>(roots.size()) < k) {
            const Rational r = make_rational(static_cast<long>(rng() % 81) - 40, 1 + static_cast<long>(rng() % 6));
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end());
        // an irreducible quadratic factor adds no real roots
        const QPoly q = from_roots(roots) * poly_from_ints({3, 1, 1});
        const auto ivs = isolate_real_roots(q);
        ASSERT_EQ(ivs.size(), roots.size());
        for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_TRUE(ivs[i].lo <= roots[i] && roots[i] <= ivs[i].hi);
        QPoly g;
        for (int i = 0; i < 4; ++i) g += QPoly::monomial(Rational(static_cast<long>(rng() % 9) - 4), i);
        std::vector<int> expect;
        for (const auto& r : roots) expect.push_back(sgn(g(r)));
        EXPECT_EQ(signs_at_roots(q, g), expect);
    }
}

TEST(RealRoots, RefineShrinksAndKeepsRoot) {
    const QPoly q = poly_from_ints({-2, 0, 1});
    for (auto iv : isolate_real_roots(q)) {
        iv = refine(q, iv, make_rational(1, 1000));
        EXPECT_LE(iv.width(), make_rational(1, 1000));
        EXPECT_EQ(sgn(q(iv.lo)) * sgn(q(iv.hi)) <= 0, true);
    }
}

TEST(DualPath, AgreesOnRandomResolutions) {
    std::mt19937_64 rng(8);
    const Slp f = parse_system({"x1^2 + x2^2 - 4", "x1*x2 - 1", "x1 - x2"}, X2);
    for (int trial = 0; trial < 30; ++trial) {
        const int deg = 1 + static_cast<int>(rng() % 7);
        QPoly q;
        do {
            q = QPoly::monomial(Rational(1), deg);
            for (int i = 0; i < deg; ++i) q += QPoly::monomial(Rational(static_cast<long>(rng() % 21) - 10), i);
        } while (!is_squarefree(q));
        GeometricResolution r{q, QPoly{Rational(1)}, {}};
        for (int k = 0; k < 2; ++k) {
            QPoly w;
            for (int i = 0; i < deg; ++i) w += QPoly::monomial(make_rational(static_cast<long>(rng() % 7) - 3, 2), i);
            r.w.push_back(w);
        }
        EXPECT_NO_THROW(verify_point_signs(r, f));
        EXPECT_EQ(descartes_isolate(q).size(), isolate_real_roots(q).size());
    }
}

TEST(DualPath, ZeroSignsAgree) {
    // every polynomial vanishes at (1, 1) and (-1, -1)
    const Slp f = parse_system({"x1^2 - 1", "x1 - x2"}, X2);
    GeometricResolution r{from_roots({-1, 1}), QPoly{Rational(1)}, {variable_poly(), variable_poly()}};
    const auto s = verify_point_signs(r, f);
    EXPECT_EQ(s, (std::vector<std::vector<int>>{{0, 0}, {0, 0}}));
}

TEST(ComposeMod, MatchesRemainder) {
    const Slp f = parse("x1^3 - x2", X2);
    GeometricResolution r{poly_from_ints({-2, 0, 0, 1}), QPoly{Rational(1)}, {variable_poly(), poly_from_ints({1, 1})}};
    const QPoly U = variable_poly();
    EXPECT_EQ(compose_mod(f, r)[0], rem(U * U * U - poly_from_ints({1, 1}), r.q));
}

TEST(Render, StrictAndClosed) {
    EXPECT_EQ(render({-1, 0, 1}, ConditionKind::Strict), "-,0,+");
    EXPECT_EQ(render({-1, 0, 1}, ConditionKind::Closed), "-0,0,0+");
    EXPECT_EQ(parse_signs("-0,0,0+", ConditionKind::Closed), (std::vector<int>{-1, 0, 1}));
    EXPECT_EQ(parse_signs("+", ConditionKind::Strict), std::vector<int>{1});
    EXPECT_THROW(parse_signs("-,0+", ConditionKind::Strict), std::invalid_argument);
}

TEST(Conditions, ClosedVectorsOfAZero) {
    EXPECT_EQ(closed_vectors({0, 1}), (std::vector<std::vector<int>>{{-1, 1}, {0, 1}, {1, 1}}));
    EXPECT_EQ(closed_vectors({-1}), std::vector<std::vector<int>>{{-1}});
}

TEST(Conditions, ExpandEqualities) {
    SignCondition c{ConditionKind::Strict, {0, 1}, false, {Witness{0, 0, {}}}};
    const auto all = expand_equalities({c});
    ASSERT_EQ(all.size(), 3u);
    EXPECT_EQ(all[0].signs, (std::vector<int>{-1, 1}));
    EXPECT_TRUE(all[0].derived);
    EXPECT_EQ(all[1], c);
    EXPECT_EQ(all[2].signs, (std::vector<int>{1, 1}));
    EXPECT_TRUE(all[2].derived);
}

TEST(Conditions, CircleStrictAndClosed) {
    const Slp f = parse("x1^2 + x2^2 - 1", X2);
    const auto pts = circle_points();
    const auto strict = list_conditions(pts, f, ConditionKind::Strict);
    ASSERT_EQ(strict.size(), 3u);
    EXPECT_EQ(strict[0].signs, std::vector<int>{-1});
    EXPECT_EQ(strict[1].witnesses.size(), 2u);
    const auto closed = list_conditions(pts, f, ConditionKind::Closed);
    ASSERT_EQ(closed.size(), 3u);
    // a point on the circle satisfies all three closed conditions
    for (const auto& c : closed)
        EXPECT_TRUE(std::any_of(c.witnesses.begin(), c.witnesses.end(), [](const Witness& w) { return w.resolution == 0; }));
}

TEST(Conditions, WitnessesRealizeTheirConditions) {
    const Slp f = parse_system({"x1^2 + x2^2 - 1", "x2 - 1"}, X2);
    const auto pts = circle_points();
    for (auto kind : {ConditionKind::Strict, ConditionKind::Closed})
        for (const auto& c : list_conditions(pts, f, kind, true))
            for (const auto& w : c.witnesses) EXPECT_TRUE(witness_realizes(witness_signs(pts, f, w), c)) << render(c.signs, kind);
}

TEST(Conditions, PerturbationFindsNeighbours) {
    // only points on the circle; perturbing them reaches both sides
    GeometricResolution on{from_roots({-1, 1}), QPoly{Rational(1)}, {variable_poly(), QPoly{}}};
    const auto pts = point_set(2, {on});
    const Slp f = parse("x1^2 + x2^2 - 1", X2);
    const auto plain = list_conditions(pts, f, ConditionKind::Strict);
    ASSERT_EQ(plain.size(), 1u);
    const auto near = list_conditions(pts, f, ConditionKind::Strict, true);
    ASSERT_EQ(near.size(), 3u);
    for (const auto& c : near)
        for (const auto& w : c.witnesses) {
            if (w.point.empty()) continue;
            std::vector<int> s;
            for (const auto& v : eval(f, w.point, Rational(0))) s.push_back(sgn(v));
            EXPECT_EQ(s, c.signs);
        }
}
