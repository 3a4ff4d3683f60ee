#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qloop/cartan.hpp"

#include <random>

using namespace qloop;

TEST_CASE("validate_cartan accepts the standard types") {
    auto a1 = validate_cartan({{2}}, {1}, {});
    CHECK(a1.t == 1);
    CHECK(a1.n == 1);

    auto a2 = validate_cartan({{2, -1}, {-1, 2}}, {1, 1}, {{0, 1}});
    CHECK(a2.t == 1);
    CHECK(a2.b(0, 1) == -1);
    CHECK(a2.oij(0, 1) == 1);
    CHECK(a2.oij(1, 0) == -1);

    auto b2 = validate_cartan({{2, -1}, {-2, 2}}, {2, 1}, {{0, 1}});
    CHECK(b2.t == 2);
    CHECK(b2.b(0, 1) == -2);
    CHECK(b2.b(1, 0) == -2);
}

TEST_CASE("validate_cartan rejects bad input") {
    CHECK_THROWS_AS(validate_cartan({{1}}, {1}, {}), NotCartan);
    CHECK_THROWS_AS(validate_cartan({{2, 1}, {1, 2}}, {1, 1}, {{0, 1}}), NotCartan);
    CHECK_THROWS_AS(validate_cartan({{2, -1}, {0, 2}}, {1, 1}, {{0, 1}}), NotCartan);
    CHECK_THROWS_AS(validate_cartan({{2, -1}, {-2, 2}}, {1, 1}, {{0, 1}}), NotSymmetrizable);
    CHECK_THROWS_AS(validate_cartan({{2, -1}, {-1, 2}}, {1, 1}, {}), BadOrientation);
    CHECK_THROWS_AS(validate_cartan({{2, -1}, {-1, 2}}, {1, 1}, {{0, 1}, {1, 0}}), BadOrientation);
}

TEST_CASE("presets") {
    auto b2 = cartan_preset("B2");
    CHECK(b2.c == std::vector<std::vector<int>>{{2, -1}, {-2, 2}});
    CHECK(b2.d == std::vector<int>{2, 1});
    auto g2 = cartan_preset("G2");
    CHECK(g2.t == 3);
    CHECK(g2.b(0, 1) == -3);
    auto d4 = cartan_preset("D4");
    CHECK(d4.t == 1);
    CHECK(d4.cij(1, 3) == -1);
    auto c3 = cartan_preset("C3");
    CHECK(c3.t == 2);
    CHECK(c3.d == std::vector<int>{1, 1, 2});
    CHECK_THROWS_AS(cartan_preset("E8billion"), NotCartan);
}

TEST_CASE("triple quiver degrees") {
    auto a1 = cartan_preset("A1");
    auto q1 = build_triple_quiver(a1, true);
    // arrows {a, a*, eps} with degrees {-1,-1,2}
    int na = 0, ns = 0, ne = 0;
    for (auto& a : q1.arrows) {
        if (a.kind == GradedQuiver::Kind::Fr) {
            CHECK(a.deg == -1);
            ++na;
        }
        if (a.kind == GradedQuiver::Kind::FrStar) {
            CHECK(a.deg == -1);
            ++ns;
        }
        if (a.kind == GradedQuiver::Kind::Eps) {
            CHECK(a.deg == 2);
            ++ne;
        }
    }
    CHECK(na == 1);
    CHECK(ns == 1);
    CHECK(ne == 1);

    auto a2 = build_triple_quiver(cartan_preset("A2"), false);
    int alphas = 0;
    for (auto& a : a2.arrows)
        if (a.kind == GradedQuiver::Kind::Alpha) {
            CHECK(a.deg == -1);
            ++alphas;
        }
    CHECK(alphas == 2);

    auto b2 = build_triple_quiver(cartan_preset("B2"), false);
    for (auto& a : b2.arrows) {
        if (a.kind == GradedQuiver::Kind::Eps) CHECK(a.deg == (a.i == 0 ? 4 : 2));
        if (a.kind == GradedQuiver::Kind::Alpha) CHECK(a.deg == -2);
    }
}

TEST_CASE("weight_shift examples") {
    auto a1 = cartan_preset("A1");
    // w = delta_{i,k}, v = delta_{i,k+1} -> -delta_{i,k+2}
    for (int k : {-1, 0, 3}) {
        auto r = weight_shift(GradedDimVector::delta(0, k), GradedDimVector::delta(0, k + 1), a1);
        CHECK(r == GradedDimVector::delta(0, k + 2, -1));
    }
    // v = 0 -> w
    auto a2 = cartan_preset("A2");
    GradedDimVector w;
    w.add(0, 0, 2);
    w.add(1, 5, 1);
    CHECK(weight_shift(w, {}, a2) == w);
    // A2: w = delta_{1,0}, v = delta_{1,1} -> -delta_{1,2} + delta_{2,1}
    auto r = weight_shift(GradedDimVector::delta(0, 0), GradedDimVector::delta(0, 1), a2);
    GradedDimVector expect;
    expect.add(0, 2, -1);
    expect.add(1, 1, 1);
    CHECK(r == expect);
}

TEST_CASE("weight_shift additivity") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> vx(0, 1), kk(-3, 3), mu(-2, 2);
    for (const char* name : {"A2", "B2", "G2"}) {
        auto cd = cartan_preset(name);
        for (int trial = 0; trial < 50; ++trial) {
            GradedDimVector w1, w2, v1, v2;
            for (int s = 0; s < 3; ++s) {
                w1.add(vx(rng), kk(rng), mu(rng));
                w2.add(vx(rng), kk(rng), mu(rng));
                v1.add(vx(rng), kk(rng), mu(rng));
                v2.add(vx(rng), kk(rng), mu(rng));
            }
            auto lhs = weight_shift(w1 + w2, v1 + v2, cd);
            auto rhs = weight_shift(w1, v1, cd) + weight_shift(w2, v2, cd);
            CHECK(lhs == rhs);
        }
    }
}
