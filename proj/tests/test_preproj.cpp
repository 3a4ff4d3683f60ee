#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qloop/preproj.hpp"

using namespace qloop;

namespace {
GradedDimVector dims_of(const GradedModule& m) { return m.dim_vector(); }
}

TEST_CASE("A1 cyclic quotients are eps chains") {
    auto a1 = cartan_preset("A1");
    auto m1 = build_cyclic_quotient(0, 1, a1);
    CHECK(m1.total_dim() == 1);
    CHECK(m1.dim(0, 0) == 1);
    CHECK(m1.action(ModArrow::eps(0), 0, 0).is_zero());
    CHECK(verify_module(m1).ok);

    auto m2 = build_cyclic_quotient(0, 2, a1);
    CHECK(m2.total_dim() == 2);
    CHECK(m2.dim(0, 0) == 1);
    CHECK(m2.dim(0, 2) == 1);
    auto e = m2.action(ModArrow::eps(0), 0, 0);
    REQUIRE(e.rows == 1);
    REQUIRE(e.cols == 1);
    CHECK(e.at(0, 0) == 1);
    CHECK(verify_module(m2).ok);

    for (int l = 1; l <= 4; ++l) CHECK(build_cyclic_quotient(0, l, a1).total_dim() == l);
}

TEST_CASE("A2 projective quotient at l=1") {
    auto a2 = cartan_preset("A2");
    auto m = build_cyclic_quotient(0, 1, a2);
    GradedDimVector expect;
    expect.add(0, 0, 1);
    expect.add(1, -1, 1);
    CHECK(dims_of(m) == expect);
    CHECK(verify_module(m).ok);
}

TEST_CASE("K modules in type A1") {
    auto a1 = cartan_preset("A1");
    // K_{i,k,1} is one-dimensional in degree (i,k+1)
    for (int k : {-2, 0, 5}) {
        auto K = build_kirillov_module(0, k, 1, a1);
        CHECK(K.total_dim() == 1);
        CHECK(K.dim(0, k + 1) == 1);
        CHECK(verify_module(K).ok);
    }
    // K_{i,k,2}: dims delta_{k} + delta_{k+2}, eps invertible from k to k+2
    auto K2 = build_kirillov_module(0, 0, 2, a1);
    CHECK(K2.dim(0, 0) == 1);
    CHECK(K2.dim(0, 2) == 1);
    auto e = K2.action(ModArrow::eps(0), 0, 0);
    CHECK(e.at(0, 0) != 0);
    CHECK(verify_module(K2).ok);
    // top degree k + l d_i always present (cogenerator degree)
    for (int l = 1; l <= 4; ++l) {
        auto K = build_kirillov_module(0, 3, l, a1);
        CHECK(K.dim(0, 3 + l) == 1);
        CHECK(K.total_dim() == l);
    }
}

TEST_CASE("double dual with zero shift is the original") {
    for (const char* name : {"A1", "A2", "B2"}) {
        auto cd = cartan_preset(name);
        auto m = build_cyclic_quotient(0, 2, cd);
        auto dd = dualize_shift(dualize_shift(m, 0), 0);
        CHECK(dims_of(dd) == dims_of(m));
        CHECK(verify_module(dd).ok);
    }
}

TEST_CASE("dualize preserves total dimension and reverses degrees") {
    auto b2 = cartan_preset("B2");
    auto m = build_cyclic_quotient(0, 1, b2);
    auto d = dualize_shift(m, -5);
    CHECK(d.total_dim() == m.total_dim());
    for (auto& kv : m.dims) CHECK(d.dim(kv.first.first, -kv.first.second + 5) == kv.second);
    CHECK(verify_module(d).ok);
}

TEST_CASE("A2 fundamental K module") {
    auto a2 = cartan_preset("A2");
    auto K = build_kirillov_module(0, 0, 1, a2);
    GradedDimVector expect;
    expect.add(0, 1, 1);  // cogenerator degree (1, k + l d_i)
    expect.add(1, 2, 1);
    CHECK(dims_of(K) == expect);
    CHECK(verify_module(K).ok);
}

TEST_CASE("B2 fundamental K modules verify") {
    auto b2 = cartan_preset("B2");
    auto K1 = build_kirillov_module(0, 0, 1, b2);
    CHECK(verify_module(K1).ok);
    CHECK(K1.dim(0, 2) == 1);  // cogenerator at (1, 0 + 1*d_1) = (1,2)
    auto K2 = build_kirillov_module(1, 0, 1, b2);
    CHECK(verify_module(K2).ok);
    CHECK(K2.dim(1, 1) == 1);
    // mixed relation eps_1^{-c_12} alpha_12 = alpha_12 eps_2^{-c_21} holds by
    // verify_module above; pin the dimension tables operationally
    CHECK(K1.total_dim() == 4);
    GradedDimVector e1;
    e1.add(0, 2, 1);
    e1.add(1, 2, 1);
    e1.add(1, 4, 1);
    e1.add(0, 4, 1);
    CHECK(dims_of(K1) == e1);
}

TEST_CASE("grading violation is reported") {
    auto a1 = cartan_preset("A1");
    auto m = build_cyclic_quotient(0, 2, a1);
    // move the eps action to a wrong slot
    auto bad = m;
    auto mat = bad.act[ModArrow::eps(0)][{0, 0}];
    bad.act[ModArrow::eps(0)].erase({0, 0});
    bad.act[ModArrow::eps(0)][{0, 2}] = mat;  // shape no longer matches grading
    auto rep = verify_module(bad);
    CHECK(!rep.ok);
    REQUIRE(!rep.failures.empty());
    CHECK(rep.failures[0].find("grading") != std::string::npos);
}

TEST_CASE("injective truncations") {
    auto a1 = cartan_preset("A1");
    // depth 3: three-dimensional eps chain with socle at (i, k+1)
    auto i3 = build_injective_trunc(0, 0, 3, a1);
    CHECK(i3.total_dim() == 3);
    CHECK(i3.dim(0, 1) == 1);
    CHECK(i3.dim(0, -1) == 1);
    CHECK(i3.dim(0, -3) == 1);
    CHECK(verify_module(i3).ok);
    // monotone in depth on shared degrees
    for (int d = 1; d <= 3; ++d) {
        auto a = build_injective_trunc(0, 2, d, a1);
        auto b = build_injective_trunc(0, 2, d + 1, a1);
        for (auto& kv : a.dims) CHECK(b.dim(kv.first.first, kv.first.second) >= kv.second);
    }
    // matches the Kirillov-Reshetikhin source in type A1
    for (int d = 1; d <= 3; ++d) {
        auto a = build_injective_trunc(0, 0, d, a1);
        auto K = build_kirillov_module(0, -(d - 1), d, a1);
        CHECK(dims_of(a) == dims_of(K));
    }
    // depth 1 in other types: dual of the first omega layer
    auto b2 = cartan_preset("B2");
    auto ib = build_injective_trunc(0, 0, 1, b2);
    CHECK(verify_module(ib).ok);
    CHECK(ib.dim(0, 2) == 1);
}

TEST_CASE("direct sums verify") {
    auto a2 = cartan_preset("A2");
    auto K1 = build_kirillov_module(0, 0, 1, a2);
    auto K2 = build_kirillov_module(1, 1, 1, a2);
    auto s = direct_sum(K1, K2);
    CHECK(s.total_dim() == K1.total_dim() + K2.total_dim());
    CHECK(verify_module(s).ok);
}

TEST_CASE("module dump is valid-looking JSON") {
    auto a1 = cartan_preset("A1");
    auto m = build_cyclic_quotient(0, 2, a1);
    auto d = m.dump();
    CHECK(d.find("\"dims\"") != std::string::npos);
    CHECK(d.find("eps[1]") != std::string::npos);
}
