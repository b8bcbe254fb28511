#include <random>

#include "doctest.h"
#include "gpmood/stencil.hpp"

using namespace gpmood;

TEST_CASE("diamond and cross stencil sizes") {
    CHECK(build_stencil(2, 1, StencilShape::diamond).n == 5);
    CHECK(build_stencil(2, 2, StencilShape::diamond).n == 13);
    CHECK(build_stencil(2, 3, StencilShape::diamond).n == 25);
    CHECK(build_stencil(2, 2, StencilShape::cross).n == 9);
    CHECK(build_stencil(2, 3, StencilShape::cross).n == 13);
    CHECK(build_stencil(1, 1, StencilShape::diamond).n == 3);
    CHECK(build_stencil(1, 3, StencilShape::diamond).n == 7);
    CHECK_THROWS(build_stencil(2, 4, StencilShape::diamond));
}

TEST_CASE("canonical 5-point labeling: center, W, N, E, S") {
    auto s = build_stencil(2, 1, StencilShape::diamond);
    CHECK(s.offsets[0] == Offset{0, 0});
    CHECK(s.offsets[1] == Offset{-1, 0});
    CHECK(s.offsets[2] == Offset{0, 1});
    CHECK(s.offsets[3] == Offset{1, 0});
    CHECK(s.offsets[4] == Offset{0, -1});
}

TEST_CASE("center appears exactly once, at the first slot") {
    for (auto shape : {StencilShape::diamond, StencilShape::cross}) {
        for (int r = 1; r <= 3; ++r) {
            auto s = build_stencil(2, r, shape);
            int count = 0;
            for (const auto& o : s.offsets)
                if (o == Offset{0, 0}) ++count;
            CHECK(count == 1);
            CHECK(s.offsets[0] == Offset{0, 0});
        }
    }
}

TEST_CASE("mirror permutations are involutions mapping offsets correctly") {
    for (auto shape : {StencilShape::diamond, StencilShape::cross}) {
        for (int r = 1; r <= 3; ++r) {
            auto s = build_stencil(2, r, shape);
            for (int k = 0; k < s.n; ++k) {
                CHECK(s.offsets[s.perm_mirror_x[k]] == Offset{-s.offsets[k].di, s.offsets[k].dj});
                CHECK(s.offsets[s.perm_mirror_y[k]] == Offset{s.offsets[k].di, -s.offsets[k].dj});
                CHECK(s.offsets[s.perm_swap[k]] == Offset{s.offsets[k].dj, s.offsets[k].di});
                CHECK(s.perm_mirror_x[s.perm_mirror_x[k]] == k);
            }
        }
    }
}

TEST_CASE("sum plan is bit-invariant under mirror and transpose permutations") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> dist(-3.0, 7.0);
    auto check = [&](const StencilGeometry& s) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> t(s.n);
            for (auto& v : t) v = dist(rng);
            double base = s.plan.reduce(t.data());
            auto permuted_reduce = [&](const std::vector<int>& perm) {
                std::vector<double> tp(s.n);
                for (int k = 0; k < s.n; ++k) tp[k] = t[perm[k]];
                return s.plan.reduce(tp.data());
            };
            CHECK(permuted_reduce(s.perm_mirror_x) == base);
            CHECK(permuted_reduce(s.perm_mirror_y) == base);
            if (!s.perm_swap.empty()) CHECK(permuted_reduce(s.perm_swap) == base);
        }
    };
    for (auto shape : {StencilShape::diamond, StencilShape::cross})
        for (int r = 1; r <= 3; ++r) check(build_stencil(2, r, shape));
    check(build_stencil(1, 3, StencilShape::diamond));
}

TEST_CASE("sum plan totals match a plain sum") {
    auto s = build_stencil(2, 3, StencilShape::diamond);
    std::vector<double> t(s.n, 1.0);
    CHECK(s.plan.reduce(t.data()) == doctest::Approx(25.0));
}
