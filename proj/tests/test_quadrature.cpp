#include <cmath>

#include "doctest.h"
#include "gpmood/quadrature.hpp"

using namespace gpmood;

TEST_CASE("face quadrature matches the tabulated rules") {
    auto q2 = quadrature_rule(2);
    CHECK(q2.g[0] == 1.0 / (2.0 * std::sqrt(3.0)));
    CHECK(q2.g[1] == -q2.g[0]);
    CHECK(q2.w[0] == 0.5);
    CHECK(q2.w[1] == 0.5);

    auto q3 = quadrature_rule(3);
    CHECK(q3.g[0] == 0.5 * std::sqrt(3.0 / 5.0));
    CHECK(q3.g[1] == 0.0);
    CHECK(q3.g[2] == -q3.g[0]);
    CHECK(q3.w[0] == 5.0 / 18.0);
    CHECK(q3.w[1] == 8.0 / 18.0);

    auto q4 = quadrature_rule(4);
    double s = std::sqrt(6.0 / 5.0);
    CHECK(q4.g[0] == 0.5 * std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * s));
    CHECK(q4.g[1] == 0.5 * std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * s));
    CHECK(q4.w[0] == (18.0 - std::sqrt(30.0)) / 72.0);
    CHECK(q4.w[1] == (18.0 + std::sqrt(30.0)) / 72.0);

    auto q1 = quadrature_rule(1);
    CHECK(q1.g[0] == 0.0);
    CHECK(q1.w[0] == 1.0);

    CHECK_THROWS(quadrature_rule(5));
    CHECK_THROWS(quadrature_rule(0));
}

TEST_CASE("face quadrature weights sum to one, points antisymmetric") {
    for (int q = 1; q <= 4; ++q) {
        auto r = quadrature_rule(q);
        double sum = 0;
        for (int m = 0; m < q; ++m) sum += r.w[m];
        CHECK(std::abs(sum - 1.0) < 1e-15);
        for (int m = 0; m < q; ++m) CHECK(r.g[m] == -r.g[q - 1 - m]);
    }
}

TEST_CASE("5-point rule integrates degree <= 9 exactly") {
    auto gl = gauss_legendre_5();
    double sum = 0;
    for (double w : gl.w) sum += w;
    CHECK(std::abs(sum - 1.0) < 1e-15);
    // cell [0,1]: integral of x^9 is 0.1
    double t[5];
    for (int a = 0; a < 5; ++a) t[a] = gl.w[a] * std::pow(0.5 + gl.g[a], 9);
    CHECK(symmetric_sum5(t) == doctest::Approx(0.1).epsilon(1e-15));
    for (int a = 0; a < 5; ++a) t[a] = gl.w[a] * (0.5 + gl.g[a]);
    CHECK(symmetric_sum5(t) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("symmetric quadrature sums are reversal invariant") {
    double t[4] = {0.1, -0.7, 0.3, 1.9};
    for (int q = 1; q <= 4; ++q) {
        double rev[4];
        for (int m = 0; m < q; ++m) rev[m] = t[q - 1 - m];
        CHECK(symmetric_qsum(t, q) == symmetric_qsum(rev, q));
    }
    double u[5] = {2.0, -1.5, 0.25, 9.5, 1.0 / 3.0};
    double ur[5] = {u[4], u[3], u[2], u[1], u[0]};
    CHECK(symmetric_sum5(u) == symmetric_sum5(ur));
}
