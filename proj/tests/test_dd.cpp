#include <initializer_list>
#include "doctest.h"
#include "gpmood/dd.hpp"

using gpmood::dd;

namespace {

double dd_rel_err(const dd& v, double hi, double lo) {
    dd ref{hi, lo};
    dd d = v - ref;
    double mag = std::abs(hi) > 0 ? std::abs(hi) : 1.0;
    return std::abs(d.hi) / mag;
}

}  // namespace

TEST_CASE("dd arithmetic recovers cancelled bits") {
    dd a(1.0);
    dd b(1e-25);
    dd s = (a + b) - a;
    CHECK(s.hi == doctest::Approx(1e-25).epsilon(1e-12));
    dd p = dd(1e8) + dd(1.0);
    dd q = p * p;  // 1e16 + 2e8 + 1
    dd r = q - dd(1e16);
    CHECK(r.hi == doctest::Approx(2e8 + 1.0).epsilon(1e-15));
}

TEST_CASE("dd division and sqrt") {
    dd x = dd(2.0) / dd(3.0);
    dd back = x * dd(3.0);
    CHECK(dd_rel_err(back, 2.0, 0.0) < 1e-30);
    dd s = gpmood::dd_sqrt(dd(2.0));
    dd two = s * s;
    CHECK(dd_rel_err(two, 2.0, 0.0) < 1e-30);
}

TEST_CASE("dd exp against frozen references") {
    CHECK(dd_rel_err(gpmood::dd_exp(dd(-0.5)), 0.6065306597126334, -6.593178415491414e-19) <
          1e-30);
    CHECK(dd_rel_err(gpmood::dd_exp(dd(1.0)), 2.718281828459045, 1.4456468917292502e-16) <
          1e-30);
    CHECK(dd_rel_err(gpmood::dd_exp(dd(-40.0)), 4.248354255291589e-18,
                     1.2437470802645773e-34) < 1e-30);
}

TEST_CASE("dd erf against frozen references") {
    struct Ref {
        double x, hi, lo;
    };
    const Ref refs[] = {
        {0.03125, 0.035250373867322826, -1.8378560755325555e-19},
        {0.5, 0.5204998778130465, 1.900077467916287e-17},
        {1.25, 0.9229001282564583, -5.51775442986392e-17},
        {3.5, 0.9999992569016276, 4.9647279187212204e-17},
        {6.25, 1.0, -9.672204131876253e-19},
    };
    for (const Ref& r : refs) {
        CHECK(dd_rel_err(gpmood::dd_erf(dd(r.x)), r.hi, r.lo) < 1e-29);
    }
}

TEST_CASE("dd erf is odd bitwise") {
    for (double x : {0.125, 0.7, 2.25, 5.5}) {
        dd a = gpmood::dd_erf(dd(x));
        dd b = gpmood::dd_erf(dd(-x));
        CHECK(b.hi == -a.hi);
        CHECK(b.lo == -a.lo);
    }
}

TEST_CASE("dd constants consistent") {
    dd pi2 = gpmood::dd_sqrt_pi() * gpmood::dd_sqrt_pi();
    CHECK(dd_rel_err(pi2, gpmood::dd_pi().hi, gpmood::dd_pi().lo) < 1e-30);
    dd p = gpmood::dd_sqrt_half_pi() * gpmood::dd_sqrt_half_pi() * dd(2.0);
    CHECK(dd_rel_err(p, gpmood::dd_pi().hi, gpmood::dd_pi().lo) < 1e-30);
}
