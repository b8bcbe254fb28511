#include <cmath>
#include <vector>

#include "doctest.h"
#include "gpmood/mood.hpp"
#include "gpmood/problems.hpp"
#include "gpmood/timeint.hpp"

using namespace gpmood;

TEST_CASE("five-stage coefficients match the published literals digit for digit") {
    CHECK(rk4::kC1 == 0.391752226571890);
    CHECK(rk4::kA2 == 0.444370493651235);
    CHECK(rk4::kB2 == 0.555629506348765);
    CHECK(rk4::kC2 == 0.368410593050371);
    CHECK(rk4::kA3 == 0.620101851488403);
    CHECK(rk4::kB3 == 0.379898148511597);
    CHECK(rk4::kC3 == 0.251891774271694);
    CHECK(rk4::kA4 == 0.178079954393132);
    CHECK(rk4::kB4 == 0.821920045606868);
    CHECK(rk4::kC4 == 0.544974750228521);
    CHECK(rk4::kFinalU2 == 0.517231671970585);
    CHECK(rk4::kFinalU3 == 0.096059710526147);
    CHECK(rk4::kFinalF3 == 0.063692468666290);
    CHECK(rk4::kFinalU4 == 0.386708617503269);
    CHECK(rk4::kFinalF4 == 0.226007483236906);
    // convex pairs sum to one
    CHECK(std::abs(rk4::kA2 + rk4::kB2 - 1.0) < 1e-14);
    CHECK(std::abs(rk4::kA3 + rk4::kB3 - 1.0) < 1e-14);
    CHECK(std::abs(rk4::kA4 + rk4::kB4 - 1.0) < 1e-14);
    CHECK(std::abs(rk4::kFinalU2 + rk4::kFinalU3 + rk4::kFinalU4 - 1.0) < 1e-14);
}

namespace {

using Vec = std::vector<double>;

struct VecOps {
    void blend(Vec& dst, const Vec& a, const Vec& o, double c) const {
        for (size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] + c * (o[i] - a[i]);
    }
    void rk4_final_base(Vec& dst, const Vec& u4, const Vec& u2, const Vec& u3,
                        const Vec& d3, double dt) const {
        using namespace rk4;
        for (size_t i = 0; i < dst.size(); ++i)
            dst[i] = u4[i] + kFinalU2 * (u2[i] - u4[i]) + kFinalU3 * (u3[i] - u4[i]) -
                     (kFinalF3 * dt) * d3[i];
    }
};

// scalar nonlinear rig: y' = y^2, exact solution 1/(1-t)
double ode_error(Integrator integ, int nsteps) {
    Vec U{1.0}, s1{0.0}, s2{0.0}, s3{0.0}, s4{0.0}, b{0.0}, d3{0.0};
    double T = 0.5, dt = T / nsteps, t = 0;
    auto stage = [](const Vec& base, const Vec& W, double coef, double, Vec& out,
                    Vec* div) {
        for (size_t i = 0; i < base.size(); ++i) {
            double f = W[i] * W[i];
            out[i] = base[i] + coef * f;
            if (div) (*div)[i] = -f;
        }
    };
    VecOps ops;
    for (int s = 0; s < nsteps; ++s) {
        if (integ == Integrator::ssp_rk3)
            ssp_rk3_advance(U, dt, t, stage, ops, s1, s2);
        else
            ssp_rk4_advance(U, dt, t, stage, ops, s1, s2, s3, s4, b, d3);
        t += dt;
    }
    return std::abs(U[0] - 1.0 / (1.0 - T));
}

}  // namespace

TEST_CASE("temporal self-convergence orders") {
    double e1 = ode_error(Integrator::ssp_rk3, 40);
    double e2 = ode_error(Integrator::ssp_rk3, 80);
    double e3 = ode_error(Integrator::ssp_rk3, 160);
    double o3 = std::log2(e1 / e3) / 2.0;
    INFO("rk3 errors ", e1, " ", e2, " ", e3);
    CHECK(o3 > 2.9);
    CHECK(o3 < 3.3);
    e1 = ode_error(Integrator::ssp_rk4, 20);
    e2 = ode_error(Integrator::ssp_rk4, 40);
    e3 = ode_error(Integrator::ssp_rk4, 80);
    double o4 = std::log2(e1 / e3) / 2.0;
    INFO("rk4 errors ", e1, " ", e2, " ", e3);
    CHECK(o4 > 3.9);
    CHECK(o4 < 4.3);
}

TEST_CASE("constants pass through both integrators exactly") {
    Vec U{2.75}, s1{0.0}, s2{0.0}, s3{0.0}, s4{0.0}, b{0.0}, d3{0.0};
    auto stage = [](const Vec& base, const Vec& W, double coef, double, Vec& out, Vec* div) {
        (void)W;
        for (size_t i = 0; i < base.size(); ++i) {
            out[i] = base[i] + coef * 0.0;
            if (div) (*div)[i] = 0.0;
        }
    };
    VecOps ops;
    for (int s = 0; s < 1000; ++s) ssp_rk3_advance(U, 0.01, 0.0, stage, ops, s1, s2);
    CHECK(U[0] == 2.75);
    for (int s = 0; s < 1000; ++s)
        ssp_rk4_advance(U, 0.01, 0.0, stage, ops, s1, s2, s3, s4, b, d3);
    CHECK(U[0] == 2.75);
}

TEST_CASE("uniform states are preserved exactly by full stages over many steps") {
    ProblemSetup s = build_problem("vortex", 8, 8);
    ConsState uni = prim_to_cons({1.0, 0.3, -0.2, 1.0}, s.gamma);
    for (int c = 0; c < 4; ++c)
        for (auto& v : s.init.comp[c]) v = (&uni.rho)[c];
    MoodSolver solver(s.mesh, s.bc, s.gamma, RiemannSolver::hllc, MethodId::gp_mood5,
                      StencilShape::diamond, 1.0, 0, DetectionConfig{});
    Field U = s.init, s1, s2, s3, s4, b, d3;
    for (Field* f : {&s1, &s2, &s3, &s4, &b, &d3}) f->resize(s.mesh);
    struct Ops {
        void blend(Field& dst, const Field& a, const Field& o, double c) const {
            for (int k = 0; k < 4; ++k)
                for (size_t i = 0; i < dst.comp[k].size(); ++i)
                    dst.comp[k][i] = a.comp[k][i] + c * (o.comp[k][i] - a.comp[k][i]);
        }
        void rk4_final_base(Field& dst, const Field& u4, const Field& u2, const Field& u3,
                            const Field& d3v, double dt) const {
            using namespace rk4;
            for (int k = 0; k < 4; ++k)
                for (size_t i = 0; i < dst.comp[k].size(); ++i)
                    dst.comp[k][i] = u4.comp[k][i] + kFinalU2 * (u2.comp[k][i] - u4.comp[k][i]) +
                                     kFinalU3 * (u3.comp[k][i] - u4.comp[k][i]) -
                                     (kFinalF3 * dt) * d3v.comp[k][i];
        }
    } ops;
    MoodStats st;
    auto stage = [&](const Field& base, const Field& W, double coef, double ts, Field& out,
                     Field* div) {
        solver.stage_update(const_cast<Field&>(W), base, coef, ts, out, st);
        if (div)
            for (int c = 0; c < 4; ++c) div->comp[c] = solver.divergence(c);
    };
    for (int step = 0; step < 500; ++step)
        ssp_rk4_advance(U, 1e-3, 0.0, stage, ops, s1, s2, s3, s4, b, d3);
    for (int jj = 0; jj < s.mesh.ny; ++jj)
        for (int ii = 0; ii < s.mesh.nx; ++ii) {
            int idx = s.mesh.id(s.mesh.gx() + ii, s.mesh.gy() + jj);
            CHECK(U.comp[0][idx] == uni.rho);
            CHECK(U.comp[1][idx] == uni.mx);
            CHECK(U.comp[2][idx] == uni.my);
            CHECK(U.comp[3][idx] == uni.E);
        }
}

TEST_CASE("time step control") {
    Mesh m = build_mesh(2, 100, 100, 0, 1, 0, 1);
    Field f;
    f.resize(m);
    ConsState uni = prim_to_cons({1.0, 0.0, 0.0, 1.0}, 1.4);
    for (int c = 0; c < 4; ++c)
        for (auto& v : f.comp[c]) v = (&uni.rho)[c];
    double dt = compute_dt(f, m, 0.8, 1.4, 100.0, 0.0);
    CHECK(dt == doctest::Approx(0.8 * 0.01 / std::sqrt(1.4)).epsilon(1e-14));
    // power reduction cap
    Mesh m2 = build_mesh(2, 10, 10, 0, 1, 0, 1);
    Field f2;
    f2.resize(m2);
    ConsState slow = prim_to_cons({1.0, 0.0, 0.0, 1e-6}, 1.4);  // tiny sound speed
    for (int c = 0; c < 4; ++c)
        for (auto& v : f2.comp[c]) v = (&slow.rho)[c];
    double dt2 = compute_dt(f2, m2, 0.8, 1.4, 100.0, 0.0, 1.25);
    CHECK(dt2 == doctest::Approx(std::pow(0.1, 1.25)).epsilon(1e-14));
    // clipping to the final time
    double dt3 = compute_dt(f, m, 0.8, 1.4, 1.0, 1.0 - 1e-4);
    CHECK(dt3 == doctest::Approx(1e-4).epsilon(1e-10));
}
