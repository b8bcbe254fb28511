#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gpmood/mesh.hpp"

namespace gpmood {

enum class Integrator { ssp_rk3, ssp_rk4 };

// Five-stage fourth-order strong-stability-preserving coefficients
// (15-digit literals).  Stage combinations are applied in anchored
// difference form, U_prev + a*(U_other - U_prev), so uniform states are
// preserved exactly.
namespace rk4 {
inline constexpr double kC1 = 0.391752226571890;
inline constexpr double kA2 = 0.444370493651235;
inline constexpr double kB2 = 0.555629506348765;
inline constexpr double kC2 = 0.368410593050371;
inline constexpr double kA3 = 0.620101851488403;
inline constexpr double kB3 = 0.379898148511597;
inline constexpr double kC3 = 0.251891774271694;
inline constexpr double kA4 = 0.178079954393132;
inline constexpr double kB4 = 0.821920045606868;
inline constexpr double kC4 = 0.544974750228521;
inline constexpr double kFinalU2 = 0.517231671970585;
inline constexpr double kFinalU3 = 0.096059710526147;
inline constexpr double kFinalF3 = 0.063692468666290;
inline constexpr double kFinalU4 = 0.386708617503269;
inline constexpr double kFinalF4 = 0.226007483236906;
// stage abscissae (time-dependent boundary evaluation only)
inline constexpr double kT2 = 0.391752226571890;
inline constexpr double kT3 = 0.586079688967800;
inline constexpr double kT4 = 0.474542363121400;
inline constexpr double kT5 = 0.935010630967653;
}  // namespace rk4

// Stage callable contract:
//   stage(base, W, coef, t_stage, out, div_out)
// computes the validated candidate out = base - coef * divergence(W) and,
// when div_out != nullptr, stores the accepted divergence.
// Ops contract:
//   ops.blend(dst, anchor, other, c)          dst = anchor + c*(other - anchor)
//   ops.rk4_final_base(dst, u4, u2, u3, d3, dt)
//       dst = u4 + kFinalU2*(u2-u4) + kFinalU3*(u3-u4) - kFinalF3*dt*d3

template <class F, class Ops, class Stage>
void ssp_rk3_advance(F& U, double dt, double t, Stage&& stage, Ops&& ops, F& s1, F& s2) {
    stage(U, U, dt, t, s1, nullptr);
    stage(s1, s1, dt, t + dt, s2, nullptr);
    ops.blend(s2, s2, U, 0.75);
    stage(s2, s2, dt, t + 0.5 * dt, s1, nullptr);
    ops.blend(U, s1, U, 1.0 / 3.0);
}

template <class F, class Ops, class Stage, class Div>
void ssp_rk4_advance(F& U, double dt, double t, Stage&& stage, Ops&& ops, F& s1, F& s2,
                     F& s3, F& s4, F& b, Div& d3) {
    using namespace rk4;
    stage(U, U, kC1 * dt, t, s1, nullptr);
    ops.blend(b, s1, U, kA2);
    stage(b, s1, kC2 * dt, t + kT2 * dt, s2, nullptr);
    ops.blend(b, s2, U, kA3);
    stage(b, s2, kC3 * dt, t + kT3 * dt, s3, nullptr);
    ops.blend(b, s3, U, kA4);
    stage(b, s3, kC4 * dt, t + kT4 * dt, s4, &d3);
    ops.rk4_final_base(b, s4, s2, s3, d3, dt);
    stage(b, s4, kFinalF4 * dt, t + kT5 * dt, U, nullptr);
}

struct WaveSpeeds {
    double sx = 0, sy = 0;
};

// Per-direction max |u_d| + c over the interior; throws on non-positive or
// non-finite density/pressure.
WaveSpeeds max_wavespeed(const Field& f, const Mesh& m, double gamma);

// dt = cfl * min_d(delta_d / speed_d), optionally capped by
// min(dx,dy)^alpha, clipped so t + dt <= tmax.
double compute_dt(const Field& f, const Mesh& m, double cfl, double gamma, double tmax,
                  double t, double power_alpha = 0.0);

}  // namespace gpmood
