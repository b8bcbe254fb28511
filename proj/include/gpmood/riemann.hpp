#pragma once

#include <algorithm>
#include <array>

#include "gpmood/euler.hpp"

namespace gpmood {

enum class RiemannSolver { hll, hllc };

// Both solvers use Davis wave-speed bounds
//   SL = min(uL - cL, uR - cR),  SR = max(uL + cL, uR + cR).
//
// The expressions are arranged so that mirroring both input states across
// the face (and swapping them) yields the bitwise-mirrored flux; the
// S* == 0 tie in HLLC averages the two star fluxes, which keeps faces that
// lie exactly on a mirror plane symmetric.

// A non-finite sound speed on either side (NaN/Inf data or negative
// reconstructed pressure) poisons both wave speeds, hence the whole flux.
// Plain min/max would propagate the NaN to only one of a mirrored face
// pair (their NaN handling depends on argument order), letting a garbage
// flux slip past detection on one side of a symmetry plane.
inline double wavespeed_poison(double cL, double cR) {
    return (cL - cL) + (cR - cR);
}

inline std::array<double, 4> hll_flux_x(const ConsState& UL, const PrimState& PL,
                                        const ConsState& UR, const PrimState& PR,
                                        double gamma) {
    double cL = sound_speed(PL, gamma), cR = sound_speed(PR, gamma);
    double poison = wavespeed_poison(cL, cR);
    double SL = std::min(PL.u - cL, PR.u - cR) + poison;
    double SR = std::max(PL.u + cL, PR.u + cR) + poison;
    std::array<double, 4> FL = phys_flux_x(UL, PL);
    if (SL >= 0.0) return FL;
    std::array<double, 4> FR = phys_flux_x(UR, PR);
    if (SR <= 0.0) return FR;
    double inv = 1.0 / (SR - SL);
    double ss = SL * SR;
    std::array<double, 4> F;
    const double* ul = &UL.rho;
    const double* ur = &UR.rho;
    for (int k = 0; k < 4; ++k)
        F[k] = ((SR * FL[k] - SL * FR[k]) + ss * (ur[k] - ul[k])) * inv;
    return F;
}

namespace detail {

inline std::array<double, 4> hllc_star_flux(const ConsState& U, const PrimState& P,
                                            const std::array<double, 4>& F, double S,
                                            double d_side, double s_star) {
    double p_star = P.p + d_side * (s_star - P.u);
    double inv = 1.0 / (S - s_star);
    double sp = S * p_star;
    return {(s_star * (S * U.rho - F[0])) * inv,
            (s_star * (S * U.mx - F[1]) + sp) * inv,
            (s_star * (S * U.my - F[2])) * inv,
            (s_star * (S * U.E - F[3]) + sp * s_star) * inv};
}

}  // namespace detail

inline std::array<double, 4> hllc_flux_x(const ConsState& UL, const PrimState& PL,
                                         const ConsState& UR, const PrimState& PR,
                                         double gamma) {
    double cL = sound_speed(PL, gamma), cR = sound_speed(PR, gamma);
    double poison = wavespeed_poison(cL, cR);
    double SL = std::min(PL.u - cL, PR.u - cR) + poison;
    double SR = std::max(PL.u + cL, PR.u + cR) + poison;
    std::array<double, 4> FL = phys_flux_x(UL, PL);
    if (SL >= 0.0) return FL;
    std::array<double, 4> FR = phys_flux_x(UR, PR);
    if (SR <= 0.0) return FR;
    double qL = SL - PL.u, qR = SR - PR.u;
    double dL = UL.rho * qL, dR = UR.rho * qR;
    double num = (PR.p - PL.p) + (PL.u * dL - PR.u * dR);
    double den = dL - dR;
    double s_star = num / den;
    if (s_star > 0.0) return detail::hllc_star_flux(UL, PL, FL, SL, dL, s_star);
    if (s_star < 0.0) return detail::hllc_star_flux(UR, PR, FR, SR, dR, s_star);
    std::array<double, 4> A = detail::hllc_star_flux(UL, PL, FL, SL, dL, s_star);
    std::array<double, 4> B = detail::hllc_star_flux(UR, PR, FR, SR, dR, s_star);
    for (int k = 0; k < 4; ++k) A[k] = 0.5 * (A[k] + B[k]);
    return A;
}

// Direction-generic entry points; dir 1 swaps the momentum components so
// that the x-solver serves the y-direction unchanged.
inline std::array<double, 4> riemann_flux(RiemannSolver rs, int dir, const ConsState& UL,
                                          const ConsState& UR, double gamma) {
    ConsState L = UL, R = UR;
    if (dir == 1) {
        std::swap(L.mx, L.my);
        std::swap(R.mx, R.my);
    }
    PrimState pl = cons_to_prim(L, gamma), pr = cons_to_prim(R, gamma);
    std::array<double, 4> F = rs == RiemannSolver::hllc ? hllc_flux_x(L, pl, R, pr, gamma)
                                                        : hll_flux_x(L, pl, R, pr, gamma);
    if (dir == 1) std::swap(F[1], F[2]);
    return F;
}

}  // namespace gpmood
