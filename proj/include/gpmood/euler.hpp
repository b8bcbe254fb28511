#pragma once

#include <array>
#include <cmath>

namespace gpmood {

struct PrimState {
    double rho = 0, u = 0, v = 0, p = 0;
};

struct ConsState {
    double rho = 0, mx = 0, my = 0, E = 0;
};

// Total functions: non-finite and non-physical values propagate; the MOOD
// detection chain is responsible for rejecting them.
inline PrimState cons_to_prim(const ConsState& c, double gamma) {
    PrimState p;
    p.rho = c.rho;
    p.u = c.mx / c.rho;
    p.v = c.my / c.rho;
    p.p = (gamma - 1.0) * (c.E - 0.5 * (c.mx * p.u + c.my * p.v));
    return p;
}

inline ConsState prim_to_cons(const PrimState& p, double gamma) {
    ConsState c;
    c.rho = p.rho;
    c.mx = p.rho * p.u;
    c.my = p.rho * p.v;
    c.E = p.p / (gamma - 1.0) + 0.5 * (c.mx * p.u + c.my * p.v);
    return c;
}

inline double sound_speed(const PrimState& p, double gamma) {
    return std::sqrt(gamma * p.p / p.rho);
}

// x-directional physical flux; the y-flux is obtained by swapping the
// momentum components around this function.
inline std::array<double, 4> phys_flux_x(const ConsState& c, const PrimState& p) {
    return {c.mx, c.mx * p.u + p.p, c.my * p.u, p.u * (c.E + p.p)};
}

}  // namespace gpmood
