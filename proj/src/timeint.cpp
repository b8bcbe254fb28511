#include "gpmood/timeint.hpp"

namespace gpmood {

WaveSpeeds max_wavespeed(const Field& f, const Mesh& m, double gamma) {
    WaveSpeeds ws;
    for (int jj = 0; jj < m.ny; ++jj) {
        int row = m.id(m.gx(), m.gy() + jj);
        for (int i = 0; i < m.nx; ++i) {
            ConsState c{f.comp[0][row + i], f.comp[1][row + i], f.comp[2][row + i],
                        f.comp[3][row + i]};
            PrimState p = cons_to_prim(c, gamma);
            if (!(p.rho > 0.0) || !(p.p > 0.0) || !std::isfinite(p.rho) || !std::isfinite(p.p))
                throw std::runtime_error("non-positive or non-finite state in wave speed scan");
            double cs = sound_speed(p, gamma);
            ws.sx = std::max(ws.sx, std::abs(p.u) + cs);
            if (m.ndim == 2) ws.sy = std::max(ws.sy, std::abs(p.v) + cs);
        }
    }
    return ws;
}

double compute_dt(const Field& f, const Mesh& m, double cfl, double gamma, double tmax,
                  double t, double power_alpha) {
    WaveSpeeds ws = max_wavespeed(f, m, gamma);
    double dt = cfl * m.dx / ws.sx;
    if (m.ndim == 2) dt = std::min(dt, cfl * m.dy / ws.sy);
    if (power_alpha > 0.0) {
        double delta = m.ndim == 2 ? std::min(m.dx, m.dy) : m.dx;
        dt = std::min(dt, std::pow(delta, power_alpha));
    }
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::runtime_error("invalid time step");
    if (t + dt > tmax) dt = tmax - t;
    return dt;
}

}  // namespace gpmood
