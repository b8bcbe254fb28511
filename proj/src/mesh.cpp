#include "gpmood/mesh.hpp"

#include <stdexcept>

namespace gpmood {

Mesh build_mesh(int ndim, int nx, int ny, double xmin, double xmax, double ymin,
                double ymax, int nghost) {
    if (ndim != 1 && ndim != 2) throw std::invalid_argument("ndim must be 1 or 2");
    if (nx < 1 || (ndim == 2 && ny < 1))
        throw std::invalid_argument("cell counts must be positive");
    if (!(xmax > xmin) || (ndim == 2 && !(ymax > ymin)))
        throw std::invalid_argument("domain bounds are inverted");
    if (nghost < 4) throw std::invalid_argument("nghost must be >= 4");
    Mesh m;
    m.ndim = ndim;
    m.nx = nx;
    m.ny = ndim == 2 ? ny : 1;
    m.nghost = nghost;
    m.xmin = xmin;
    m.xmax = xmax;
    m.dx = (xmax - xmin) / nx;
    if (ndim == 2) {
        m.ymin = ymin;
        m.ymax = ymax;
        m.dy = (ymax - ymin) / ny;
    } else {
        m.ymin = 0.0;
        m.ymax = 1.0;
        m.dy = 1.0;
    }
    m.nxt = nx + 2 * nghost;
    m.nyt = ndim == 2 ? m.ny + 2 * nghost : 1;
    return m;
}

void validate_bc(const Mesh& m, const BoundaryCondition& bc) {
    auto check_pair = [&](int a, int b) {
        if ((bc.side[a].type == BCType::periodic) != (bc.side[b].type == BCType::periodic))
            throw std::invalid_argument("periodic boundaries must come in opposing pairs");
    };
    check_pair(0, 1);
    if (m.ndim == 2) check_pair(2, 3);
    for (int s = 0; s < (m.ndim == 2 ? 4 : 2); ++s)
        if (bc.side[s].type == BCType::inflow && !bc.inflow)
            throw std::invalid_argument("inflow side requires an inflow state function");
}

namespace {

// Writes one ghost cell from the prescribed inflow state or per fallback.
inline void set_ghost_x(Field& f, const Mesh& m, const BoundaryCondition& bc, int side,
                        int gi, int j, double t, double gamma) {
    int src = side == 0 ? m.gx() : m.gx() + m.nx - 1;           // nearest interior
    int mir = side == 0 ? 2 * m.gx() - 1 - gi : 2 * (m.gx() + m.nx) - 1 - gi;
    BCType type = bc.side[side].type;
    if (type == BCType::inflow) {
        auto s = bc.inflow(m.cell_center_x(gi), m.cell_center_y(j), t);
        if (s) {
            ConsState c = prim_to_cons(*s, gamma);
            f.comp[0][m.id(gi, j)] = c.rho;
            f.comp[1][m.id(gi, j)] = c.mx;
            f.comp[2][m.id(gi, j)] = c.my;
            f.comp[3][m.id(gi, j)] = c.E;
            return;
        }
        type = bc.side[side].inflow_fallback;
    }
    if (type == BCType::reflecting) {
        f.comp[0][m.id(gi, j)] = f.comp[0][m.id(mir, j)];
        f.comp[1][m.id(gi, j)] = -f.comp[1][m.id(mir, j)];
        f.comp[2][m.id(gi, j)] = f.comp[2][m.id(mir, j)];
        f.comp[3][m.id(gi, j)] = f.comp[3][m.id(mir, j)];
    } else {  // outflow
        for (int c = 0; c < 4; ++c) f.comp[c][m.id(gi, j)] = f.comp[c][m.id(src, j)];
    }
}

inline void set_ghost_y(Field& f, const Mesh& m, const BoundaryCondition& bc, int side,
                        int i, int gj, double t, double gamma) {
    int src = side == 2 ? m.gy() : m.gy() + m.ny - 1;
    int mir = side == 2 ? 2 * m.gy() - 1 - gj : 2 * (m.gy() + m.ny) - 1 - gj;
    BCType type = bc.side[side].type;
    if (type == BCType::inflow) {
        auto s = bc.inflow(m.cell_center_x(i), m.cell_center_y(gj), t);
        if (s) {
            ConsState c = prim_to_cons(*s, gamma);
            f.comp[0][m.id(i, gj)] = c.rho;
            f.comp[1][m.id(i, gj)] = c.mx;
            f.comp[2][m.id(i, gj)] = c.my;
            f.comp[3][m.id(i, gj)] = c.E;
            return;
        }
        type = bc.side[side].inflow_fallback;
    }
    if (type == BCType::reflecting) {
        f.comp[0][m.id(i, gj)] = f.comp[0][m.id(i, mir)];
        f.comp[1][m.id(i, gj)] = f.comp[1][m.id(i, mir)];
        f.comp[2][m.id(i, gj)] = -f.comp[2][m.id(i, mir)];
        f.comp[3][m.id(i, gj)] = f.comp[3][m.id(i, mir)];
    } else {
        for (int c = 0; c < 4; ++c) f.comp[c][m.id(i, gj)] = f.comp[c][m.id(i, src)];
    }
}

}  // namespace

void fill_ghosts(Field& f, const Mesh& m, const BoundaryCondition& bc, double t,
                 double gamma) {
    const int g = m.gx();
    // x sweeps over interior rows, then y sweeps over all columns so that
    // corner ghosts pick up consistent values.
    auto wrap = [](int k, int n) { return ((k % n) + n) % n; };
    for (int j = m.gy(); j < m.gy() + m.ny; ++j) {
        if (bc.side[0].type == BCType::periodic) {
            for (int gi = 0; gi < g; ++gi)
                for (int c = 0; c < 4; ++c)
                    f.comp[c][m.id(gi, j)] = f.comp[c][m.id(g + wrap(gi - g, m.nx), j)];
            for (int gi = g + m.nx; gi < m.nxt; ++gi)
                for (int c = 0; c < 4; ++c)
                    f.comp[c][m.id(gi, j)] = f.comp[c][m.id(g + wrap(gi - g, m.nx), j)];
        } else {
            for (int gi = 0; gi < g; ++gi) set_ghost_x(f, m, bc, 0, gi, j, t, gamma);
            for (int gi = g + m.nx; gi < m.nxt; ++gi)
                set_ghost_x(f, m, bc, 1, gi, j, t, gamma);
        }
    }
    if (m.ndim == 1) return;
    const int gy = m.gy();
    for (int i = 0; i < m.nxt; ++i) {
        if (bc.side[2].type == BCType::periodic) {
            for (int gj = 0; gj < gy; ++gj)
                for (int c = 0; c < 4; ++c)
                    f.comp[c][m.id(i, gj)] = f.comp[c][m.id(i, gy + wrap(gj - gy, m.ny))];
            for (int gj = gy + m.ny; gj < m.nyt; ++gj)
                for (int c = 0; c < 4; ++c)
                    f.comp[c][m.id(i, gj)] = f.comp[c][m.id(i, gy + wrap(gj - gy, m.ny))];
        } else {
            for (int gj = 0; gj < gy; ++gj) set_ghost_y(f, m, bc, 2, i, gj, t, gamma);
            for (int gj = gy + m.ny; gj < m.nyt; ++gj)
                set_ghost_y(f, m, bc, 3, i, gj, t, gamma);
        }
    }
}

void fill_order_ghosts(std::vector<int8_t>& order, const Mesh& m,
                       const BoundaryCondition& bc) {
    const int g = m.gx();
    for (int j = m.gy(); j < m.gy() + m.ny; ++j) {
        bool per = bc.side[0].type == BCType::periodic;
        order[m.id(g - 1, j)] = per ? order[m.id(g - 1 + m.nx, j)] : order[m.id(g, j)];
        order[m.id(g + m.nx, j)] =
            per ? order[m.id(g, j)] : order[m.id(g + m.nx - 1, j)];
    }
    if (m.ndim == 1) return;
    const int gy = m.gy();
    for (int i = g - 1; i <= g + m.nx; ++i) {
        bool per = bc.side[2].type == BCType::periodic;
        order[m.id(i, gy - 1)] = per ? order[m.id(i, gy - 1 + m.ny)] : order[m.id(i, gy)];
        order[m.id(i, gy + m.ny)] =
            per ? order[m.id(i, gy)] : order[m.id(i, gy + m.ny - 1)];
    }
}

}  // namespace gpmood
