#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "gpmood/euler.hpp"

namespace gpmood {

// Uniform Cartesian grid, 1D or 2D, with a fixed 4-cell ghost layer
// (largest stencil reach 3 plus one ring for detection neighborhoods).
struct Mesh {
    int ndim = 2;
    int nx = 1, ny = 1;
    int nghost = 4;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    double dx = 1, dy = 1;
    int nxt = 0, nyt = 0;  // totals including ghosts (nyt == 1 in 1D)

    int gx() const { return nghost; }
    int gy() const { return ndim == 2 ? nghost : 0; }
    int id(int i, int j) const { return j * nxt + i; }
    int ncells() const { return nxt * nyt; }
    long interior_count() const { return static_cast<long>(nx) * (ndim == 2 ? ny : 1); }

    // Center-relative cell coordinates; mirror-image cells get exactly
    // negated offsets (adding the domain center can break that at one ulp
    // when the sum crosses binades, so symmetry-sensitive evaluations work
    // in these coordinates).
    double offset_from_center_x(int i) const {
        return ((i - gx()) + 0.5 - 0.5 * nx) * dx;
    }
    double offset_from_center_y(int j) const {
        if (ndim == 1) return 0.0;
        return ((j - gy()) + 0.5 - 0.5 * ny) * dy;
    }
    double center_x() const { return 0.5 * (xmin + xmax); }
    double center_y() const { return ndim == 2 ? 0.5 * (ymin + ymax) : 0.0; }
    double cell_center_x(int i) const { return center_x() + offset_from_center_x(i); }
    double cell_center_y(int j) const {
        if (ndim == 1) return 0.0;
        return center_y() + offset_from_center_y(j);
    }
};

Mesh build_mesh(int ndim, int nx, int ny, double xmin, double xmax, double ymin,
                double ymax, int nghost = 4);

// Conservative state components, structure-of-arrays over the full
// ghost-inclusive grid.  Component order: rho, mx, my, E.
struct Field {
    std::array<std::vector<double>, 4> comp;

    void resize(const Mesh& m) {
        for (auto& c : comp) c.assign(m.ncells(), 0.0);
    }
    double* data(int c) { return comp[c].data(); }
    const double* data(int c) const { return comp[c].data(); }
};

enum class BCType { periodic, outflow, reflecting, inflow };

// Side order: 0 = x-low, 1 = x-high, 2 = y-low, 3 = y-high.
struct SideBC {
    BCType type = BCType::outflow;
    BCType inflow_fallback = BCType::outflow;  // used when the inflow fn declines
};

struct BoundaryCondition {
    std::array<SideBC, 4> side{};
    // Pointwise prescribed state for inflow sides, evaluated at ghost cell
    // centers; nullopt falls back to the side's fallback type.
    std::function<std::optional<PrimState>(double x, double y, double t)> inflow;
};

void validate_bc(const Mesh& m, const BoundaryCondition& bc);

void fill_ghosts(Field& f, const Mesh& m, const BoundaryCondition& bc, double t,
                 double gamma);

// One-ring ghost fill for the per-cell scheme index map (periodic wrap,
// otherwise nearest-interior copy).
void fill_order_ghosts(std::vector<int8_t>& order, const Mesh& m,
                       const BoundaryCondition& bc);

}  // namespace gpmood
