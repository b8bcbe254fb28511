#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gpmood/mesh.hpp"
#include "gpmood/riemann.hpp"

namespace gpmood {

// Benchmark problem catalogue: default grids, domains, boundary conditions,
// solver pairings and correlation-length policy.
struct ProblemSpec {
    std::string name;
    int ndim = 2;
    int nx = 0, ny = 0;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    double tmax = 1.0;
    RiemannSolver riemann = RiemannSolver::hllc;
    bool ell_absolute = false;  // true: ell = ell_value; false: ell = ell_value * min(dx,dy)
    double ell_value = 12.0;
    // vortex / shu_osher pair the integrator with the method order
    bool method_paired_integrator = false;
};

const ProblemSpec& problem_spec(const std::string& name);
std::vector<std::string> problem_names();

struct ProblemSetup {
    Mesh mesh;
    BoundaryCondition bc;
    Field init;
    double gamma = 1.4;
};

ProblemSetup build_problem(const std::string& name, int nx = 0, int ny = 0);

using PointwiseFn = std::function<PrimState(double x, double y)>;

// Tensor-product 5-point Gauss-Legendre average of the pointwise
// conservative state (primitive -> conservative first, then average).
// The node sum uses a transpose/mirror-invariant reduction so symmetric
// pointwise states produce bit-exactly symmetric fields.
ConsState pointwise_to_volavg_cell(const PointwiseFn& f, const Mesh& m, double gamma,
                                   int i, int j);
void pointwise_to_volavg(const PointwiseFn& f, const Mesh& m, double gamma, Field& out);

}  // namespace gpmood
