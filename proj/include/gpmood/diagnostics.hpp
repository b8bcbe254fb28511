#pragma once

#include <array>

#include "gpmood/mesh.hpp"

namespace gpmood {

// Volume-weighted L1 norm of the per-component difference over the interior.
std::array<double, 4> l1_error(const Field& a, const Field& b, const Mesh& m);

// Experimental order of convergence between a coarse and a refined (2x) run.
inline double eoc(double e_coarse, double e_fine) {
    return std::log(e_coarse / e_fine) / std::log(2.0);
}

std::array<double, 4> conserved_totals(const Field& f, const Mesh& m);

// Max relative asymmetry of one component under the given reflection;
// sign = -1 for components that flip (momentum normal to the mirror).
double mirror_x_asymmetry(const Field& f, const Mesh& m, int comp, double sign = 1.0);
double mirror_y_asymmetry(const Field& f, const Mesh& m, int comp, double sign = 1.0);
// (x,y) -> (y,x); for momenta compare mx against my.
double diagonal_asymmetry(const Field& f, const Mesh& m, int comp_a, int comp_b);

// Odd-even decoupling monitor: energy of the (pi,pi) mode of the density in
// a centered window against the window variance.
struct CheckerboardResult {
    bool flagged = false;
    double ratio = 0.0;
};
CheckerboardResult checkerboard_metric(const Field& f, const Mesh& m);

}  // namespace gpmood
