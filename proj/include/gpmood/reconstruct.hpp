#pragma once

#include <array>
#include <vector>

#include "gpmood/euler.hpp"
#include "gpmood/mesh.hpp"
#include "gpmood/prediction.hpp"

namespace gpmood {

// Stencil data around cell (i, j), one conservative component, ordered per
// the canonical stencil labeling.
std::vector<double> gather_stencil(const Field& f, int comp, const Mesh& m, int i,
                                   int j, const StencilGeometry& st);

struct Poly3Coefficients {
    double a0 = 0, a1 = 0, a2 = 0, a3 = 0, a4 = 0;
};

// Unlimited third-order polynomial coefficients from the 5-point stencil
// averages (canonical order: center, W, N, E, S; unit cell widths).
// Written in difference form so constants reproduce exactly.
inline Poly3Coefficients poly3_coefficients(const std::array<double, 5>& q) {
    Poly3Coefficients c;
    c.a0 = q[0] - (((q[1] + q[2]) + (q[3] + q[4])) - 4.0 * q[0]) / 24.0;
    c.a1 = 0.5 * (q[3] - q[1]);
    c.a2 = 0.5 * ((q[1] + q[3]) - 2.0 * q[0]);
    c.a3 = 0.5 * (q[2] - q[4]);
    c.a4 = 0.5 * ((q[2] + q[4]) - 2.0 * q[0]);
    return c;
}

// Pointwise conservative states this cell contributes at its face
// quadrature points: states[face][qpt].
struct FaceStates {
    std::array<std::vector<ConsState>, 4> states;
    int q = 0;
};

FaceStates reconstruct_faces(const PredictionVectorSet& set, const Field& f,
                             const Mesh& m, int i, int j);

}  // namespace gpmood
