#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace gpmood {

inline constexpr int kMaxStencil = 25;

struct Offset {
    int di = 0;
    int dj = 0;
    bool operator==(const Offset&) const = default;
};

enum class StencilShape { diamond, cross };

// Binary reduction tree over stencil terms, built so that the sum is
// bit-invariant under the stencil's mirror/transpose permutations
// (antipodal pairs first, then mirror-pair groups, then a fixed fold).
// Slots [0, n_terms) hold the terms; ops append new slots.
struct SumPlan {
    struct Op {
        uint8_t a = 0, b = 0, dst = 0;
    };
    int n_terms = 1;
    int n_slots = 1;
    uint8_t root = 0;
    std::array<Op, kMaxStencil + 6> ops{};
    int n_ops = 0;

    double reduce(const double* t_in) const {
        double t[2 * kMaxStencil + 8];
        for (int k = 0; k < n_terms; ++k) t[k] = t_in[k];
        for (int k = 0; k < n_ops; ++k) t[ops[k].dst] = t[ops[k].a] + t[ops[k].b];
        return t[root];
    }
};

// Ordered GP stencil: center first, then rings of increasing radius, each
// ring enumerated clockwise starting from the west cell.  This reproduces
// the canonical 5-point labeling (center, W, N, E, S) that the Poly3
// coefficient formulas assume.
struct StencilGeometry {
    int ndim = 2;
    int radius = 1;
    StencilShape shape = StencilShape::diamond;
    int n = 0;
    std::vector<Offset> offsets;
    std::vector<int> perm_mirror_x;  // index of (-di, dj)
    std::vector<int> perm_mirror_y;  // index of (di, -dj)
    std::vector<int> perm_swap;      // index of (dj, di); 2D only
    SumPlan plan;

    int index_of(Offset o) const;
};

StencilGeometry build_stencil(int ndim, int radius, StencilShape shape);

// Single-cell stencil used by the first-order scheme.
StencilGeometry build_point_stencil(int ndim);

// Mirror/transpose-invariant reduction plan over an arbitrary antipodally
// symmetric offset set with (0,0) first (also used for quadrature grids).
SumPlan build_sum_plan(const std::vector<Offset>& offsets);

}  // namespace gpmood
