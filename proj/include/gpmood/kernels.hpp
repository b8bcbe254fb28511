#pragma once

#include <cstdint>

#include "gpmood/stencil.hpp"

// Hot inner loops: stencil dot-product reconstruction rows and Riemann flux
// rows.  Scalar reference implementations define the semantics; the AVX2
// variants vectorize across cells/faces with the identical per-lane
// operation sequence, so the two produce bit-identical results (the build
// disables FP contraction).  The active variant is chosen at runtime from
// CPU features, overridable with GPMOOD_KERNELS=scalar|avx2.

namespace gpmood::kernels {

enum class Variant { scalar, avx2 };

Variant active_variant();
void force_variant(Variant v);
bool avx2_available();

struct ReconArgs {
    const double* src;    // one component plane
    const double* w;      // stencil weights
    const int32_t* off;   // flattened stencil offsets
    const SumPlan* plan;  // symmetry-invariant reduction tree
    int n;                // stencil size
    int base;             // linear index of the first cell
    int count;            // cells along i (unit stride)
    double* out;
};

// Single-cell reference used by both the scalar row kernel and the MOOD
// local-recompute path.
inline double recon_cell(const double* src, int idx, const double* w, const int32_t* off,
                         const SumPlan& plan, int n) {
    double t[2 * kMaxStencil + 8];
    for (int k = 0; k < n; ++k) t[k] = w[k] * src[idx + off[k]];
    for (int k = 0; k < plan.n_ops; ++k)
        t[plan.ops[k].dst] = t[plan.ops[k].a] + t[plan.ops[k].b];
    return t[plan.root];
}

struct FluxRowArgs {
    // Component rows for the left/right states.  For y-direction faces the
    // caller passes the momentum rows swapped (and swapped output slots),
    // which reduces the y-solve to the x-solve.
    const double* ul[4];
    const double* ur[4];
    double* f[4];
    uint8_t* okl = nullptr;  // &= finite(rho) && finite(p), per face side
    uint8_t* okr = nullptr;
    int count = 0;
    double gamma = 1.4;
};

void recon_row(const ReconArgs& a);
void hllc_row(const FluxRowArgs& a);
void hll_row(const FluxRowArgs& a);

namespace scalar {
void recon_row(const ReconArgs& a);
void hllc_row(const FluxRowArgs& a);
void hll_row(const FluxRowArgs& a);
}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
void recon_row(const ReconArgs& a);
void hllc_row(const FluxRowArgs& a);
void hll_row(const FluxRowArgs& a);
}  // namespace avx2
#endif

}  // namespace gpmood::kernels
