#include "gpmood/kernels.hpp"
#include "gpmood/riemann.hpp"

namespace gpmood::kernels::scalar {

void recon_row(const ReconArgs& a) {
    for (int i = 0; i < a.count; ++i)
        a.out[i] = recon_cell(a.src, a.base + i, a.w, a.off, *a.plan, a.n);
}

namespace {

inline bool finite2(double rho, double p) {
    // (x - x) == 0 rejects both NaN and +/-Inf; same predicate as the
    // vectorized path.
    return (rho - rho) == 0.0 && (p - p) == 0.0;
}

template <bool Hllc>
void flux_row_impl(const FluxRowArgs& a) {
    for (int i = 0; i < a.count; ++i) {
        ConsState UL{a.ul[0][i], a.ul[1][i], a.ul[2][i], a.ul[3][i]};
        ConsState UR{a.ur[0][i], a.ur[1][i], a.ur[2][i], a.ur[3][i]};
        PrimState PL = cons_to_prim(UL, a.gamma);
        PrimState PR = cons_to_prim(UR, a.gamma);
        if (a.okl) a.okl[i] &= finite2(PL.rho, PL.p) ? 1 : 0;
        if (a.okr) a.okr[i] &= finite2(PR.rho, PR.p) ? 1 : 0;
        std::array<double, 4> F = Hllc ? hllc_flux_x(UL, PL, UR, PR, a.gamma)
                                       : hll_flux_x(UL, PL, UR, PR, a.gamma);
        for (int c = 0; c < 4; ++c) a.f[c][i] = F[c];
    }
}

}  // namespace

void hllc_row(const FluxRowArgs& a) { flux_row_impl<true>(a); }
void hll_row(const FluxRowArgs& a) { flux_row_impl<false>(a); }

}  // namespace gpmood::kernels::scalar
