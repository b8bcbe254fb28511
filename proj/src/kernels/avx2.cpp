// AVX2 variants.  Each lane executes exactly the operation sequence of the
// scalar reference (branches become mask blends with the same priority), so
// results are bit-identical per cell/face.
#include "gpmood/kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

namespace gpmood::kernels::avx2 {

namespace {

// std::min / std::max replicas, including their NaN-operand behavior.
inline __m256d vmin(__m256d a, __m256d b) {
    return _mm256_blendv_pd(a, b, _mm256_cmp_pd(b, a, _CMP_LT_OQ));
}
inline __m256d vmax(__m256d a, __m256d b) {
    return _mm256_blendv_pd(a, b, _mm256_cmp_pd(a, b, _CMP_LT_OQ));
}

struct VState {
    __m256d rho, mx, my, E;     // conservative
    __m256d u, v, p, c;         // derived
    __m256d f0, f1, f2, f3;     // physical flux
};

inline VState load_state(const double* const* comp, int i, __m256d gm1, __m256d gamma) {
    VState s;
    s.rho = _mm256_loadu_pd(comp[0] + i);
    s.mx = _mm256_loadu_pd(comp[1] + i);
    s.my = _mm256_loadu_pd(comp[2] + i);
    s.E = _mm256_loadu_pd(comp[3] + i);
    s.u = _mm256_div_pd(s.mx, s.rho);
    s.v = _mm256_div_pd(s.my, s.rho);
    __m256d ke = _mm256_mul_pd(_mm256_set1_pd(0.5),
                               _mm256_add_pd(_mm256_mul_pd(s.mx, s.u), _mm256_mul_pd(s.my, s.v)));
    s.p = _mm256_mul_pd(gm1, _mm256_sub_pd(s.E, ke));
    s.c = _mm256_sqrt_pd(_mm256_div_pd(_mm256_mul_pd(gamma, s.p), s.rho));
    s.f0 = s.mx;
    s.f1 = _mm256_add_pd(_mm256_mul_pd(s.mx, s.u), s.p);
    s.f2 = _mm256_mul_pd(s.my, s.u);
    s.f3 = _mm256_mul_pd(s.u, _mm256_add_pd(s.E, s.p));
    return s;
}

inline __m256d finite2_mask(__m256d rho, __m256d p) {
    __m256d zero = _mm256_setzero_pd();
    __m256d a = _mm256_cmp_pd(_mm256_sub_pd(rho, rho), zero, _CMP_EQ_OQ);
    __m256d b = _mm256_cmp_pd(_mm256_sub_pd(p, p), zero, _CMP_EQ_OQ);
    return _mm256_and_pd(a, b);
}

inline void update_flags(uint8_t* ok, int i, __m256d mask) {
    if (!ok) return;
    int bits = _mm256_movemask_pd(mask);
    for (int l = 0; l < 4; ++l) ok[i + l] &= (bits >> l) & 1;
}

struct StarFlux {
    __m256d f0, f1, f2, f3;
};

inline StarFlux star_flux(const VState& s, __m256d S, __m256d d_side, __m256d s_star) {
    __m256d p_star =
        _mm256_add_pd(s.p, _mm256_mul_pd(d_side, _mm256_sub_pd(s_star, s.u)));
    __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_sub_pd(S, s_star));
    __m256d sp = _mm256_mul_pd(S, p_star);
    StarFlux r;
    r.f0 = _mm256_mul_pd(
        _mm256_mul_pd(s_star, _mm256_sub_pd(_mm256_mul_pd(S, s.rho), s.f0)), inv);
    r.f1 = _mm256_mul_pd(
        _mm256_add_pd(_mm256_mul_pd(s_star, _mm256_sub_pd(_mm256_mul_pd(S, s.mx), s.f1)), sp),
        inv);
    r.f2 = _mm256_mul_pd(
        _mm256_mul_pd(s_star, _mm256_sub_pd(_mm256_mul_pd(S, s.my), s.f2)), inv);
    r.f3 = _mm256_mul_pd(
        _mm256_add_pd(_mm256_mul_pd(s_star, _mm256_sub_pd(_mm256_mul_pd(S, s.E), s.f3)),
                      _mm256_mul_pd(sp, s_star)),
        inv);
    return r;
}

inline __m256d select4(__m256d base, __m256d x, __m256d mask) {
    return _mm256_blendv_pd(base, x, mask);
}

template <bool Hllc>
void flux_row_impl(const FluxRowArgs& a) {
    __m256d gamma = _mm256_set1_pd(a.gamma);
    __m256d gm1 = _mm256_set1_pd(a.gamma - 1.0);
    __m256d zero = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= a.count; i += 4) {
        VState L = load_state(a.ul, i, gm1, gamma);
        VState R = load_state(a.ur, i, gm1, gamma);
        update_flags(a.okl, i, finite2_mask(L.rho, L.p));
        update_flags(a.okr, i, finite2_mask(R.rho, R.p));

        __m256d poison = _mm256_add_pd(_mm256_sub_pd(L.c, L.c), _mm256_sub_pd(R.c, R.c));
        __m256d SL = _mm256_add_pd(vmin(_mm256_sub_pd(L.u, L.c), _mm256_sub_pd(R.u, R.c)), poison);
        __m256d SR = _mm256_add_pd(vmax(_mm256_add_pd(L.u, L.c), _mm256_add_pd(R.u, R.c)), poison);
        __m256d m_left = _mm256_cmp_pd(SL, zero, _CMP_GE_OQ);
        __m256d m_right = _mm256_cmp_pd(SR, zero, _CMP_LE_OQ);

        __m256d f0, f1, f2, f3;
        if constexpr (Hllc) {
            __m256d qL = _mm256_sub_pd(SL, L.u), qR = _mm256_sub_pd(SR, R.u);
            __m256d dL = _mm256_mul_pd(L.rho, qL), dR = _mm256_mul_pd(R.rho, qR);
            __m256d num = _mm256_add_pd(
                _mm256_sub_pd(R.p, L.p),
                _mm256_sub_pd(_mm256_mul_pd(L.u, dL), _mm256_mul_pd(R.u, dR)));
            __m256d den = _mm256_sub_pd(dL, dR);
            __m256d s_star = _mm256_div_pd(num, den);
            __m256d m_sl = _mm256_cmp_pd(s_star, zero, _CMP_GT_OQ);
            __m256d m_sr = _mm256_cmp_pd(s_star, zero, _CMP_LT_OQ);
            StarFlux SLx = star_flux(L, SL, dL, s_star);
            StarFlux SRx = star_flux(R, SR, dR, s_star);
            __m256d half = _mm256_set1_pd(0.5);
            f0 = _mm256_mul_pd(half, _mm256_add_pd(SLx.f0, SRx.f0));
            f1 = _mm256_mul_pd(half, _mm256_add_pd(SLx.f1, SRx.f1));
            f2 = _mm256_mul_pd(half, _mm256_add_pd(SLx.f2, SRx.f2));
            f3 = _mm256_mul_pd(half, _mm256_add_pd(SLx.f3, SRx.f3));
            f0 = select4(select4(f0, SRx.f0, m_sr), SLx.f0, m_sl);
            f1 = select4(select4(f1, SRx.f1, m_sr), SLx.f1, m_sl);
            f2 = select4(select4(f2, SRx.f2, m_sr), SLx.f2, m_sl);
            f3 = select4(select4(f3, SRx.f3, m_sr), SLx.f3, m_sl);
        } else {
            __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_sub_pd(SR, SL));
            __m256d ss = _mm256_mul_pd(SL, SR);
            auto hll1 = [&](__m256d fl, __m256d fr, __m256d ul, __m256d ur) {
                return _mm256_mul_pd(
                    _mm256_add_pd(
                        _mm256_sub_pd(_mm256_mul_pd(SR, fl), _mm256_mul_pd(SL, fr)),
                        _mm256_mul_pd(ss, _mm256_sub_pd(ur, ul))),
                    inv);
            };
            f0 = hll1(L.f0, R.f0, L.rho, R.rho);
            f1 = hll1(L.f1, R.f1, L.mx, R.mx);
            f2 = hll1(L.f2, R.f2, L.my, R.my);
            f3 = hll1(L.f3, R.f3, L.E, R.E);
        }
        f0 = select4(select4(f0, R.f0, m_right), L.f0, m_left);
        f1 = select4(select4(f1, R.f1, m_right), L.f1, m_left);
        f2 = select4(select4(f2, R.f2, m_right), L.f2, m_left);
        f3 = select4(select4(f3, R.f3, m_right), L.f3, m_left);
        _mm256_storeu_pd(a.f[0] + i, f0);
        _mm256_storeu_pd(a.f[1] + i, f1);
        _mm256_storeu_pd(a.f[2] + i, f2);
        _mm256_storeu_pd(a.f[3] + i, f3);
    }
    if (i < a.count) {
        FluxRowArgs tail = a;
        for (int c = 0; c < 4; ++c) {
            tail.ul[c] = a.ul[c] + i;
            tail.ur[c] = a.ur[c] + i;
            tail.f[c] = a.f[c] + i;
        }
        tail.okl = a.okl ? a.okl + i : nullptr;
        tail.okr = a.okr ? a.okr + i : nullptr;
        tail.count = a.count - i;
        if (Hllc)
            scalar::hllc_row(tail);
        else
            scalar::hll_row(tail);
    }
}

}  // namespace

void recon_row(const ReconArgs& a) {
    int i = 0;
    __m256d t[2 * kMaxStencil + 8];
    for (; i + 4 <= a.count; i += 4) {
        const double* p = a.src + a.base + i;
        for (int k = 0; k < a.n; ++k)
            t[k] = _mm256_mul_pd(_mm256_loadu_pd(p + a.off[k]), _mm256_set1_pd(a.w[k]));
        for (int k = 0; k < a.plan->n_ops; ++k)
            t[a.plan->ops[k].dst] = _mm256_add_pd(t[a.plan->ops[k].a], t[a.plan->ops[k].b]);
        _mm256_storeu_pd(a.out + i, t[a.plan->root]);
    }
    for (; i < a.count; ++i)
        a.out[i] = recon_cell(a.src, a.base + i, a.w, a.off, *a.plan, a.n);
}

void hllc_row(const FluxRowArgs& a) { flux_row_impl<true>(a); }
void hll_row(const FluxRowArgs& a) { flux_row_impl<false>(a); }

}  // namespace gpmood::kernels::avx2

#endif  // __x86_64__
