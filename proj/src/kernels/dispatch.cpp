#include <cstdlib>
#include <cstring>

#include "gpmood/kernels.hpp"

namespace gpmood::kernels {

namespace {

Variant detect() {
    if (const char* e = std::getenv("GPMOOD_KERNELS")) {
        if (std::strcmp(e, "scalar") == 0) return Variant::scalar;
        if (std::strcmp(e, "avx2") == 0) return Variant::avx2;
    }
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2")) return Variant::avx2;
#endif
    return Variant::scalar;
}

Variant g_variant = detect();

}  // namespace

Variant active_variant() { return g_variant; }
void force_variant(Variant v) { g_variant = v; }

bool avx2_available() {
#if defined(__x86_64__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

void recon_row(const ReconArgs& a) {
#if defined(__x86_64__)
    if (g_variant == Variant::avx2) {
        avx2::recon_row(a);
        return;
    }
#endif
    scalar::recon_row(a);
}

void hllc_row(const FluxRowArgs& a) {
#if defined(__x86_64__)
    if (g_variant == Variant::avx2) {
        avx2::hllc_row(a);
        return;
    }
#endif
    scalar::hllc_row(a);
}

void hll_row(const FluxRowArgs& a) {
#if defined(__x86_64__)
    if (g_variant == Variant::avx2) {
        avx2::hll_row(a);
        return;
    }
#endif
    scalar::hll_row(a);
}

}  // namespace gpmood::kernels
