#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gpmood/kernels.hpp"
#include "gpmood/prediction.hpp"

using namespace gpmood;
namespace kn = gpmood::kernels;

namespace {

struct RowFixture {
    std::vector<double> ul[4], ur[4], fa[4], fb[4];
    std::vector<uint8_t> okla, oklb, okra, okrb;
    int n;

    explicit RowFixture(int count, unsigned seed, bool poison) : n(count) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> pos(0.05, 10.0), vel(-6.0, 6.0);
        std::uniform_int_distribution<int> coin(0, 19);
        for (int c = 0; c < 4; ++c) {
            ul[c].resize(n);
            ur[c].resize(n);
            fa[c].assign(n, 0.0);
            fb[c].assign(n, 0.0);
        }
        for (int i = 0; i < n; ++i) {
            double rho = pos(rng), u = vel(rng), v = vel(rng), p = pos(rng);
            ul[0][i] = rho;
            ul[1][i] = rho * u;
            ul[2][i] = rho * v;
            ul[3][i] = p / 0.4 + 0.5 * rho * (u * u + v * v);
            rho = pos(rng);
            u = vel(rng);
            v = vel(rng);
            p = pos(rng);
            ur[0][i] = rho;
            ur[1][i] = rho * u;
            ur[2][i] = rho * v;
            ur[3][i] = p / 0.4 + 0.5 * rho * (u * u + v * v);
            if (poison && coin(rng) == 0) ul[3][i] = std::nan("");
            if (poison && coin(rng) == 0) ur[0][i] = HUGE_VAL;
        }
        okla.assign(n, 1);
        oklb.assign(n, 1);
        okra.assign(n, 1);
        okrb.assign(n, 1);
    }

    kn::FluxRowArgs args(bool second) {
        kn::FluxRowArgs a;
        for (int c = 0; c < 4; ++c) {
            a.ul[c] = ul[c].data();
            a.ur[c] = ur[c].data();
            a.f[c] = (second ? fb : fa)[c].data();
        }
        a.okl = (second ? oklb : okla).data();
        a.okr = (second ? okrb : okra).data();
        a.count = n;
        a.gamma = 1.4;
        return a;
    }
};

bool bits_equal(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return a == b && std::signbit(a) == std::signbit(b);
}

}  // namespace

TEST_CASE("scalar and vector flux rows agree bit for bit") {
    if (!kn::avx2_available()) {
        MESSAGE("avx2 not available, skipping");
        return;
    }
    for (bool poison : {false, true}) {
        for (int count : {1, 3, 4, 7, 64, 65}) {
            RowFixture fx(count, 42 + count + (poison ? 1000 : 0), poison);
            auto a = fx.args(false);
            kn::scalar::hllc_row(a);
            auto b = fx.args(true);
            kn::avx2::hllc_row(b);
            for (int c = 0; c < 4; ++c)
                for (int i = 0; i < count; ++i) CHECK(bits_equal(fx.fa[c][i], fx.fb[c][i]));
            for (int i = 0; i < count; ++i) {
                CHECK(fx.okla[i] == fx.oklb[i]);
                CHECK(fx.okra[i] == fx.okrb[i]);
            }
            RowFixture fy(count, 77 + count, poison);
            auto c1 = fy.args(false);
            kn::scalar::hll_row(c1);
            auto c2 = fy.args(true);
            kn::avx2::hll_row(c2);
            for (int c = 0; c < 4; ++c)
                for (int i = 0; i < count; ++i) CHECK(bits_equal(fy.fa[c][i], fy.fb[c][i]));
        }
    }
}

TEST_CASE("scalar and vector reconstruction rows agree bit for bit") {
    if (!kn::avx2_available()) {
        MESSAGE("avx2 not available, skipping");
        return;
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-4.0, 9.0);
    for (int radius : {1, 2, 3}) {
        KernelConfig cfg{12.0, 1.0, 1.0, 2};
        auto set = build_prediction_set(
            static_cast<SchemeId>(static_cast<int>(SchemeId::gp_r1) + radius - 1),
            StencilShape::diamond, cfg);
        int stride = 40;
        std::vector<double> src(stride * 20);
        for (auto& v : src) v = dist(rng);
        std::vector<int32_t> off(set.stencil.n);
        for (int k = 0; k < set.stencil.n; ++k)
            off[k] = set.stencil.offsets[k].dj * stride + set.stencil.offsets[k].di;
        for (int count : {1, 4, 5, 29}) {
            std::vector<double> oa(count), ob(count);
            kn::ReconArgs ra{src.data(), set.weights[face_east][0].data(), off.data(),
                             &set.stencil.plan, set.stencil.n, 10 * stride + 5, count,
                             oa.data()};
            kn::scalar::recon_row(ra);
            kn::ReconArgs rb = ra;
            rb.out = ob.data();
            kn::avx2::recon_row(rb);
            for (int i = 0; i < count; ++i) CHECK(oa[i] == ob[i]);
            // both equal the per-cell reference
            for (int i = 0; i < count; ++i)
                CHECK(oa[i] == kn::recon_cell(src.data(), 10 * stride + 5 + i,
                                              set.weights[face_east][0].data(), off.data(),
                                              set.stencil.plan, set.stencil.n));
        }
    }
}

TEST_CASE("variant dispatch can be forced") {
    auto saved = kn::active_variant();
    kn::force_variant(kn::Variant::scalar);
    CHECK(kn::active_variant() == kn::Variant::scalar);
    kn::force_variant(saved);
}
