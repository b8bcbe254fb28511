#include "gpmood/stencil.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace gpmood {

int StencilGeometry::index_of(Offset o) const {
    for (int k = 0; k < n; ++k)
        if (offsets[k] == o) return k;
    return -1;
}

namespace {

std::vector<Offset> enumerate_offsets(int ndim, int radius, StencilShape shape) {
    std::vector<Offset> offs;
    offs.push_back({0, 0});
    if (ndim == 1) {
        for (int r = 1; r <= radius; ++r) {
            offs.push_back({-r, 0});
            offs.push_back({r, 0});
        }
        return offs;
    }
    for (int r = 1; r <= radius; ++r) {
        if (shape == StencilShape::diamond) {
            // clockwise from west: W -> N -> E -> S
            for (int k = 0; k < r; ++k) offs.push_back({-r + k, k});
            for (int k = 0; k < r; ++k) offs.push_back({k, r - k});
            for (int k = 0; k < r; ++k) offs.push_back({r - k, -k});
            for (int k = 0; k < r; ++k) offs.push_back({-k, -r + k});
        } else {
            offs.push_back({-r, 0});
            offs.push_back({0, r});
            offs.push_back({r, 0});
            offs.push_back({0, -r});
        }
    }
    return offs;
}

std::vector<int> make_perm(const StencilGeometry& s, Offset (*map)(Offset)) {
    std::vector<int> p(s.n);
    for (int k = 0; k < s.n; ++k) {
        int idx = s.index_of(map(s.offsets[k]));
        if (idx < 0) throw std::logic_error("stencil is not symmetric");
        p[k] = idx;
    }
    return p;
}

}  // namespace

SumPlan build_sum_plan(const std::vector<Offset>& offs) {
    const int n = static_cast<int>(offs.size());
    SumPlan plan;
    plan.n_terms = n;
    int next = n;
    auto emit = [&](int a, int b) {
        plan.ops[plan.n_ops++] = {static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                                  static_cast<uint8_t>(next)};
        return next++;
    };

    // Antipodal pairs (o, -o); key each pair by its sign-canonical member.
    struct PairNode {
        Offset rep;
        int slot;
    };
    std::vector<PairNode> pairs;
    std::vector<bool> used(n, false);
    used[0] = true;  // center
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        Offset o = offs[i];
        int j = -1;
        for (int k = i + 1; k < n; ++k)
            if (offs[k] == Offset{-o.di, -o.dj}) { j = k; break; }
        if (j < 0) throw std::logic_error("stencil lacks antipodal partner");
        used[i] = used[j] = true;
        Offset rep = (o.di > 0 || (o.di == 0 && o.dj > 0)) ? o : Offset{-o.di, -o.dj};
        pairs.push_back({rep, emit(i, j)});
    }

    // Group pairs into mirror/transpose orbits keyed by
    // (ring, max|.|, min|.|), then merge each orbit with a fixed tree.
    std::map<std::array<int, 3>, std::vector<PairNode>> orbits;
    for (const auto& p : pairs) {
        int a = std::abs(p.rep.di), b = std::abs(p.rep.dj);
        orbits[{a + b, std::max(a, b), std::min(a, b)}].push_back(p);
    }

    std::vector<int> orbit_slots;
    for (auto& [key, members] : orbits) {
        // group members sharing the same |di|,|dj| pattern (y-mirror partners)
        std::map<std::array<int, 2>, std::vector<PairNode>> groups;
        for (const auto& m : members)
            groups[{std::abs(m.rep.di), std::abs(m.rep.dj)}].push_back(m);
        std::vector<int> group_slots;
        for (auto& [gk, gm] : groups) {
            std::sort(gm.begin(), gm.end(), [](const PairNode& x, const PairNode& y) {
                return std::array<int, 2>{x.rep.di, x.rep.dj} <
                       std::array<int, 2>{y.rep.di, y.rep.dj};
            });
            int slot = gm[0].slot;
            for (size_t k = 1; k < gm.size(); ++k) slot = emit(slot, gm[k].slot);
            group_slots.push_back(slot);
        }
        int slot = group_slots[0];
        for (size_t k = 1; k < group_slots.size(); ++k) slot = emit(slot, group_slots[k]);
        orbit_slots.push_back(slot);
    }

    int acc = 0;  // center term
    for (int s : orbit_slots) acc = emit(acc, s);
    plan.root = static_cast<uint8_t>(acc);
    plan.n_slots = next;
    return plan;
}

StencilGeometry build_stencil(int ndim, int radius, StencilShape shape) {
    if (radius < 1 || radius > 3) throw std::invalid_argument("stencil radius must be 1..3");
    if (ndim != 1 && ndim != 2) throw std::invalid_argument("ndim must be 1 or 2");
    StencilGeometry s;
    s.ndim = ndim;
    s.radius = radius;
    s.shape = shape;
    s.offsets = enumerate_offsets(ndim, radius, shape);
    s.n = static_cast<int>(s.offsets.size());
    s.perm_mirror_x = make_perm(s, [](Offset o) { return Offset{-o.di, o.dj}; });
    s.perm_mirror_y = make_perm(s, [](Offset o) { return Offset{o.di, -o.dj}; });
    if (ndim == 2) s.perm_swap = make_perm(s, [](Offset o) { return Offset{o.dj, o.di}; });
    s.plan = build_sum_plan(s.offsets);
    return s;
}

StencilGeometry build_point_stencil(int ndim) {
    StencilGeometry s;
    s.ndim = ndim;
    s.radius = 0;
    s.n = 1;
    s.offsets = {{0, 0}};
    s.perm_mirror_x = {0};
    s.perm_mirror_y = {0};
    if (ndim == 2) s.perm_swap = {0};
    s.plan.n_terms = 1;
    s.plan.n_slots = 1;
    s.plan.root = 0;
    return s;
}

}  // namespace gpmood
