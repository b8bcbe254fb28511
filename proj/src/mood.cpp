#include "gpmood/mood.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gpmood/kernels.hpp"

namespace gpmood {

MoodSolver::MoodSolver(const Mesh& mesh, const BoundaryCondition& bc, double gamma,
                       RiemannSolver rs, MethodId method, StencilShape shape, double ell,
                       int q_override, const DetectionConfig& det)
    : mesh_(mesh), bc_(bc), gamma_(gamma), rs_(rs), det_(det), ladder_(cascade_ladder(method)) {
    validate_bc(mesh_, bc_);
    KernelConfig kc{ell, mesh_.dx, mesh_.dy, mesh_.ndim};
    for (SchemeId s : ladder_) {
        auto t = std::make_unique<SchemeTables>();
        t->id = s;
        int q = 0;
        if (q_override > 0 && s != SchemeId::fog) q = q_override;
        t->set = build_prediction_set(s, shape, kc, q);
        t->qr = quadrature_rule(t->set.q);
        t->off.resize(t->set.stencil.n);
        for (int k = 0; k < t->set.stencil.n; ++k)
            t->off[k] = t->set.stencil.offsets[k].dj * mesh_.nxt + t->set.stencil.offsets[k].di;
        tables_.push_back(std::move(t));
    }
    // curvature operator: the ladder-top GP stencil, or the centered
    // 5-point second difference for polynomial ladders / cross-checking
    SchemeId top = ladder_.front();
    bool gp_top = top == SchemeId::gp_r1 || top == SchemeId::gp_r2 || top == SchemeId::gp_r3;
    if (gp_top && !det_.u2_centered) {
        u2_tables_ = nullptr;  // use tables_[0]
    } else {
        auto t = std::make_unique<SchemeTables>();
        t->id = SchemeId::poly3;
        t->set = build_prediction_set(SchemeId::poly3, StencilShape::diamond, kc, 0);
        t->qr = quadrature_rule(t->set.q);
        t->off.resize(t->set.stencil.n);
        for (int k = 0; k < t->set.stencil.n; ++k)
            t->off[k] = t->set.stencil.offsets[k].dj * mesh_.nxt + t->set.stencil.offsets[k].di;
        u2_tables_ = std::move(t);
    }
    delta_u2_ = mesh_.ndim == 2 ? std::min(mesh_.dx, mesh_.dy) : mesh_.dx;
    double dx3 = mesh_.dx * mesh_.dx * mesh_.dx;
    double dy3 = mesh_.dy * mesh_.dy * mesh_.dy;
    plateau_eps_ = mesh_.ndim == 2 ? std::min(dx3, dy3) : dx3;
    periodic_x_ = bc_.side[0].type == BCType::periodic;
    periodic_y_ = mesh_.ndim == 2 && bc_.side[2].type == BCType::periodic;

    const int nc = mesh_.ncells();
    u_.assign(nc, 0.0);
    v_.assign(nc, 0.0);
    p_.assign(nc, 0.0);
    dmp_lo_.assign(nc, 0.0);
    dmp_hi_.assign(nc, 0.0);
    csd_ok_.assign(nc, 0);
    plateau_ok_.assign(nc, 0);
    u2_cache_.assign(nc, -1);
    order_.assign(nc, 0);
    troubled_.assign(nc, 0);
    const int nfx = (mesh_.nx + 1) * mesh_.ny;
    const int nfy = mesh_.ndim == 2 ? mesh_.nx * (mesh_.ny + 1) : 0;
    for (int c = 0; c < 4; ++c) {
        fxsum_[c].assign(nfx, 0.0);
        fysum_[c].assign(std::max(nfy, 1), 0.0);
        div_[c].assign(nc, 0.0);
    }
    okx_[0].assign(nfx, 1);
    okx_[1].assign(nfx, 1);
    oky_[0].assign(std::max(nfy, 1), 1);
    oky_[1].assign(std::max(nfy, 1), 1);
    int rowlen = mesh_.nxt + 2;
    for (int c = 0; c < 4; ++c) {
        row_l_[c].assign(rowlen, 0.0);
        row_r_[c].assign(rowlen, 0.0);
        for (int m = 0; m < 4; ++m) row_f_[m][c].assign(rowlen, 0.0);
    }
    stamp_fx_.assign(nfx, 0);
    stamp_fy_.assign(std::max(nfy, 1), 0);
    stamp_cell_.assign(nc, 0);
}

int MoodSolver::scheme_order_at(int ii, int jj) const {
    int idx = mesh_.id(mesh_.gx() + ii, mesh_.gy() + jj);
    return scheme_formal_order(ladder_[order_[idx]]);
}

void MoodSolver::precompute_stage(Field& W, double t) {
    fill_ghosts(W, mesh_, bc_, t, gamma_);
    const int nc = mesh_.ncells();
    const double* rho = W.data(0);
    const double* mx = W.data(1);
    const double* my = W.data(2);
    const double* E = W.data(3);
    for (int i = 0; i < nc; ++i) {
        ConsState c{rho[i], mx[i], my[i], E[i]};
        PrimState p = cons_to_prim(c, gamma_);
        u_[i] = p.u;
        v_[i] = p.v;
        p_[i] = p.p;
    }
    const int g = mesh_.gx(), gy = mesh_.gy();
    const double inv2dx = 1.0 / (2.0 * mesh_.dx);
    const double inv2dy = 1.0 / (2.0 * mesh_.dy);
    const bool twod = mesh_.ndim == 2;
    for (int jj = 0; jj < mesh_.ny; ++jj) {
        for (int ii = 0; ii < mesh_.nx; ++ii) {
            int idx = mesh_.id(g + ii, gy + jj);
            int ixp = idx + 1, ixm = idx - 1;
            int iyp = idx + mesh_.nxt, iym = idx - mesh_.nxt;
            double lo = rho[idx], hi = rho[idx];
            lo = std::min(lo, std::min(rho[ixm], rho[ixp]));
            hi = std::max(hi, std::max(rho[ixm], rho[ixp]));
            if (twod) {
                lo = std::min(lo, std::min(rho[iym], rho[iyp]));
                hi = std::max(hi, std::max(rho[iym], rho[iyp]));
            }
            dmp_lo_[idx] = lo;
            dmp_hi_[idx] = hi;
            plateau_ok_[idx] = detect::plateau(hi - lo, plateau_eps_) ? 1 : 0;
            if (det_.csd_enabled) {
                double divv = (u_[ixp] - u_[ixm]) * inv2dx;
                double gradp = std::abs(p_[ixp] - p_[ixm]) * inv2dx /
                               std::min(p_[ixp], p_[ixm]);
                if (twod) {
                    divv += (v_[iyp] - v_[iym]) * inv2dy;
                    gradp += std::abs(p_[iyp] - p_[iym]) * inv2dy /
                             std::min(p_[iyp], p_[iym]);
                }
                csd_ok_[idx] =
                    detect::csd_weak(divv, gradp, det_.sigma_v, det_.sigma_p) ? 1 : 0;
            } else {
                csd_ok_[idx] = 0;
            }
            u2_cache_[idx] = -1;
            order_[idx] = 0;
            troubled_[idx] = 0;
        }
    }
    // ghost ring of the order map starts at ladder top as well
    for (int i = 0; i < nc; ++i)
        if (order_[i] != 0) order_[i] = 0;
}

void MoodSolver::batch_pass(const Field& W) {
    const int g = mesh_.gx(), gy = mesh_.gy();
    const int nx = mesh_.nx, ny = mesh_.ny;
    const SchemeTables& tab = *tables_[0];
    const int q = tab.qr.q;
    const bool twod = mesh_.ndim == 2;

    // x faces
    for (int jj = 0; jj < ny; ++jj) {
        int j = gy + jj;
        int fbase = fx_index(0, jj);
        std::fill_n(&okx_[0][fbase], nx + 1, static_cast<uint8_t>(1));
        std::fill_n(&okx_[1][fbase], nx + 1, static_cast<uint8_t>(1));
        for (int m = 0; m < q; ++m) {
            for (int c = 0; c < 4; ++c) {
                auto opl = tab.op(face_east, m);
                kernels::ReconArgs ra{W.data(c), opl.w,      opl.off, opl.plan,
                                      opl.n,     mesh_.id(g - 1, j), nx + 1,  row_l_[c].data()};
                kernels::recon_row(ra);
                auto opr = tab.op(face_west, m);
                kernels::ReconArgs rb{W.data(c), opr.w,      opr.off, opr.plan,
                                      opr.n,     mesh_.id(g, j),     nx + 1,  row_r_[c].data()};
                kernels::recon_row(rb);
            }
            kernels::FluxRowArgs fa;
            for (int c = 0; c < 4; ++c) {
                fa.ul[c] = row_l_[c].data();
                fa.ur[c] = row_r_[c].data();
                fa.f[c] = row_f_[m][c].data();
            }
            fa.okl = &okx_[0][fbase];
            fa.okr = &okx_[1][fbase];
            fa.count = nx + 1;
            fa.gamma = gamma_;
            rs_ == RiemannSolver::hllc ? kernels::hllc_row(fa) : kernels::hll_row(fa);
        }
        for (int c = 0; c < 4; ++c) {
            double* sum = &fxsum_[c][fbase];
            for (int i = 0; i <= nx; ++i) {
                double t[4];
                for (int m = 0; m < q; ++m) t[m] = tab.qr.w[m] * row_f_[m][c][i];
                sum[i] = symmetric_qsum(t, q);
            }
        }
    }

    // y faces
    if (twod) {
        for (int fj = 0; fj <= ny; ++fj) {
            int jlo = gy - 1 + fj, jhi = gy + fj;
            int fbase = fy_index(0, fj);
            std::fill_n(&oky_[0][fbase], nx, static_cast<uint8_t>(1));
            std::fill_n(&oky_[1][fbase], nx, static_cast<uint8_t>(1));
            for (int m = 0; m < q; ++m) {
                for (int c = 0; c < 4; ++c) {
                    auto opl = tab.op(face_north, m);
                    kernels::ReconArgs ra{W.data(c), opl.w, opl.off, opl.plan,
                                          opl.n,     mesh_.id(g, jlo), nx, row_l_[c].data()};
                    kernels::recon_row(ra);
                    auto opr = tab.op(face_south, m);
                    kernels::ReconArgs rb{W.data(c), opr.w, opr.off, opr.plan,
                                          opr.n,     mesh_.id(g, jhi), nx, row_r_[c].data()};
                    kernels::recon_row(rb);
                }
                kernels::FluxRowArgs fa;
                // swap momentum rows so the x-solver serves the y-direction
                fa.ul[0] = row_l_[0].data();
                fa.ul[1] = row_l_[2].data();
                fa.ul[2] = row_l_[1].data();
                fa.ul[3] = row_l_[3].data();
                fa.ur[0] = row_r_[0].data();
                fa.ur[1] = row_r_[2].data();
                fa.ur[2] = row_r_[1].data();
                fa.ur[3] = row_r_[3].data();
                fa.f[0] = row_f_[m][0].data();
                fa.f[1] = row_f_[m][2].data();
                fa.f[2] = row_f_[m][1].data();
                fa.f[3] = row_f_[m][3].data();
                fa.okl = &oky_[0][fbase];
                fa.okr = &oky_[1][fbase];
                fa.count = nx;
                fa.gamma = gamma_;
                rs_ == RiemannSolver::hllc ? kernels::hllc_row(fa) : kernels::hll_row(fa);
            }
            for (int c = 0; c < 4; ++c) {
                double* sum = &fysum_[c][fbase];
                for (int i = 0; i < nx; ++i) {
                    double t[4];
                    for (int m = 0; m < q; ++m) t[m] = tab.qr.w[m] * row_f_[m][c][i];
                    sum[i] = symmetric_qsum(t, q);
                }
            }
        }
    }

    for (int jj = 0; jj < ny; ++jj)
        for (int ii = 0; ii < nx; ++ii) recompute_divergence(ii, jj);
}

void MoodSolver::recompute_x_face(const Field& W, int fi, int jj) {
    const int g = mesh_.gx(), j = mesh_.gy() + jj;
    int iL = g + fi - 1, iR = g + fi;
    int lad = detect::edp1_ladder_index(order_[mesh_.id(iL, j)], order_[mesh_.id(iR, j)]);
    const SchemeTables& tab = *tables_[lad];
    const int q = tab.qr.q;
    uint8_t okl = 1, okr = 1;
    double fm[4][4];
    for (int m = 0; m < q; ++m) {
        double sl[4], sr[4];
        for (int c = 0; c < 4; ++c) {
            auto opl = tab.op(face_east, m);
            sl[c] = kernels::recon_cell(W.data(c), mesh_.id(iL, j), opl.w, opl.off,
                                        *opl.plan, opl.n);
            auto opr = tab.op(face_west, m);
            sr[c] = kernels::recon_cell(W.data(c), mesh_.id(iR, j), opr.w, opr.off,
                                        *opr.plan, opr.n);
        }
        ConsState UL{sl[0], sl[1], sl[2], sl[3]}, UR{sr[0], sr[1], sr[2], sr[3]};
        PrimState PL = cons_to_prim(UL, gamma_), PR = cons_to_prim(UR, gamma_);
        okl &= detect::cad_values(PL.rho, PL.p) ? 1 : 0;
        okr &= detect::cad_values(PR.rho, PR.p) ? 1 : 0;
        std::array<double, 4> F = rs_ == RiemannSolver::hllc
                                      ? hllc_flux_x(UL, PL, UR, PR, gamma_)
                                      : hll_flux_x(UL, PL, UR, PR, gamma_);
        for (int c = 0; c < 4; ++c) fm[m][c] = F[c];
    }
    int fidx = fx_index(fi, jj);
    for (int c = 0; c < 4; ++c) {
        double t[4];
        for (int m = 0; m < q; ++m) t[m] = tab.qr.w[m] * fm[m][c];
        fxsum_[c][fidx] = symmetric_qsum(t, q);
    }
    okx_[0][fidx] = okl;
    okx_[1][fidx] = okr;
}

void MoodSolver::recompute_y_face(const Field& W, int ii, int fj) {
    const int g = mesh_.gx(), gy = mesh_.gy();
    int i = g + ii;
    int jL = gy + fj - 1, jR = gy + fj;
    int lad = detect::edp1_ladder_index(order_[mesh_.id(i, jL)], order_[mesh_.id(i, jR)]);
    const SchemeTables& tab = *tables_[lad];
    const int q = tab.qr.q;
    uint8_t okl = 1, okr = 1;
    double fm[4][4];
    for (int m = 0; m < q; ++m) {
        double sl[4], sr[4];
        for (int c = 0; c < 4; ++c) {
            auto opl = tab.op(face_north, m);
            sl[c] = kernels::recon_cell(W.data(c), mesh_.id(i, jL), opl.w, opl.off,
                                        *opl.plan, opl.n);
            auto opr = tab.op(face_south, m);
            sr[c] = kernels::recon_cell(W.data(c), mesh_.id(i, jR), opr.w, opr.off,
                                        *opr.plan, opr.n);
        }
        ConsState UL{sl[0], sl[1], sl[2], sl[3]}, UR{sr[0], sr[1], sr[2], sr[3]};
        {
            // flag check happens on the unswapped states
            PrimState PL = cons_to_prim(UL, gamma_), PR = cons_to_prim(UR, gamma_);
            okl &= detect::cad_values(PL.rho, PL.p) ? 1 : 0;
            okr &= detect::cad_values(PR.rho, PR.p) ? 1 : 0;
        }
        std::array<double, 4> F = riemann_flux(rs_, 1, UL, UR, gamma_);
        for (int c = 0; c < 4; ++c) fm[m][c] = F[c];
    }
    int fidx = fy_index(ii, fj);
    for (int c = 0; c < 4; ++c) {
        double t[4];
        for (int m = 0; m < q; ++m) t[m] = tab.qr.w[m] * fm[m][c];
        fysum_[c][fidx] = symmetric_qsum(t, q);
    }
    oky_[0][fidx] = okl;
    oky_[1][fidx] = okr;
}

void MoodSolver::recompute_divergence(int ii, int jj) {
    const double inv_dx = 1.0 / mesh_.dx;
    const double inv_dy = 1.0 / mesh_.dy;
    int idx = mesh_.id(mesh_.gx() + ii, mesh_.gy() + jj);
    for (int c = 0; c < 4; ++c) {
        double dv = (fxsum_[c][fx_index(ii + 1, jj)] - fxsum_[c][fx_index(ii, jj)]) * inv_dx;
        if (mesh_.ndim == 2)
            dv += (fysum_[c][fy_index(ii, jj + 1)] - fysum_[c][fy_index(ii, jj)]) * inv_dy;
        div_[c][idx] = dv;
    }
}

bool MoodSolver::u2_ok(const Field& W, int ii, int jj) {
    const SchemeTables& tab = u2_tables_ ? *u2_tables_ : *tables_[0];
    const double* rho = W.data(0);
    int idx = mesh_.id(mesh_.gx() + ii, mesh_.gy() + jj);
    int nb[5];
    int nnb = 0;
    nb[nnb++] = idx;
    nb[nnb++] = idx - 1;
    nb[nnb++] = idx + 1;
    if (mesh_.ndim == 2) {
        nb[nnb++] = idx - mesh_.nxt;
        nb[nnb++] = idx + mesh_.nxt;
    }
    for (int d = 0; d < mesh_.ndim; ++d) {
        auto op = tab.d2op(d);
        double cmin = 0.0, cmax = 0.0;
        for (int k = 0; k < nnb; ++k) {
            double cv = kernels::recon_cell(rho, nb[k], op.w, op.off, *op.plan, op.n);
            if (k == 0) {
                cmin = cmax = cv;
            } else {
                cmin = std::min(cmin, cv);
                cmax = std::max(cmax, cv);
            }
        }
        if (!detect::u2_smooth_extremum(cmin, cmax, delta_u2_)) return false;
    }
    return true;
}

MoodSolver::Verdict MoodSolver::detect_cell(const Field& W, const Field& cand, int ii,
                                            int jj, MoodStats& st) {
    int idx = mesh_.id(mesh_.gx() + ii, mesh_.gy() + jj);
    ConsState c{cand.comp[0][idx], cand.comp[1][idx], cand.comp[2][idx], cand.comp[3][idx]};
    PrimState p = cons_to_prim(c, gamma_);
    // the cell's own reconstructed face states
    bool own_ok = okx_[0][fx_index(ii + 1, jj)] && okx_[1][fx_index(ii, jj)];
    if (mesh_.ndim == 2)
        own_ok = own_ok && oky_[0][fy_index(ii, jj + 1)] && oky_[1][fy_index(ii, jj)];
    if (!own_ok) {
        ++st.cad_fail;
        return Verdict::fail;
    }
    if (!detect::cad_values(p.rho, p.p)) {
        // a non-finite candidate inherited from a neighbor's invalid face
        // state resolves once that neighbor cascades and the face is
        // recomputed; the verdict waits for the recompute
        bool neighbor_bad = !okx_[1][fx_index(ii + 1, jj)] || !okx_[0][fx_index(ii, jj)];
        if (mesh_.ndim == 2)
            neighbor_bad = neighbor_bad || !oky_[1][fy_index(ii, jj + 1)] ||
                           !oky_[0][fy_index(ii, jj)];
        if (neighbor_bad) return Verdict::defer;
        ++st.cad_fail;
        return Verdict::fail;
    }
    if (!detect::pad(p.rho, p.p)) {
        ++st.pad_fail;
        return Verdict::fail;
    }
    if (det_.csd_enabled && csd_ok_[idx]) {
        ++st.csd_accept;
        return Verdict::accept;
    }
    if (plateau_ok_[idx]) {
        ++st.plateau_accept;
        return Verdict::accept;
    }
    if (detect::dmp(dmp_lo_[idx], dmp_hi_[idx], p.rho)) return Verdict::accept;
    int8_t& cache = u2_cache_[idx];
    if (cache < 0) cache = u2_ok(W, ii, jj) ? 1 : 0;
    if (cache == 1) {
        ++st.u2_reinstate;
        return Verdict::accept;
    }
    ++st.dmp_fail;
    return Verdict::fail;
}

void MoodSolver::push_dirty_from_failure(int ii, int jj) {
    auto push_cell = [&](int ci, int cj) {
        if (ci < 0) ci = periodic_x_ ? ci + mesh_.nx : -1;
        if (ci >= mesh_.nx) ci = periodic_x_ ? ci - mesh_.nx : -1;
        if (cj < 0) cj = periodic_y_ ? cj + mesh_.ny : (mesh_.ndim == 1 ? 0 : -1);
        if (cj >= mesh_.ny && mesh_.ndim == 2) cj = periodic_y_ ? cj - mesh_.ny : -1;
        if (ci < 0 || cj < 0 || cj >= mesh_.ny) return;
        int idx = mesh_.id(mesh_.gx() + ci, mesh_.gy() + cj);
        if (stamp_cell_[idx] != stamp_) {
            stamp_cell_[idx] = stamp_;
            dirty_cells_.push_back(ci + cj * mesh_.nx);
        }
    };
    auto push_fx = [&](int fi, int fj) {
        int fidx = fx_index(fi, fj);
        if (stamp_fx_[fidx] != stamp_) {
            stamp_fx_[fidx] = stamp_;
            dirty_fx_.push_back(fidx);
        }
    };
    auto push_fy = [&](int fi, int fj) {
        int fidx = fy_index(fi, fj);
        if (stamp_fy_[fidx] != stamp_) {
            stamp_fy_[fidx] = stamp_;
            dirty_fy_.push_back(fidx);
        }
    };
    push_cell(ii, jj);
    push_cell(ii - 1, jj);
    push_cell(ii + 1, jj);
    push_fx(ii, jj);
    push_fx(ii + 1, jj);
    if (periodic_x_) {
        if (ii == 0) push_fx(mesh_.nx, jj);
        if (ii == mesh_.nx - 1) push_fx(0, jj);
    }
    if (mesh_.ndim == 2) {
        push_cell(ii, jj - 1);
        push_cell(ii, jj + 1);
        push_fy(ii, jj);
        push_fy(ii, jj + 1);
        if (periodic_y_) {
            if (jj == 0) push_fy(ii, mesh_.ny);
            if (jj == mesh_.ny - 1) push_fy(ii, 0);
        }
    }
}

void MoodSolver::stage_update(Field& W, const Field& base, double coef, double t,
                              Field& cand, MoodStats& stats) {
    precompute_stage(W, t);
    batch_pass(W);
    const int nx = mesh_.nx, ny = mesh_.ny;
    const int g = mesh_.gx(), gy = mesh_.gy();
    const double mcoef = coef;
    // form all candidates from the divergences
    for (int c = 0; c < 4; ++c) {
        const double* b = base.data(c);
        const double* dv = div_[c].data();
        double* out = cand.data(c);
        for (int jj = 0; jj < ny; ++jj) {
            int row = mesh_.id(g, gy + jj);
            for (int i = 0; i < nx; ++i) out[row + i] = b[row + i] - mcoef * dv[row + i];
        }
    }

    fail_list_.clear();
    std::vector<int> defer_list;
    for (int jj = 0; jj < ny; ++jj)
        for (int ii = 0; ii < nx; ++ii) {
            if (ladder_[order_[mesh_.id(g + ii, gy + jj)]] == SchemeId::fog) continue;
            Verdict v = detect_cell(W, cand, ii, jj, stats);
            if (v == Verdict::fail) fail_list_.push_back(ii + jj * nx);
            if (v == Verdict::defer) defer_list.push_back(ii + jj * nx);
        }
    stats.iterations = 1;

    // A failing cell cascades and re-enters the chain at its new order.
    // Cells sharing a face with it are recomputed for flux consistency but
    // keep their verdict; only cells whose verdict was deferred (candidate
    // poisoned through a neighbor's invalid face state) are re-examined
    // once the neighbor has cascaded, so the loop depth stays bounded by
    // the ladder.
    long max_iters = 8 + 2 * static_cast<long>(ladder_.size());
    std::vector<int> retest;
    while (!fail_list_.empty()) {
        if (++stats.iterations > max_iters)
            throw std::logic_error("detection loop failed to settle");
        ++stamp_;
        dirty_cells_.clear();
        dirty_fx_.clear();
        dirty_fy_.clear();
        for (int cell : fail_list_) {
            int ii = cell % nx, jj = cell / nx;
            int idx = mesh_.id(g + ii, gy + jj);
            if (order_[idx] + 1 >= static_cast<int>(ladder_.size()))
                throw std::logic_error("attempted to decrement below the safe scheme");
            ++order_[idx];
            if (!troubled_[idx]) {
                troubled_[idx] = 1;
                ++stats.troubled;
            }
        }
        fill_order_ghosts(order_, mesh_, bc_);
        for (int cell : fail_list_) push_dirty_from_failure(cell % nx, cell / nx);
        for (int fidx : dirty_fx_) recompute_x_face(W, fidx % (nx + 1), fidx / (nx + 1));
        for (int fidx : dirty_fy_) recompute_y_face(W, fidx % nx, fidx / nx);
        for (int cell : dirty_cells_) {
            int ii = cell % nx, jj = cell / nx;
            recompute_divergence(ii, jj);
            int idx = mesh_.id(g + ii, gy + jj);
            for (int c = 0; c < 4; ++c)
                cand.comp[c][idx] = base.comp[c][idx] - mcoef * div_[c][idx];
        }
        retest.swap(fail_list_);
        fail_list_.clear();
        retest.insert(retest.end(), defer_list.begin(), defer_list.end());
        defer_list.clear();
        for (int cell : retest) {
            int ii = cell % nx, jj = cell / nx;
            if (ladder_[order_[mesh_.id(g + ii, gy + jj)]] == SchemeId::fog) continue;
            Verdict v = detect_cell(W, cand, ii, jj, stats);
            if (v == Verdict::fail) fail_list_.push_back(cell);
            if (v == Verdict::defer) defer_list.push_back(cell);
        }
    }
    if (!defer_list.empty()) throw std::logic_error("deferred cells left unresolved");

    for (int jj = 0; jj < ny; ++jj)
        for (int ii = 0; ii < nx; ++ii)
            ++stats.order_count[order_[mesh_.id(g + ii, gy + jj)]];
}

}  // namespace gpmood
