#include "gpmood/prediction.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "gpmood/gp_kernel.hpp"

namespace gpmood {

namespace {

using ddvec = std::vector<dd>;

struct DDSigma {
    dd sx, sy;  // ell / dx, ell / dy
    dd ell;
};

DDSigma make_sigma(const KernelConfig& cfg) {
    DDSigma s;
    s.ell = dd(cfg.ell);
    s.sx = s.ell / dd(cfg.dx);
    s.sy = s.ell / dd(cfg.dy);
    return s;
}

// Quadrature nodes on [-1/2,1/2] in extended precision, descending order.
std::vector<dd> qpt_nodes_dd(int q) {
    std::vector<dd> g(q);
    switch (q) {
        case 1:
            g[0] = dd(0.0);
            break;
        case 2:
            g[0] = dd(1.0) / (dd(2.0) * dd_sqrt(dd(3.0)));
            g[1] = -g[0];
            break;
        case 3:
            g[0] = dd(0.5) * dd_sqrt(dd(3.0) / dd(5.0));
            g[1] = dd(0.0);
            g[2] = -g[0];
            break;
        case 4: {
            dd s = dd_sqrt(dd(6.0) / dd(5.0));
            g[0] = dd(0.5) * dd_sqrt(dd(3.0) / dd(7.0) + dd(2.0) / dd(7.0) * s);
            g[1] = dd(0.5) * dd_sqrt(dd(3.0) / dd(7.0) - dd(2.0) / dd(7.0) * s);
            g[2] = -g[1];
            g[3] = -g[0];
            break;
        }
        default:
            throw std::invalid_argument("quadrature q must be 1..4");
    }
    return g;
}

// t* for a point at (px, py) in cell-width units relative to the stencil
// center cell.
ddvec build_pred_rhs(const StencilGeometry& st, const DDSigma& sg, const dd& px,
                     const dd& py) {
    ddvec t(st.n);
    for (int k = 0; k < st.n; ++k) {
        dd fx = pred_factor_1d(px - dd(static_cast<double>(st.offsets[k].di)), sg.sx);
        if (st.ndim == 2) {
            dd fy = pred_factor_1d(py - dd(static_cast<double>(st.offsets[k].dj)), sg.sy);
            t[k] = fx * fy;
        } else {
            t[k] = fx;
        }
    }
    return t;
}

// d^2 t*/d eta^2 at the cell center, eta along direction dir (0=x, 1=y).
ddvec build_d2_rhs(const StencilGeometry& st, const DDSigma& sg, int dir) {
    ddvec t(st.n);
    for (int k = 0; k < st.n; ++k) {
        dd dx_off(-static_cast<double>(st.offsets[k].di));
        dd dy_off(-static_cast<double>(st.offsets[k].dj));
        if (dir == 0) {
            dd f = second_derivative_factor_1d(dx_off, sg.sx, sg.ell);
            if (st.ndim == 2) f = f * pred_factor_1d(dy_off, sg.sy);
            t[k] = f;
        } else {
            dd f = second_derivative_factor_1d(dy_off, sg.sy, sg.ell);
            t[k] = f * pred_factor_1d(dx_off, sg.sx);
        }
    }
    return t;
}

std::array<double, kMaxStencil> truncate(const ddvec& z) {
    std::array<double, kMaxStencil> out{};
    for (size_t k = 0; k < z.size(); ++k) out[k] = z[k].to_double();
    return out;
}

ddvec permuted(const ddvec& z, const std::vector<int>& perm) {
    ddvec out(z.size());
    for (size_t k = 0; k < z.size(); ++k) out[k] = z[perm[k]];
    return out;
}

std::array<double, kMaxStencil> permuted(const std::array<double, kMaxStencil>& z,
                                         const std::vector<int>& perm) {
    std::array<double, kMaxStencil> out{};
    for (size_t k = 0; k < perm.size(); ++k) out[k] = z[perm[k]];
    return out;
}

void normalize_unit_sum(ddvec& z) {
    // Enforces z . 1 == 1 (constant reproduction).  The weights carry
    // negative lobes, so the signed sum is the right normalizer.
    dd s(0.0);
    for (const auto& v : z) s = s + v;
    for (auto& v : z) v = v / s;
}

struct GPSolver {
    const StencilGeometry& st;
    DDSigma sg;
    ddvec chol;

    GPSolver(const StencilGeometry& s, const KernelConfig& cfg)
        : st(s), sg(make_sigma(cfg)), chol(build_covariance_dd(s, cfg)) {
        cholesky_dd(chol, st.n);
    }

    ddvec reconstruction_vector(const dd& px, const dd& py) const {
        ddvec z = cholesky_solve_dd(chol, st.n, build_pred_rhs(st, sg, px, py));
        normalize_unit_sum(z);
        return z;
    }

    ddvec second_derivative_vector(int dir) const {
        ddvec z = cholesky_solve_dd(chol, st.n, build_d2_rhs(st, sg, dir));
        // make the vector bit-even under both mirrors
        ddvec zx = permuted(z, st.perm_mirror_x);
        ddvec zy = permuted(z, st.perm_mirror_y);
        ddvec zxy = permuted(zx, st.perm_mirror_y);
        for (int k = 0; k < st.n; ++k)
            z[k] = ((z[k] + zx[k]) + (zy[k] + zxy[k])) * dd(0.25);
        // annihilate constants: the raw weights carry an O(1e-5/ell^2)
        // residual sum that would read as curvature on large uniform fields
        dd s(0.0);
        for (const auto& v : z) s = s + v;
        s = s / dd(static_cast<double>(st.n));
        for (auto& v : z) v = v - s;
        return z;
    }
};

PredictionVectorSet build_fog_set(const KernelConfig& cfg) {
    PredictionVectorSet s;
    s.scheme = SchemeId::fog;
    s.stencil = build_point_stencil(cfg.ndim);
    s.config = cfg;
    s.q = 1;
    int nfaces = cfg.ndim == 2 ? 4 : 2;
    for (int f = 0; f < nfaces; ++f) {
        s.weights[f].resize(1);
        s.weights[f][0][0] = 1.0;
    }
    return s;
}

PredictionVectorSet build_poly3_set(const KernelConfig& cfg, int q) {
    PredictionVectorSet s;
    s.scheme = SchemeId::poly3;
    s.stencil = build_stencil(cfg.ndim, 1, StencilShape::diamond);
    s.config = cfg;
    if (cfg.ndim == 1) {
        s.q = 1;
        s.weights[face_east].resize(1);
        s.weights[face_east][0] = {5.0 / 6.0, -1.0 / 6.0, 1.0 / 3.0};
        s.weights[face_west].resize(1);
        s.weights[face_west][0] = permuted(s.weights[face_east][0], s.stencil.perm_mirror_x);
        s.d2[0] = {-2.0 / (cfg.dx * cfg.dx), 1.0 / (cfg.dx * cfg.dx), 1.0 / (cfg.dx * cfg.dx)};
        s.has_d2 = true;
        return s;
    }
    s.q = q == 0 ? 2 : q;
    if (s.q != 1 && s.q != 2)
        throw std::invalid_argument("poly3 supports 1- or 2-point face quadrature");
    s.weights[face_east].resize(s.q);
    if (s.q == 2) {
        double c = 1.0 / (4.0 * std::sqrt(3.0));
        // order: center, W, N, E, S
        s.weights[face_east][0] = {5.0 / 6.0, -1.0 / 6.0, c, 1.0 / 3.0, -c};
        s.weights[face_east][1] = permuted(s.weights[face_east][0], s.stencil.perm_mirror_y);
    } else {
        s.weights[face_east][0] = {11.0 / 12.0, -1.0 / 6.0, -1.0 / 24.0, 1.0 / 3.0, -1.0 / 24.0};
    }
    for (int m = 0; m < s.q; ++m) {
        s.weights[face_west].push_back(permuted(s.weights[face_east][m], s.stencil.perm_mirror_x));
        s.weights[face_north].push_back(permuted(s.weights[face_east][m], s.stencil.perm_swap));
        s.weights[face_south].push_back(permuted(s.weights[face_north][m], s.stencil.perm_mirror_y));
    }
    double ix2 = 1.0 / (cfg.dx * cfg.dx), iy2 = 1.0 / (cfg.dy * cfg.dy);
    s.d2[0] = {-2.0 * ix2, ix2, 0.0, ix2, 0.0};
    s.d2[1] = {-2.0 * iy2, 0.0, iy2, 0.0, iy2};
    s.has_d2 = true;
    return s;
}

}  // namespace

std::vector<dd> build_covariance_dd(const StencilGeometry& st, const KernelConfig& cfg) {
    DDSigma sg = make_sigma(cfg);
    ddvec c(static_cast<size_t>(st.n) * st.n);
    for (int m = 0; m < st.n; ++m) {
        for (int n = 0; n < st.n; ++n) {
            int ddi = st.offsets[n].di - st.offsets[m].di;
            int ddj = st.offsets[n].dj - st.offsets[m].dj;
            dd v = cov_factor_1d(ddi, sg.sx);
            if (st.ndim == 2) v = v * cov_factor_1d(ddj, sg.sy);
            c[static_cast<size_t>(m) * st.n + n] = v;
        }
    }
    return c;
}

void cholesky_dd(std::vector<dd>& a, int n) {
    for (int j = 0; j < n; ++j) {
        dd d = a[static_cast<size_t>(j) * n + j];
        for (int k = 0; k < j; ++k) {
            dd l = a[static_cast<size_t>(j) * n + k];
            d = d - l * l;
        }
        if (!(d.hi > 0.0))
            throw std::runtime_error("covariance kernel is not SPD (Cholesky pivot <= 0)");
        dd diag = dd_sqrt(d);
        a[static_cast<size_t>(j) * n + j] = diag;
        for (int i = j + 1; i < n; ++i) {
            dd s = a[static_cast<size_t>(i) * n + j];
            for (int k = 0; k < j; ++k)
                s = s - a[static_cast<size_t>(i) * n + k] * a[static_cast<size_t>(j) * n + k];
            a[static_cast<size_t>(i) * n + j] = s / diag;
        }
    }
}

std::vector<dd> cholesky_solve_dd(const std::vector<dd>& chol, int n,
                                  const std::vector<dd>& rhs) {
    ddvec y(n);
    for (int i = 0; i < n; ++i) {
        dd s = rhs[i];
        for (int k = 0; k < i; ++k) s = s - chol[static_cast<size_t>(i) * n + k] * y[k];
        y[i] = s / chol[static_cast<size_t>(i) * n + i];
    }
    ddvec x(n);
    for (int i = n - 1; i >= 0; --i) {
        dd s = y[i];
        for (int k = i + 1; k < n; ++k) s = s - chol[static_cast<size_t>(k) * n + i] * x[k];
        x[i] = s / chol[static_cast<size_t>(i) * n + i];
    }
    return x;
}

double covariance_condition_number(const StencilGeometry& st, const KernelConfig& cfg) {
    const int n = st.n;
    ddvec c = build_covariance_dd(st, cfg);
    ddvec chol = c;
    cholesky_dd(chol, n);

    auto matvec = [&](const ddvec& v) {
        ddvec w(n, dd(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[i] = w[i] + c[static_cast<size_t>(i) * n + j] * v[j];
        return w;
    };
    auto norm = [&](const ddvec& v) {
        dd s(0.0);
        for (const auto& x : v) s = s + x * x;
        return dd_sqrt(s);
    };
    auto scale = [&](ddvec& v, const dd& s) {
        for (auto& x : v) x = x / s;
    };

    ddvec v(n, dd(1.0));
    scale(v, norm(v));
    dd lmax(0.0);
    for (int it = 0; it < 100; ++it) {
        ddvec w = matvec(v);
        lmax = norm(w);
        scale(w, lmax);
        v = w;
    }
    ddvec u(n, dd(1.0));
    scale(u, norm(u));
    dd inv_lmin(0.0);
    for (int it = 0; it < 100; ++it) {
        ddvec w = cholesky_solve_dd(chol, n, u);
        inv_lmin = norm(w);
        scale(w, inv_lmin);
        u = w;
    }
    return (lmax * inv_lmin).to_double();
}

PredictionVectorSet build_prediction_set(SchemeId scheme, StencilShape shape,
                                         const KernelConfig& cfg, int q_override) {
    if (scheme == SchemeId::fog) return build_fog_set(cfg);
    if (scheme == SchemeId::poly3) return build_poly3_set(cfg, q_override);

    PredictionVectorSet s;
    s.scheme = scheme;
    s.stencil = build_stencil(cfg.ndim, scheme_radius(scheme), shape);
    s.config = cfg;
    s.q = q_override == 0 ? scheme_default_q(scheme, cfg.ndim) : q_override;

    GPSolver solver(s.stencil, cfg);
    std::vector<dd> nodes = qpt_nodes_dd(s.q);

    // East face: solve the upper-half quadrature points; mirror the rest.
    s.weights[face_east].resize(s.q);
    for (int m = 0; m < s.q; ++m) {
        int partner = s.q - 1 - m;
        if (m < partner) {
            ddvec z = solver.reconstruction_vector(dd(0.5), nodes[m]);
            s.weights[face_east][m] = truncate(z);
        } else if (m == partner) {
            ddvec z = cholesky_solve_dd(solver.chol, s.stencil.n,
                                        build_pred_rhs(s.stencil, solver.sg, dd(0.5), nodes[m]));
            ddvec zm = permuted(z, s.stencil.perm_mirror_y);
            for (int k = 0; k < s.stencil.n; ++k) z[k] = (z[k] + zm[k]) * dd(0.5);
            normalize_unit_sum(z);
            s.weights[face_east][m] = truncate(z);
        } else {
            s.weights[face_east][m] =
                permuted(s.weights[face_east][partner], s.stencil.perm_mirror_y);
        }
    }
    s.weights[face_west].resize(s.q);
    for (int m = 0; m < s.q; ++m)
        s.weights[face_west][m] = permuted(s.weights[face_east][m], s.stencil.perm_mirror_x);

    if (cfg.ndim == 2) {
        s.weights[face_north].resize(s.q);
        if (cfg.dx == cfg.dy) {
            for (int m = 0; m < s.q; ++m)
                s.weights[face_north][m] =
                    permuted(s.weights[face_east][m], s.stencil.perm_swap);
        } else {
            for (int m = 0; m < s.q; ++m) {
                int partner = s.q - 1 - m;
                if (m < partner) {
                    ddvec z = solver.reconstruction_vector(nodes[m], dd(0.5));
                    s.weights[face_north][m] = truncate(z);
                } else if (m == partner) {
                    ddvec z = cholesky_solve_dd(
                        solver.chol, s.stencil.n,
                        build_pred_rhs(s.stencil, solver.sg, nodes[m], dd(0.5)));
                    ddvec zm = permuted(z, s.stencil.perm_mirror_x);
                    for (int k = 0; k < s.stencil.n; ++k) z[k] = (z[k] + zm[k]) * dd(0.5);
                    normalize_unit_sum(z);
                    s.weights[face_north][m] = truncate(z);
                } else {
                    s.weights[face_north][m] =
                        permuted(s.weights[face_north][partner], s.stencil.perm_mirror_x);
                }
            }
        }
        s.weights[face_south].resize(s.q);
        for (int m = 0; m < s.q; ++m)
            s.weights[face_south][m] =
                permuted(s.weights[face_north][m], s.stencil.perm_mirror_y);
    }

    s.d2[0] = truncate(solver.second_derivative_vector(0));
    if (cfg.ndim == 2) {
        if (cfg.dx == cfg.dy) {
            s.d2[1] = permuted(s.d2[0], s.stencil.perm_swap);
        } else {
            s.d2[1] = truncate(solver.second_derivative_vector(1));
        }
    }
    s.has_d2 = true;
    return s;
}

void dump_prediction_vectors(const PredictionVectorSet& s, std::ostream& os) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "# scheme=%s shape=%s radius=%d ndim=%d dx=%.17g dy=%.17g ell=%.17g q=%d\n",
                  scheme_name(s.scheme),
                  s.stencil.shape == StencilShape::diamond ? "diamond" : "cross",
                  s.stencil.radius, s.config.ndim, s.config.dx, s.config.dy, s.config.ell,
                  s.q);
    os << buf;
    const char* fname = "EWNS";
    int nfaces = s.config.ndim == 2 ? 4 : 2;
    for (int f = 0; f < nfaces; ++f) {
        for (int m = 0; m < s.q; ++m) {
            std::snprintf(buf, sizeof buf, "face=%c qpt=%d\n", fname[f], m);
            os << buf;
            for (int k = 0; k < s.stencil.n; ++k) {
                std::snprintf(buf, sizeof buf, "%3d %3d  %.17g\n", s.stencil.offsets[k].di,
                              s.stencil.offsets[k].dj, s.weights[f][m][k]);
                os << buf;
            }
        }
    }
    if (s.has_d2) {
        for (int d = 0; d < s.config.ndim; ++d) {
            std::snprintf(buf, sizeof buf, "second_derivative dir=%c\n", d == 0 ? 'x' : 'y');
            os << buf;
            for (int k = 0; k < s.stencil.n; ++k) {
                std::snprintf(buf, sizeof buf, "%3d %3d  %.17g\n", s.stencil.offsets[k].di,
                              s.stencil.offsets[k].dj, s.d2[d][k]);
                os << buf;
            }
        }
    }
}

}  // namespace gpmood
