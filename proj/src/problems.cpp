#include "gpmood/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "gpmood/quadrature.hpp"
#include "gpmood/stencil.hpp"

namespace gpmood {

namespace {

constexpr double kGamma = 1.4;

const std::vector<ProblemSpec>& catalogue() {
    static const std::vector<ProblemSpec> specs = {
        {"vortex", 2, 100, 100, 0, 20, 0, 20, 20.0, RiemannSolver::hllc, true, 1.0, true},
        {"shu_osher", 1, 256, 1, 0, 9, 0, 1, 1.8, RiemannSolver::hllc, false, 6.0, true},
        {"sedov", 2, 256, 256, -0.5, 0.5, -0.5, 0.5, 0.2, RiemannSolver::hllc, false, 12.0,
         false},
        {"dmr", 2, 800, 200, 0, 4, 0, 1, 0.25, RiemannSolver::hllc, false, 12.0, false},
        {"implosion", 2, 400, 400, 0, 0.3, 0, 0.3, 2.5, RiemannSolver::hllc, false, 12.0,
         false},
        {"jet_single", 2, 600, 600, 0, 1.5, 0, 1.5, 0.04, RiemannSolver::hll, false, 12.0,
         false},
        {"jet_double", 2, 600, 600, 0, 1.5, 0, 1.5, 0.005, RiemannSolver::hll, false, 12.0,
         false},
    };
    return specs;
}

// 5x5 Gauss-Legendre node grid with a mirror/transpose-invariant sum plan.
struct GLGrid {
    GaussLegendre5 gl = gauss_legendre_5();
    std::vector<Offset> offs;
    SumPlan plan;
    GLGrid() {
        offs.push_back({0, 0});
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b)
                if (!(a == 0 && b == 0)) offs.push_back({a, b});
        plan = build_sum_plan(offs);
    }
};

const GLGrid& gl_grid() {
    static const GLGrid g;
    return g;
}

}  // namespace

ConsState pointwise_to_volavg_cell(const PointwiseFn& f, const Mesh& m, double gamma,
                                   int i, int j) {
    // center-relative coordinates keep symmetric states bit-symmetric
    const double xc = m.offset_from_center_x(i);
    const double yc = m.offset_from_center_y(j);
    ConsState out;
    if (m.ndim == 1) {
        GaussLegendre5 gl = gauss_legendre_5();
        double t[4][5];
        for (int a = 0; a < 5; ++a) {
            PrimState p = f(xc + gl.g[a] * m.dx, 0.0);
            ConsState c = prim_to_cons(p, gamma);
            const double* v = &c.rho;
            for (int k = 0; k < 4; ++k) t[k][a] = gl.w[a] * v[k];
        }
        out.rho = symmetric_sum5(t[0]);
        out.mx = symmetric_sum5(t[1]);
        out.my = symmetric_sum5(t[2]);
        out.E = symmetric_sum5(t[3]);
        return out;
    }
    const GLGrid& grid = gl_grid();
    double t[4][2 * kMaxStencil + 8];
    for (size_t k = 0; k < grid.offs.size(); ++k) {
        int a = grid.offs[k].di + 2, b = grid.offs[k].dj + 2;
        PrimState p = f(xc + grid.gl.g[a] * m.dx, yc + grid.gl.g[b] * m.dy);
        ConsState c = prim_to_cons(p, gamma);
        double w = grid.gl.w[a] * grid.gl.w[b];
        const double* v = &c.rho;
        for (int comp = 0; comp < 4; ++comp) t[comp][k] = w * v[comp];
    }
    double* v = &out.rho;
    for (int comp = 0; comp < 4; ++comp) v[comp] = grid.plan.reduce(t[comp]);
    return out;
}

void pointwise_to_volavg(const PointwiseFn& f, const Mesh& m, double gamma, Field& out) {
    for (int jj = 0; jj < m.ny; ++jj) {
        int j = m.gy() + jj;
        for (int ii = 0; ii < m.nx; ++ii) {
            int i = m.gx() + ii;
            ConsState c = pointwise_to_volavg_cell(f, m, gamma, i, j);
            out.comp[0][m.id(i, j)] = c.rho;
            out.comp[1][m.id(i, j)] = c.mx;
            out.comp[2][m.id(i, j)] = c.my;
            out.comp[3][m.id(i, j)] = c.E;
        }
    }
}

const ProblemSpec& problem_spec(const std::string& name) {
    for (const auto& s : catalogue())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown problem: " + name);
}

std::vector<std::string> problem_names() {
    std::vector<std::string> names;
    for (const auto& s : catalogue()) names.push_back(s.name);
    return names;
}

namespace {

PointwiseFn vortex_ic() {
    // coordinates are relative to the domain center == vortex center
    return [](double x, double y) {
        const double beta = 5.0;
        double dx = x, dy = y;
        double r2 = dx * dx + dy * dy;
        double a = (kGamma - 1.0) * beta * beta / (8.0 * kGamma * M_PI * M_PI);
        PrimState p;
        p.rho = std::pow(1.0 - a * std::exp(1.0 - r2), 1.0 / (kGamma - 1.0));
        double s = beta / (2.0 * M_PI) * std::exp(0.5 * (1.0 - r2));
        p.u = 1.0 - s * dy;
        p.v = 1.0 + s * dx;
        p.p = std::pow(p.rho, kGamma);
        return p;
    };
}

PrimState shu_osher_state(double x_abs) {
    if (x_abs < 0.5) return {3.857143, 2.629369, 0.0, 10.33333};
    return {1.0 + 0.2 * std::sin(5.0 * (x_abs - 4.5)), 0.0, 0.0, 1.0};
}

PointwiseFn shu_osher_ic() {
    return [](double x, double) { return shu_osher_state(x + 4.5); };
}

PointwiseFn sedov_ic(double r_init) {
    const double r2max = r_init * r_init;
    const double p_blast = 3.0 * (kGamma - 1.0) * 1.0 / (3.0 * M_PI * r2max);
    return [r2max, p_blast](double x, double y) {
        double r2 = x * x + y * y;
        PrimState p;
        p.rho = 1.0;
        p.u = p.v = 0.0;
        p.p = r2 < r2max ? p_blast : 1e-5;
        return p;
    };
}

PointwiseFn implosion_ic() {
    return [](double x, double y) {
        PrimState p;
        p.u = p.v = 0.0;
        if (x + y > -0.15) {
            p.rho = 1.0;
            p.p = 1.0;
        } else {
            p.rho = 0.125;
            p.p = 0.14;
        }
        return p;
    };
}

const PrimState kDmrPre{1.4, 0.0, 0.0, 1.0};
const PrimState kDmrPost{8.0, 8.25 * 0.5 * std::sqrt(3.0), -8.25 * 0.5, 116.5};
constexpr double kDmrX0 = 1.0 / 6.0;

PointwiseFn dmr_ic() {
    return [](double x, double y) {
        double xs = kDmrX0 + (y + 0.5) / std::sqrt(3.0);
        return (x + 2.0) < xs ? kDmrPost : kDmrPre;
    };
}

PointwiseFn jet_single_ic() {
    return [](double, double) { return PrimState{10.0 * kGamma, 0.0, 0.0, 1.0}; };
}

PointwiseFn jet_double_ic() {
    return [](double, double y) { return PrimState{-9.24 * (y + 0.75) + 14.0, 0.0, 0.0, 1.0}; };
}

bool in_jet_slit(double x) { return std::abs(x - 0.75) <= 0.05; }

}  // namespace

ProblemSetup build_problem(const std::string& name, int nx, int ny) {
    const ProblemSpec& spec = problem_spec(name);
    if (nx <= 0) nx = spec.nx;
    if (ny <= 0) ny = spec.ndim == 2 ? (spec.ny * nx) / spec.nx : 1;

    ProblemSetup s;
    s.gamma = kGamma;
    s.mesh = build_mesh(spec.ndim, nx, ny, spec.xmin, spec.xmax, spec.ymin, spec.ymax);
    s.init.resize(s.mesh);

    PointwiseFn ic;
    if (name == "vortex") {
        ic = vortex_ic();
        for (auto& side : s.bc.side) side.type = BCType::periodic;
    } else if (name == "shu_osher") {
        ic = shu_osher_ic();
        s.bc.side[0].type = BCType::inflow;
        s.bc.side[1].type = BCType::inflow;
        s.bc.inflow = [](double x, double, double) {
            return std::optional<PrimState>(shu_osher_state(x));
        };
    } else if (name == "sedov") {
        double r_init = 3.5 * std::min(s.mesh.dx, s.mesh.dy);
        ic = sedov_ic(r_init);
        for (auto& side : s.bc.side) side.type = BCType::outflow;
    } else if (name == "implosion") {
        ic = implosion_ic();
        for (auto& side : s.bc.side) side.type = BCType::reflecting;
    } else if (name == "dmr") {
        ic = dmr_ic();
        s.bc.side[0].type = BCType::inflow;
        s.bc.side[1].type = BCType::outflow;
        s.bc.side[2].type = BCType::inflow;
        s.bc.side[2].inflow_fallback = BCType::reflecting;
        s.bc.side[3].type = BCType::inflow;
        s.bc.inflow = [](double x, double y, double t) -> std::optional<PrimState> {
            if (y <= 0.0) {  // bottom: post-shock ahead of the wall foot, wall after
                if (x < kDmrX0) return kDmrPost;
                return std::nullopt;
            }
            if (y >= 1.0) {  // top: exact shock position
                double xs = kDmrX0 + (1.0 + 20.0 * t) / std::sqrt(3.0);
                return x < xs ? kDmrPost : kDmrPre;
            }
            return kDmrPost;  // left inflow
        };
    } else if (name == "jet_single") {
        ic = jet_single_ic();
        for (auto& side : s.bc.side) side.type = BCType::outflow;
        s.bc.side[2].type = BCType::inflow;
        s.bc.side[2].inflow_fallback = BCType::outflow;
        s.bc.inflow = [](double x, double, double) -> std::optional<PrimState> {
            if (in_jet_slit(x)) return PrimState{kGamma, 0.0, 100.0, 1.0};
            return std::nullopt;
        };
    } else if (name == "jet_double") {
        ic = jet_double_ic();
        for (auto& side : s.bc.side) side.type = BCType::outflow;
        s.bc.side[2].type = BCType::inflow;
        s.bc.side[2].inflow_fallback = BCType::outflow;
        s.bc.side[3].type = BCType::inflow;
        s.bc.side[3].inflow_fallback = BCType::outflow;
        s.bc.inflow = [](double x, double y, double) -> std::optional<PrimState> {
            if (!in_jet_slit(x)) return std::nullopt;
            if (y <= 0.0) return PrimState{kGamma, 0.0, 800.0, 1.0};
            return PrimState{kGamma, 0.0, -800.0, 1.0};
        };
    } else {
        throw std::invalid_argument("unknown problem: " + name);
    }

    pointwise_to_volavg(ic, s.mesh, s.gamma, s.init);
    return s;
}

}  // namespace gpmood
