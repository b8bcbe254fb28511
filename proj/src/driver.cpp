#include "gpmood/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "gpmood/diagnostics.hpp"

namespace gpmood {

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig rc;
    CLI::App app{"gpmood finite volume solver"};
    app.add_option("--problem", rc.problem, "problem name")
        ->check(CLI::IsMember(problem_names()));
    std::string method = "gp-mood3", shape = "diamond", integrator, riemann;
    app.add_option("--method", method)
        ->check(CLI::IsMember({"gp-mood3", "gp-mood5", "gp-mood7", "pol-mood3", "fog"}));
    app.add_option("--shape", shape)->check(CLI::IsMember({"diamond", "cross"}));
    app.add_option("--nx", rc.nx);
    app.add_option("--ny", rc.ny);
    app.add_option("--cfl", rc.cfl);
    double ell_abs = -1, ell_delta = -1;
    app.add_option("--ell", ell_abs, "correlation length, absolute units");
    app.add_option("--ell-delta", ell_delta, "correlation length as multiple of min(dx,dy)");
    app.add_option("--integrator", integrator)->check(CLI::IsMember({"rk3", "rk4"}));
    double dt_power = -1;
    app.add_option("--dt-power", dt_power, "dt = min(cfl dt, min(dx,dy)^alpha)");
    int csd = -1;
    app.add_option("--csd", csd, "compressibility-shock early accept (0/1)");
    app.add_option("--sigma-v", rc.sigma_v);
    app.add_option("--sigma-p", rc.sigma_p);
    app.add_flag("--u2-centered", rc.u2_centered,
                 "centered-difference curvature in the u2 check");
    app.add_option("--riemann", riemann)->check(CLI::IsMember({"hll", "hllc"}));
    app.add_option("--tmax", rc.tmax);
    app.add_option("--quadrature", rc.quadrature)->check(CLI::Range(0, 4));
    app.add_option("--output-interval", rc.output_interval);
    app.add_option("--output-dir", rc.output_dir);
    app.add_option("--max-steps", rc.max_steps);
    app.add_flag("--detect-checkerboard", rc.detect_checkerboard);
    int report_l1 = -1;
    app.add_option("--report-l1", report_l1);
    app.add_option("--log-every", rc.log_every);
    app.add_flag("--quiet", rc.quiet);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);

    rc.method = method_from_string(method);
    rc.shape = shape == "cross" ? StencilShape::cross : StencilShape::diamond;
    if (ell_abs >= 0 && ell_delta >= 0)
        throw CLI::ValidationError("--ell and --ell-delta are mutually exclusive");
    if (ell_abs >= 0) {
        rc.ell_mode = 1;
        rc.ell_value = ell_abs;
    } else if (ell_delta >= 0) {
        rc.ell_mode = 2;
        rc.ell_value = ell_delta;
    }
    if (!integrator.empty()) {
        rc.integrator_set = true;
        rc.integrator = integrator == "rk4" ? Integrator::ssp_rk4 : Integrator::ssp_rk3;
    }
    if (dt_power >= 0) {
        rc.dt_power_set = true;
        rc.dt_power = dt_power;
    }
    rc.csd = csd;
    rc.riemann = riemann;
    rc.report_l1 = report_l1;
    return rc;
}

ResolvedConfig resolve_config(const RunConfig& rc) {
    const ProblemSpec& spec = problem_spec(rc.problem);
    ResolvedConfig c;
    c.in = rc;
    c.nx = rc.nx > 0 ? rc.nx : spec.nx;
    c.ny = spec.ndim == 2 ? (rc.ny > 0 ? rc.ny : (spec.ny * c.nx) / spec.nx) : 1;

    double dx = (spec.xmax - spec.xmin) / c.nx;
    double dy = spec.ndim == 2 ? (spec.ymax - spec.ymin) / c.ny : dx;
    double delta = std::min(dx, dy);
    if (rc.ell_mode == 1)
        c.ell = rc.ell_value;
    else if (rc.ell_mode == 2)
        c.ell = rc.ell_value * delta;
    else
        c.ell = spec.ell_absolute ? spec.ell_value : spec.ell_value * delta;
    if (!(c.ell > 0)) throw std::invalid_argument("correlation length must be positive");

    // integrator pairing: convergence-style problems run the higher-order
    // methods with the 4th-order integrator and a dt power reduction
    bool high = rc.method == MethodId::gp_mood5 || rc.method == MethodId::gp_mood7;
    if (rc.integrator_set) {
        c.integrator = rc.integrator;
    } else {
        c.integrator = (spec.method_paired_integrator && high) ? Integrator::ssp_rk4
                                                               : Integrator::ssp_rk3;
    }
    if (rc.dt_power_set) {
        c.dt_power = rc.dt_power;
    } else if (spec.method_paired_integrator && high && c.integrator == Integrator::ssp_rk4) {
        int order = rc.method == MethodId::gp_mood7 ? 7 : 5;
        c.dt_power = order / 4.0;
    } else {
        c.dt_power = 0;
    }
    if (c.dt_power > 0 && c.dt_power <= 1.0)
        throw std::invalid_argument("dt power reduction requires alpha > 1");

    c.csd = rc.csd < 0 ? true : rc.csd != 0;
    if (rc.riemann.empty())
        c.riemann = spec.riemann;
    else
        c.riemann = rc.riemann == "hll" ? RiemannSolver::hll : RiemannSolver::hllc;
    c.tmax = rc.tmax > 0 ? rc.tmax : spec.tmax;

    c.quadrature = rc.quadrature;
    if (c.quadrature > 0) {
        int allowed_lo = 1, allowed_hi = 2;
        switch (rc.method) {
            case MethodId::gp_mood3:
            case MethodId::pol_mood3: allowed_lo = 1; allowed_hi = 2; break;
            case MethodId::gp_mood5: allowed_lo = 3; allowed_hi = 3; break;
            case MethodId::gp_mood7: allowed_lo = 4; allowed_hi = 4; break;
            case MethodId::fog: allowed_lo = 1; allowed_hi = 1; break;
        }
        if (spec.ndim == 1) allowed_lo = allowed_hi = 1;
        if (c.quadrature < allowed_lo || c.quadrature > allowed_hi)
            throw std::invalid_argument("quadrature override incompatible with method");
    }

    c.report_l1 = rc.report_l1 < 0 ? rc.problem == "vortex" : rc.report_l1 != 0;
    c.output_dir = rc.output_dir;
    if (const char* env = std::getenv("GPMOOD_OUTPUT_DIR")) c.output_dir = env;
    return c;
}

void Solver::FieldOps::blend(Field& dst, const Field& anchor, const Field& other,
                             double c) const {
    for (int k = 0; k < 4; ++k) {
        const double* a = anchor.comp[k].data();
        const double* o = other.comp[k].data();
        double* d = dst.comp[k].data();
        size_t n = dst.comp[k].size();
        for (size_t i = 0; i < n; ++i) d[i] = a[i] + c * (o[i] - a[i]);
    }
}

void Solver::FieldOps::rk4_final_base(Field& dst, const Field& u4, const Field& u2,
                                      const Field& u3, const Field& d3, double dt) const {
    using namespace rk4;
    for (int k = 0; k < 4; ++k) {
        const double* a4 = u4.comp[k].data();
        const double* a2 = u2.comp[k].data();
        const double* a3 = u3.comp[k].data();
        const double* dv = d3.comp[k].data();
        double* d = dst.comp[k].data();
        size_t n = dst.comp[k].size();
        for (size_t i = 0; i < n; ++i)
            d[i] = a4[i] + kFinalU2 * (a2[i] - a4[i]) + kFinalU3 * (a3[i] - a4[i]) -
                   (kFinalF3 * dt) * dv[i];
    }
}

Solver::Solver(const RunConfig& rc) : cfg_(resolve_config(rc)) {
    setup_ = build_problem(rc.problem, cfg_.nx, cfg_.ny);
    DetectionConfig det;
    det.sigma_v = rc.sigma_v;
    det.sigma_p = rc.sigma_p;
    det.csd_enabled = cfg_.csd;
    det.u2_centered = rc.u2_centered;
    mood_ = std::make_unique<MoodSolver>(setup_.mesh, setup_.bc, setup_.gamma, cfg_.riemann,
                                         rc.method, rc.shape, cfg_.ell, cfg_.quadrature, det);
    U_ = setup_.init;
    if (cfg_.report_l1) init_copy_ = setup_.init;
    s1_.resize(setup_.mesh);
    s2_.resize(setup_.mesh);
    if (cfg_.integrator == Integrator::ssp_rk4) {
        s3_.resize(setup_.mesh);
        s4_.resize(setup_.mesh);
        b_.resize(setup_.mesh);
        d3_.resize(setup_.mesh);
    }
}

bool Solver::done() const {
    if (result_.fatal || result_.checkerboard_detected) return true;
    if (cfg_.in.max_steps >= 0 && steps_ >= cfg_.in.max_steps) return true;
    return t_ >= cfg_.tmax * (1.0 - 1e-14);
}

void Solver::step() {
    double dt = compute_dt(U_, setup_.mesh, cfg_.in.cfl, setup_.gamma, cfg_.tmax, t_,
                           cfg_.dt_power);
    last_dt_ = dt;
    step_stats_ = MoodStats{};
    last_troubled_frac_ = 0;
    last_fog_frac_ = 0;
    const double ncells = static_cast<double>(setup_.mesh.interior_count());
    const int fog_idx = static_cast<int>(mood_->ladder().size()) - 1;

    auto stage = [&](const Field& base, Field& W, double coef, double ts, Field& out,
                     Field* div_out) {
        MoodStats st;
        mood_->stage_update(W, base, coef, ts, out, st);
        last_troubled_frac_ = std::max(last_troubled_frac_, st.troubled / ncells);
        if (mood_->ladder().back() == SchemeId::fog)
            last_fog_frac_ = std::max(last_fog_frac_, st.order_count[fog_idx] / ncells);
        step_stats_.accumulate(st);
        if (div_out)
            for (int c = 0; c < 4; ++c) div_out->comp[c] = mood_->divergence(c);
    };
    // adapter: the integrator passes (base, W, ...) with W mutable
    auto stage_adapter = [&](const Field& base, const Field& W, double coef, double ts,
                             Field& out, Field* div_out) {
        stage(base, const_cast<Field&>(W), coef, ts, out, div_out);
    };

    FieldOps ops;
    if (cfg_.integrator == Integrator::ssp_rk3)
        ssp_rk3_advance(U_, dt, t_, stage_adapter, ops, s1_, s2_);
    else
        ssp_rk4_advance(U_, dt, t_, stage_adapter, ops, s1_, s2_, s3_, s4_, b_, d3_);

    t_ += dt;
    ++steps_;
}

void Solver::write_snapshot(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open snapshot file: " + path);
    const Mesh& m = setup_.mesh;
    char buf[256];
    if (m.ndim == 2)
        os << "x,y,rho,u,v,p,order\n";
    else
        os << "x,rho,u,p,order\n";
    for (int jj = 0; jj < m.ny; ++jj) {
        for (int ii = 0; ii < m.nx; ++ii) {
            int idx = m.id(m.gx() + ii, m.gy() + jj);
            ConsState c{U_.comp[0][idx], U_.comp[1][idx], U_.comp[2][idx], U_.comp[3][idx]};
            PrimState p = cons_to_prim(c, setup_.gamma);
            int order = mood_->scheme_order_at(ii, jj);
            if (m.ndim == 2) {
                std::snprintf(buf, sizeof buf,
                              "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                              m.cell_center_x(m.gx() + ii), m.cell_center_y(m.gy() + jj),
                              p.rho, p.u, p.v, p.p, order);
            } else {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d\n",
                              m.cell_center_x(m.gx() + ii), p.rho, p.u, p.p, order);
            }
            os << buf;
        }
    }
}

RunResult Solver::run() {
    namespace fs = std::filesystem;
    auto t0 = std::chrono::steady_clock::now();
    std::unique_ptr<std::ofstream> log;
    if (!cfg_.output_dir.empty()) {
        fs::create_directories(cfg_.output_dir);
        log = std::make_unique<std::ofstream>(fs::path(cfg_.output_dir) / "run.log");
    }
    auto emit = [&](const std::string& line) {
        if (!cfg_.in.quiet) std::fputs(line.c_str(), stdout);
        if (log) *log << line;
    };

    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "config problem=%s method=%s shape=%s nx=%d ny=%d cfl=%g ell=%.17g "
                  "integrator=%s dt_power=%g csd=%d riemann=%s tmax=%g quadrature=%d\n",
                  cfg_.in.problem.c_str(), method_name(cfg_.in.method),
                  cfg_.in.shape == StencilShape::cross ? "cross" : "diamond", cfg_.nx,
                  cfg_.ny, cfg_.in.cfl, cfg_.ell,
                  cfg_.integrator == Integrator::ssp_rk4 ? "rk4" : "rk3", cfg_.dt_power,
                  cfg_.csd ? 1 : 0, cfg_.riemann == RiemannSolver::hll ? "hll" : "hllc",
                  cfg_.tmax, cfg_.quadrature);
    emit(buf);

    double next_snap = cfg_.in.output_interval > 0 ? cfg_.in.output_interval : -1;
    int snap_id = 0;
    while (!done()) {
        try {
            step();
        } catch (const std::exception& e) {
            result_.fatal = true;
            result_.fatal_message = e.what();
            if (!cfg_.output_dir.empty())
                write_snapshot((fs::path(cfg_.output_dir) / "diagnostic.csv").string());
            std::snprintf(buf, sizeof buf, "fatal step=%ld t=%.17g error=%s\n", steps_, t_,
                          e.what());
            emit(buf);
            break;
        }
        result_.max_troubled_frac = std::max(result_.max_troubled_frac, last_troubled_frac_);
        result_.max_fog_frac = std::max(result_.max_fog_frac, last_fog_frac_);
        if (steps_ % std::max(1, cfg_.in.log_every) == 0) {
            const MoodStats& st = step_stats_;
            std::snprintf(buf, sizeof buf,
                          "step=%ld t=%.10g dt=%.10g troubled_frac=%.6g fog_frac=%.6g "
                          "cad=%ld pad=%ld nad=%ld csd=%ld plateau=%ld u2=%ld iters=%d "
                          "ord0=%ld ord1=%ld ord2=%ld\n",
                          steps_, t_, last_dt_, last_troubled_frac_, last_fog_frac_,
                          st.cad_fail, st.pad_fail, st.dmp_fail, st.csd_accept,
                          st.plateau_accept, st.u2_reinstate, st.iterations,
                          st.order_count[0], st.order_count[1], st.order_count[2]);
            emit(buf);
        }
        if (cfg_.in.detect_checkerboard) {
            CheckerboardResult cb = checkerboard_metric(U_, setup_.mesh);
            if (cb.flagged) {
                result_.checkerboard_detected = true;
                result_.checkerboard_time = t_;
                std::snprintf(buf, sizeof buf,
                              "checkerboard_detected=1 t=%.10g ratio=%.6g\n", t_, cb.ratio);
                emit(buf);
            }
        }
        if (next_snap > 0 && t_ >= next_snap * (1.0 - 1e-14) && !cfg_.output_dir.empty()) {
            std::snprintf(buf, sizeof buf, "snapshot_%06d.csv", snap_id++);
            write_snapshot((fs::path(cfg_.output_dir) / buf).string());
            next_snap += cfg_.in.output_interval;
        }
        if (step_hook) step_hook(*this);
    }

    auto t1 = std::chrono::steady_clock::now();
    result_.steps = steps_;
    result_.t = t_;
    result_.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    if (!result_.fatal && !cfg_.output_dir.empty())
        write_snapshot((fs::path(cfg_.output_dir) / "snapshot_final.csv").string());
    if (cfg_.report_l1 && !result_.fatal) {
        result_.l1 = l1_error(U_, init_copy_, setup_.mesh);
        std::snprintf(buf, sizeof buf, "l1 rho=%.8e mx=%.8e my=%.8e E=%.8e\n", result_.l1[0],
                      result_.l1[1], result_.l1[2], result_.l1[3]);
        emit(buf);
    }
    std::snprintf(buf, sizeof buf,
                  "summary steps=%ld t=%.10g wall=%.3f max_troubled_frac=%.6g "
                  "max_fog_frac=%.6g checkerboard=%d fatal=%d\n",
                  result_.steps, result_.t, result_.wall_seconds, result_.max_troubled_frac,
                  result_.max_fog_frac, result_.checkerboard_detected ? 1 : 0,
                  result_.fatal ? 1 : 0);
    emit(buf);
    return result_;
}

}  // namespace gpmood
