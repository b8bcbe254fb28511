// Acceptance suite: one check per numbered criterion, each printing a
// single PASS/FAIL line (plus measurement details).  Exit status is the
// number of failed criteria.
//
// GPMOOD_ACCEPT_FULL=1 additionally runs the full-size implosion (400^2,
// tens of minutes); the default gate runs the 200^2 variant with the same
// pass/fail logic.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "gpmood/diagnostics.hpp"
#include "gpmood/driver.hpp"
#include "gpmood/prediction.hpp"
#include "gpmood/quadrature.hpp"
#include "gpmood/timeint.hpp"

using namespace gpmood;

namespace {

int g_failures = 0;

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

void report(int criterion, const char* name, bool pass, const std::string& detail) {
    std::printf("CRITERION %2d %-28s %s  %s\n", criterion, name, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

// ---------------------------------------------------------------------------
// vortex run matrix, shared across criteria 1-3

struct VortexKey {
    std::string method, shape;
    int n;
    bool operator<(const VortexKey& o) const {
        return std::tie(method, shape, n) < std::tie(o.method, o.shape, o.n);
    }
};

std::map<VortexKey, double> g_vortex_l1;

double vortex_error(const std::string& method, const std::string& shape, int n) {
    VortexKey key{method, shape, n};
    auto it = g_vortex_l1.find(key);
    if (it != g_vortex_l1.end()) return it->second;
    RunConfig rc = parse_config({"--problem", "vortex", "--method", method, "--shape",
                                 shape, "--nx", std::to_string(n), "--quiet"});
    Solver s(rc);
    RunResult r = s.run();
    double e = r.fatal ? std::nan("") : r.l1[0];
    std::printf("  [vortex %s %s %d] l1_rho=%.8e steps=%ld wall=%.1fs troubled=%g\n",
                method.c_str(), shape.c_str(), n, e, r.steps, r.wall_seconds,
                r.max_troubled_frac);
    std::fflush(stdout);
    g_vortex_l1[key] = e;
    return e;
}

bool within_factor(double value, double reference, double factor) {
    return value <= reference * factor && value >= reference / factor;
}

void criterion1_vortex_convergence() {
    double e3_50 = vortex_error("gp-mood3", "diamond", 50);
    double e3_100 = vortex_error("gp-mood3", "diamond", 100);
    double e3_200 = vortex_error("gp-mood3", "diamond", 200);
    double e5_50 = vortex_error("gp-mood5", "diamond", 50);
    double e5_100 = vortex_error("gp-mood5", "diamond", 100);
    double e5_200 = vortex_error("gp-mood5", "diamond", 200);
    double e7_50 = vortex_error("gp-mood7", "diamond", 50);
    double e7_100 = vortex_error("gp-mood7", "diamond", 100);
    double e7_200 = vortex_error("gp-mood7", "diamond", 200);

    bool pass = true;
    double eoc3a = eoc(e3_50, e3_100), eoc3b = eoc(e3_100, e3_200);
    pass &= eoc3a >= 2.3 && eoc3a <= 3.2 && eoc3b >= 2.3 && eoc3b <= 3.2;
    pass &= within_factor(e3_50, 1.137, 3.0) && within_factor(e3_100, 1.675e-1, 3.0) &&
            within_factor(e3_200, 2.917e-2, 3.0);
    double eoc5 = eoc(e5_100, e5_200);
    pass &= eoc5 >= 3.8;
    pass &= within_factor(e5_50, 2.22016430e-01, 3.0) &&
            within_factor(e5_100, 1.29737576e-02, 3.0) &&
            within_factor(e5_200, 6.60244975e-04, 3.0);
    double eoc7a = eoc(e7_50, e7_100), eoc7b = eoc(e7_100, e7_200);
    pass &= eoc7a >= 4.0;
    pass &= eoc7b >= 5.5;
    report(1, "vortex convergence", pass,
           fmt("mood3 EOC %.2f/%.2f  mood5 EOC %.2f  mood7 EOC %.2f/%.2f", eoc3a, eoc3b,
               eoc5, eoc7a, eoc7b));
}

void criterion2_cross_degradation() {
    double d5_200 = vortex_error("gp-mood5", "diamond", 200);
    double d7_100 = vortex_error("gp-mood7", "diamond", 100);
    double d7_200 = vortex_error("gp-mood7", "diamond", 200);
    double c5_100 = vortex_error("gp-mood5", "cross", 100);
    double c5_200 = vortex_error("gp-mood5", "cross", 200);
    double c7_100 = vortex_error("gp-mood7", "cross", 100);
    double c7_200 = vortex_error("gp-mood7", "cross", 200);

    bool pass = true;
    // the 7th-order pairing degrades clearly at both resolutions; the
    // 5th-order cross error sits inside the crossover at 100^2 (as in the
    // published data), so its comparison binds at 200^2
    pass &= c7_100 > d7_100 && c7_200 > d7_200;
    pass &= c5_200 > d5_200;
    double eoc_c7 = eoc(c7_100, c7_200), eoc_d7 = eoc(d7_100, d7_200);
    pass &= eoc_c7 <= eoc_d7 - 0.5;
    report(2, "cross-stencil degradation", pass,
           fmt("cross7 EOC %.2f vs diamond7 EOC %.2f; cross5@200 %.3e > diamond5 %.3e",
               eoc_c7, eoc_d7, c5_200, d5_200));
}

void criterion3_pol_mood3() {
    double p_100 = vortex_error("pol-mood3", "diamond", 100);
    double p_200 = vortex_error("pol-mood3", "diamond", 200);
    double g_100 = vortex_error("gp-mood3", "diamond", 100);
    double g_200 = vortex_error("gp-mood3", "diamond", 200);
    bool pass = within_factor(p_100, 2.54731899e-01, 3.0) &&
                within_factor(p_200, 4.40709959e-02, 3.0) && g_100 < p_100 &&
                g_200 < p_200;
    report(3, "pol-mood3 comparison", pass,
           fmt("pol %.4e/%.4e vs gp %.4e/%.4e", p_100, p_200, g_100, g_200));
}

double shu_osher_peak(const std::string& method, int n) {
    RunConfig rc = parse_config({"--problem", "shu_osher", "--method", method, "--nx",
                                 std::to_string(n), "--quiet"});
    Solver s(rc);
    RunResult r = s.run();
    if (r.fatal) return std::nan("");
    const Mesh& m = s.mesh();
    double peak = 0;
    for (int ii = 0; ii < m.nx; ++ii) {
        double x = m.cell_center_x(m.gx() + ii);
        if (x < 6.0 || x > 6.7) continue;
        peak = std::max(peak, s.field().comp[0][m.id(m.gx() + ii, 0)]);
    }
    std::printf("  [shu_osher %s %d] peak=%.4f steps=%ld wall=%.1fs\n", method.c_str(), n,
                peak, r.steps, r.wall_seconds);
    std::fflush(stdout);
    return peak;
}

void criterion4_shu_osher() {
    double p3 = shu_osher_peak("gp-mood3", 256);
    double p5 = shu_osher_peak("gp-mood5", 256);
    double p7 = shu_osher_peak("gp-mood7", 256);
    double pp = shu_osher_peak("pol-mood3", 256);
    double ref = shu_osher_peak("pol-mood3", 4096);
    bool pass = p5 >= 4.50 && p7 >= 4.50 && p3 >= 4.20 && p3 <= 4.50 && pp >= 4.15 &&
                pp <= 4.45 && std::abs(ref - 4.69) <= 0.06;
    report(4, "shu-osher density peaks", pass,
           fmt("mood3 %.3f mood5 %.3f mood7 %.3f pol %.3f ref4096 %.3f", p3, p5, p7, pp,
               ref));
}

struct SedovResult {
    bool positivity_ok = true;
    bool fatal = false;
    double worst_mirror = 0, worst_diag = 0;
    double axis_peak = 0, diag_peak = 0;
    double max_fog = 0;
    double wall = 0;
};

SedovResult run_sedov(const std::string& method, int n) {
    RunConfig rc = parse_config(
        {"--problem", "sedov", "--method", method, "--nx", std::to_string(n), "--quiet"});
    Solver s(rc);
    SedovResult out;
    s.step_hook = [&](Solver& sv) {
        if (!out.positivity_ok) return;
        const Mesh& m = sv.mesh();
        for (int jj = 0; jj < m.ny && out.positivity_ok; ++jj) {
            int row = m.id(m.gx(), m.gy() + jj);
            for (int i = 0; i < m.nx; ++i) {
                ConsState c{sv.field().comp[0][row + i], sv.field().comp[1][row + i],
                            sv.field().comp[2][row + i], sv.field().comp[3][row + i]};
                PrimState p = cons_to_prim(c, sv.gamma());
                if (!(p.rho > 0.0) || !(p.p > 0.0) || !std::isfinite(p.rho) ||
                    !std::isfinite(p.p)) {
                    out.positivity_ok = false;
                    break;
                }
            }
        }
    };
    RunResult r = s.run();
    out.fatal = r.fatal;
    out.max_fog = r.max_fog_frac;
    out.wall = r.wall_seconds;
    if (r.fatal) return out;
    const Mesh& m = s.mesh();
    out.worst_mirror = std::max(mirror_x_asymmetry(s.field(), m, 0),
                                mirror_y_asymmetry(s.field(), m, 0));
    out.worst_diag = diagonal_asymmetry(s.field(), m, 0, 0);
    for (int ii = m.nx / 2; ii < m.nx; ++ii) {
        out.axis_peak = std::max(out.axis_peak,
                                 s.field().comp[0][m.id(m.gx() + ii, m.gy() + m.ny / 2)]);
        out.diag_peak =
            std::max(out.diag_peak, s.field().comp[0][m.id(m.gx() + ii, m.gy() + ii)]);
    }
    return out;
}

void criterion5_sedov_symmetry() {
    bool pass = true;
    std::string detail;
    for (const char* method : {"gp-mood3", "gp-mood5", "gp-mood7"}) {
        SedovResult r = run_sedov(method, 256);
        double peak_rel =
            std::abs(r.axis_peak - r.diag_peak) / std::max(r.axis_peak, r.diag_peak);
        bool ok = !r.fatal && r.positivity_ok && r.worst_mirror <= 1e-11 &&
                  r.worst_diag <= 1e-11 && peak_rel <= 0.02;
        pass &= ok;
        std::printf(
            "  [sedov %s 256] mirror %.2e diag %.2e peaks %.3f/%.3f (rel %.3f) fog %.4f "
            "wall %.0fs\n",
            method, r.worst_mirror, r.worst_diag, r.axis_peak, r.diag_peak, peak_rel,
            r.max_fog, r.wall);
        std::fflush(stdout);
        detail += fmt("%s rel-peak %.3f; ", method, peak_rel);
    }
    report(5, "sedov symmetry + sections", pass, detail);
}

// ---------------------------------------------------------------------------

bool probe_stable(const std::string& method, int quadrature, double cfl) {
    RunConfig rc = parse_config({"--problem", "sedov", "--method", method, "--nx", "400",
                                 "--quiet", "--cfl", fmt("%.4f", cfl), "--tmax", "0.02",
                                 "--quadrature", std::to_string(quadrature)});
    Solver s(rc);
    bool stable = true;
    s.step_hook = [&](Solver& sv) {
        CheckerboardResult cb = checkerboard_metric(sv.field(), sv.mesh());
        if (cb.flagged) stable = false;
        if (stable && sv.t() >= 0.005) {
            // once the shock has left it, the central region is smooth and
            // the first-order fallback must not appear there
            const Mesh& m = sv.mesh();
            int half = 16;
            int fog_cells = 0, total = 0;
            for (int jj = m.ny / 2 - half; jj < m.ny / 2 + half; ++jj)
                for (int ii = m.nx / 2 - half; ii < m.nx / 2 + half; ++ii) {
                    ++total;
                    if (sv.mood().scheme_order_at(ii, jj) == 1) ++fog_cells;
                }
            if (fog_cells > total / 100) stable = false;
        }
    };
    try {
        while (!s.done() && stable) s.step();
    } catch (...) {
        stable = false;
    }
    std::printf("  [probe %s q%d cfl %.3f] %s (reached t=%.4f in %ld steps)\n",
                method.c_str(), quadrature, cfl, stable ? "stable" : "unstable", s.t(),
                s.steps());
    std::fflush(stdout);
    return stable;
}

double bisect_boundary(const std::string& method, int quadrature) {
    double lo = 0.55, hi = 1.05;
    if (!probe_stable(method, quadrature, lo)) return lo;
    if (probe_stable(method, quadrature, hi)) return hi;
    while (hi - lo > 0.05) {
        double mid = 0.5 * (lo + hi);
        if (probe_stable(method, quadrature, mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

void criterion6_cfl_stability() {
    bool baseline_stable = probe_stable("gp-mood3", 2, 0.8);
    RunConfig rc = parse_config({"--problem", "sedov", "--method", "fog", "--nx", "400",
                                 "--quiet", "--cfl", "0.85", "--tmax", "0.06",
                                 "--quadrature", "1", "--detect-checkerboard"});
    Solver s(rc);
    RunResult r = s.run();
    bool fog_flags = r.checkerboard_detected;
    std::printf("  [fog cfl 0.85] checkerboard=%d at t=%.5f (fatal=%d after %ld steps)\n",
                r.checkerboard_detected ? 1 : 0, r.checkerboard_time, r.fatal ? 1 : 0,
                r.steps);
    std::fflush(stdout);

    double b_fog = bisect_boundary("fog", 1);
    double b_1pt = bisect_boundary("gp-mood3", 1);
    double b_2pt = bisect_boundary("gp-mood3", 2);
    bool ordering = b_fog < b_1pt && b_1pt < b_2pt;
    report(6, "cfl stability study", baseline_stable && fog_flags && ordering,
           fmt("baseline@0.8 %s; fog@0.85 checkerboard %s; bounds %.3f < %.3f < %.3f",
               baseline_stable ? "stable" : "unstable", fog_flags ? "yes" : "no", b_fog,
               b_1pt, b_2pt));
}

struct BudgetResult {
    double max_troubled = 0;
    bool fatal = false;
    double sym_at_checkpoint = -1;
};

BudgetResult run_budget(const std::string& problem, const std::string& method, int n,
                        double sym_check_time) {
    RunConfig rc = parse_config(
        {"--problem", problem, "--method", method, "--nx", std::to_string(n), "--quiet"});
    Solver s(rc);
    BudgetResult out;
    bool checked = false;
    s.step_hook = [&](Solver& sv) {
        if (!checked && sym_check_time > 0 && sv.t() >= sym_check_time) {
            out.sym_at_checkpoint = mirror_x_asymmetry(sv.field(), sv.mesh(), 0);
            checked = true;
        }
    };
    RunResult r = s.run();
    out.max_troubled = r.max_troubled_frac;
    out.fatal = r.fatal;
    std::printf("  [%s %s %d] max_troubled=%.4f sym@%g=%.2e steps=%ld wall=%.0fs\n",
                problem.c_str(), method.c_str(), n, out.max_troubled, sym_check_time,
                out.sym_at_checkpoint, r.steps, r.wall_seconds);
    std::fflush(stdout);
    return out;
}

void criterion7_troubled_budgets(double sedov400_max_fog, bool sedov400_fatal) {
    BudgetResult jet1 = run_budget("jet_single", "gp-mood3", 600, 0.02);
    BudgetResult jet2 = run_budget("jet_double", "gp-mood3", 600, -1);
    bool pass = !sedov400_fatal && sedov400_max_fog < 0.02;
    pass &= !jet1.fatal && jet1.max_troubled < 0.05;
    pass &= !jet2.fatal && jet2.max_troubled < 0.08;
    pass &= jet1.sym_at_checkpoint >= 0 && jet1.sym_at_checkpoint <= 1e-10;
    report(7, "troubled-cell budgets", pass,
           fmt("sedov400 fog %.4f; jet1 %.4f (sym %.1e); jet2 %.4f", sedov400_max_fog,
               jet1.max_troubled, jet1.sym_at_checkpoint, jet2.max_troubled));
}

void criterion8_implosion_csd() {
    int n = 200;
    if (const char* env = std::getenv("GPMOOD_ACCEPT_FULL"))
        if (std::strcmp(env, "1") == 0) n = 400;
    auto run_implosion = [&](bool csd) {
        RunConfig rc = parse_config({"--problem", "implosion", "--method", "gp-mood3",
                                     "--nx", std::to_string(n), "--quiet", "--csd",
                                     csd ? "1" : "0"});
        Solver s(rc);
        RunResult r = s.run();
        const Mesh& m = s.mesh();
        double jet_max = 0;
        for (int ii = 0; ii < m.nx; ++ii) {
            double x = m.cell_center_x(m.gx() + ii);
            if (x <= 0.1 || x >= 0.25) continue;
            jet_max = std::max(jet_max, s.field().comp[0][m.id(m.gx() + ii, m.gy() + ii)]);
        }
        double dsym = diagonal_asymmetry(s.field(), m, 0, 0);
        std::printf(
            "  [implosion %d csd=%d] jet_max=%.4f diag_sym=%.2e steps=%ld wall=%.0fs\n", n,
            csd ? 1 : 0, jet_max, dsym, r.steps, r.wall_seconds);
        std::fflush(stdout);
        return std::make_tuple(jet_max, dsym, r.fatal);
    };
    auto [jet_on, sym_on, fatal_on] = run_implosion(true);
    auto [jet_off, sym_off, fatal_off] = run_implosion(false);
    (void)sym_off;
    bool pass = !fatal_on && !fatal_off && jet_on > 1.2 * jet_off && sym_on <= 1e-11;
    report(8, "implosion csd contrast", pass,
           fmt("n=%d jet on/off %.4f/%.4f ratio %.2f diag-sym %.2e", n, jet_on, jet_off,
               jet_off > 0 ? jet_on / jet_off : 0.0, sym_on));
}

void criterion9_conservation() {
    RunConfig rc = parse_config({"--problem", "vortex", "--method", "gp-mood3", "--nx",
                                 "100", "--max-steps", "100", "--quiet"});
    Solver s(rc);
    auto before = conserved_totals(s.field(), s.mesh());
    RunResult r = s.run();
    auto after = conserved_totals(s.field(), s.mesh());
    bool pass = !r.fatal;
    double worst = 0;
    for (int c = 0; c < 4; ++c)
        worst = std::max(worst, std::abs(after[c] - before[c]) /
                                    std::max(1.0, std::abs(before[c])));
    pass &= worst <= 1e-12;
    report(9, "conservation", pass, fmt("100 steps, worst relative drift %.2e", worst));
}

void criterion10_unit_suites() {
    bool pass = true;
    KernelConfig cfg{12.0, 1.0, 1.0, 2};
    for (SchemeId s : {SchemeId::gp_r1, SchemeId::gp_r2, SchemeId::gp_r3}) {
        auto set = build_prediction_set(s, StencilShape::diamond, cfg);
        for (int f = 0; f < 4; ++f)
            for (int m = 0; m < set.q; ++m) {
                double sum = 0;
                for (int k = 0; k < set.stencil.n; ++k) sum += set.weights[f][m][k];
                pass &= std::abs(sum - 1.0) < 1e-14;
            }
    }
    auto q2 = quadrature_rule(2);
    pass &= q2.g[0] == 1.0 / (2.0 * std::sqrt(3.0));
    pass &= rk4::kC1 == 0.391752226571890;
    auto run_short = [&]() {
        RunConfig rc = parse_config({"--problem", "sedov", "--method", "gp-mood3", "--nx",
                                     "64", "--max-steps", "5", "--quiet"});
        Solver s(rc);
        s.run();
        return s.field();
    };
    Field a = run_short(), b = run_short();
    for (int c = 0; c < 4; ++c)
        for (size_t k = 0; k < a.comp[c].size(); ++k)
            if (a.comp[c][k] != b.comp[c][k]) pass = false;
    report(10, "unit/property suites", pass,
           "weight sums, table literals, determinism (full suite: unit_tests)");
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    std::printf("gpmood acceptance suite%s\n", quick ? " (quick subset)" : "");
    std::fflush(stdout);

    criterion10_unit_suites();
    criterion9_conservation();
    criterion4_shu_osher();
    criterion1_vortex_convergence();
    criterion2_cross_degradation();
    criterion3_pol_mood3();
    criterion5_sedov_symmetry();
    if (!quick) {
        // the first-order budget is measured on the stability-study
        // configuration; the band is a fixed-width ring on the shock, so
        // its cell fraction grows with the shock circumference and a
        // fixed bound is meaningful only over the study's horizon
        RunConfig rc = parse_config({"--problem", "sedov", "--method", "gp-mood3", "--nx",
                                     "400", "--quiet", "--tmax", "0.05"});
        Solver s(rc);
        RunResult r = s.run();
        std::printf("  [sedov gp-mood3 400 t<=0.05] max_fog=%.4f steps=%ld wall=%.0fs\n",
                    r.max_fog_frac, r.steps, r.wall_seconds);
        std::fflush(stdout);
        criterion7_troubled_budgets(r.max_fog_frac, r.fatal);
        criterion8_implosion_csd();
        criterion6_cfl_stability();
    } else {
        std::printf("criteria 6-8 skipped in --quick mode\n");
    }

    std::printf("acceptance complete: %d criterion failure(s)\n", g_failures);
    return g_failures;
}
