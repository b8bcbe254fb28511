#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gpmood/mood.hpp"
#include "gpmood/problems.hpp"
#include "gpmood/timeint.hpp"

namespace gpmood {

struct RunConfig {
    std::string problem = "vortex";
    MethodId method = MethodId::gp_mood3;
    StencilShape shape = StencilShape::diamond;
    int nx = 0, ny = 0;  // 0 -> problem default
    double cfl = 0.8;
    int ell_mode = 0;      // 0 default, 1 absolute, 2 multiple of min(dx,dy)
    double ell_value = 0;  // with ell_mode
    bool integrator_set = false;
    Integrator integrator = Integrator::ssp_rk3;
    bool dt_power_set = false;
    double dt_power = 0;  // 0 = no reduction
    int csd = -1;         // -1 default (on), 0 off, 1 on
    double sigma_v = 5.0, sigma_p = 5.0;
    bool u2_centered = false;
    std::string riemann;  // "", "hll", "hllc"
    double tmax = -1;
    int quadrature = 0;  // 0 = scheme default
    double output_interval = 0;
    std::string output_dir;
    long max_steps = -1;
    bool detect_checkerboard = false;
    int report_l1 = -1;  // -1 default (vortex only)
    int log_every = 1;
    bool quiet = false;
};

// Fully resolved configuration after problem defaults and pairing rules.
struct ResolvedConfig {
    RunConfig in;
    int nx = 0, ny = 0;
    double ell = 0;  // physical units
    Integrator integrator = Integrator::ssp_rk3;
    double dt_power = 0;
    bool csd = true;
    RiemannSolver riemann = RiemannSolver::hllc;
    double tmax = 0;
    int quadrature = 0;
    bool report_l1 = false;
    std::string output_dir;
};

RunConfig parse_config(const std::vector<std::string>& args);
ResolvedConfig resolve_config(const RunConfig& rc);

struct RunResult {
    long steps = 0;
    double t = 0;
    double wall_seconds = 0;
    double max_troubled_frac = 0;
    double max_fog_frac = 0;
    bool checkerboard_detected = false;
    double checkerboard_time = -1;
    bool fatal = false;
    std::string fatal_message;
    std::array<double, 4> l1{};  // vs initial field, when enabled
};

class Solver {
  public:
    explicit Solver(const RunConfig& rc);

    void step();
    bool done() const;
    double t() const { return t_; }
    long steps() const { return steps_; }
    const Mesh& mesh() const { return setup_.mesh; }
    const Field& field() const { return U_; }
    const Field& initial_field() const { return init_copy_; }
    const MoodSolver& mood() const { return *mood_; }
    const ResolvedConfig& config() const { return cfg_; }
    double gamma() const { return setup_.gamma; }
    const MoodStats& last_step_stats() const { return step_stats_; }
    double last_dt() const { return last_dt_; }

    // Fraction of interior cells decremented / at first order during the
    // last step (max over its stages).
    double last_troubled_frac() const { return last_troubled_frac_; }
    double last_fog_frac() const { return last_fog_frac_; }

    void write_snapshot(const std::string& path) const;

    // Invoked after every step when set (acceptance harness hook).
    std::function<void(Solver&)> step_hook;

    RunResult run();

  private:
    struct FieldOps {
        void blend(Field& dst, const Field& anchor, const Field& other, double c) const;
        void rk4_final_base(Field& dst, const Field& u4, const Field& u2, const Field& u3,
                            const Field& d3, double dt) const;
    };

    ResolvedConfig cfg_;
    ProblemSetup setup_;
    std::unique_ptr<MoodSolver> mood_;
    Field U_, init_copy_;
    Field s1_, s2_, s3_, s4_, b_, d3_;
    double t_ = 0;
    long steps_ = 0;
    double last_dt_ = 0;
    MoodStats step_stats_;
    double last_troubled_frac_ = 0, last_fog_frac_ = 0;
    RunResult result_;
};

}  // namespace gpmood
