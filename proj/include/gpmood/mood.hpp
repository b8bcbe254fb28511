#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "gpmood/mesh.hpp"
#include "gpmood/prediction.hpp"
#include "gpmood/quadrature.hpp"
#include "gpmood/riemann.hpp"
#include "gpmood/schemes.hpp"

namespace gpmood {

struct DetectionConfig {
    double sigma_v = 5.0;
    double sigma_p = 5.0;
    bool csd_enabled = true;
    bool u2_centered = false;  // centered-difference curvature cross-check
};

// Individual admissibility predicates of the detection chain.
namespace detect {

// rejects NaN and +/-Inf without branching on classification
inline bool finite_value(double x) { return (x - x) == 0.0; }

inline bool cad_values(double rho, double p) {
    return finite_value(rho) && finite_value(p);
}

// strict positivity, no floor
inline bool pad(double rho, double p) { return rho > 0.0 && p > 0.0; }

// early acceptance where the flow is weakly compressible
inline bool csd_weak(double div_v, double grad_p, double sigma_v, double sigma_p) {
    return div_v >= -sigma_v && grad_p <= sigma_p;
}

inline bool plateau(double spread, double eps) { return spread < eps; }

// inclusive bounds against the stage-begin neighborhood extrema
inline bool dmp(double lo, double hi, double rho) { return lo <= rho && rho <= hi; }

// smooth-extremum reinstatement from neighborhood curvature extrema
inline bool u2_smooth_extremum(double cmin, double cmax, double delta) {
    bool same_sign = cmin * cmax > -delta;
    if (!same_sign) return false;
    if (std::max(std::abs(cmax), std::abs(cmin)) < delta) return true;
    return std::abs(cmin) >= 0.5 * std::abs(cmax);
}

// both Riemann states of a face reconstruct at the lower-order side
inline int edp1_ladder_index(int lad_a, int lad_b) { return std::max(lad_a, lad_b); }

}  // namespace detect

struct MoodStats {
    long cad_fail = 0;
    long pad_fail = 0;
    long dmp_fail = 0;  // rejected by the maximum principle, not reinstated
    long u2_reinstate = 0;
    long csd_accept = 0;
    long plateau_accept = 0;
    long troubled = 0;  // cells decremented at least once this stage
    int iterations = 0;
    std::array<long, 4> order_count{};  // final cells per ladder position

    void accumulate(const MoodStats& s) {
        cad_fail += s.cad_fail;
        pad_fail += s.pad_fail;
        dmp_fail += s.dmp_fail;
        u2_reinstate += s.u2_reinstate;
        csd_accept += s.csd_accept;
        plateau_accept += s.plateau_accept;
        troubled += s.troubled;
        iterations += s.iterations;
        for (size_t k = 0; k < order_count.size(); ++k) order_count[k] += s.order_count[k];
    }
};

// Prediction vectors and quadrature bound to a mesh (flattened offsets).
struct SchemeTables {
    SchemeId id = SchemeId::fog;
    PredictionVectorSet set;
    QuadratureRule qr;
    std::vector<int32_t> off;

    struct Op {
        const double* w;
        const int32_t* off;
        const SumPlan* plan;
        int n;
    };
    Op op(int face, int qpt) const {
        return {set.weights[face][qpt].data(), off.data(), &set.stencil.plan, set.stencil.n};
    }
    Op d2op(int dir) const {
        return {set.d2[dir].data(), off.data(), &set.stencil.plan, set.stencil.n};
    }
};

// One MOOD-validated forward update per call: candidate = base - coef *
// divergence(W), where every cell's reconstruction order cascades down the
// ladder until its candidate passes the detection chain
// (CAD -> PAD -> CSD -> plateau -> DMP -> u2), faces following the
// lower-order side of each pair.
class MoodSolver {
  public:
    MoodSolver(const Mesh& mesh, const BoundaryCondition& bc, double gamma,
               RiemannSolver rs, MethodId method, StencilShape shape, double ell,
               int q_override, const DetectionConfig& det);

    void stage_update(Field& W, const Field& base, double coef, double t, Field& cand,
                      MoodStats& stats);


    const std::vector<double>& divergence(int c) const { return div_[c]; }
    const std::vector<int8_t>& order_map() const { return order_; }
    const std::vector<SchemeId>& ladder() const { return ladder_; }
    const SchemeTables& tables(int lad) const { return *tables_[lad]; }
    const Mesh& mesh() const { return mesh_; }
    int scheme_order_at(int ii, int jj) const;  // formal order, local interior coords

  private:
    void precompute_stage(Field& W, double t);
    void batch_pass(const Field& W);
    void recompute_x_face(const Field& W, int fi, int jj);
    void recompute_y_face(const Field& W, int ii, int fj);
    void recompute_divergence(int ii, int jj);
    enum class Verdict { accept, fail, defer };
    Verdict detect_cell(const Field& W, const Field& cand, int ii, int jj, MoodStats& st);
    bool u2_ok(const Field& W, int ii, int jj);
    void push_dirty_from_failure(int ii, int jj);

    int fx_index(int fi, int jj) const { return jj * (mesh_.nx + 1) + fi; }
    int fy_index(int ii, int fj) const { return fj * mesh_.nx + ii; }

    Mesh mesh_;
    BoundaryCondition bc_;
    double gamma_;
    RiemannSolver rs_;
    DetectionConfig det_;
    std::vector<SchemeId> ladder_;
    std::vector<std::unique_ptr<SchemeTables>> tables_;
    std::unique_ptr<SchemeTables> u2_tables_;  // curvature operator source
    double delta_u2_ = 0;                      // min(dx, dy)
    double plateau_eps_ = 0;                   // min(dx^3, dy^3)
    bool periodic_x_ = false, periodic_y_ = false;

    // stage-begin data
    std::vector<double> u_, v_, p_;
    std::vector<double> dmp_lo_, dmp_hi_;
    std::vector<uint8_t> csd_ok_, plateau_ok_;
    std::vector<int8_t> u2_cache_;

    std::vector<int8_t> order_;
    std::vector<uint8_t> troubled_;
    std::array<std::vector<double>, 4> fxsum_, fysum_, div_;
    std::array<std::vector<uint8_t>, 2> okx_, oky_;

    // batch row scratch
    std::array<std::vector<double>, 4> row_l_, row_r_;
    std::array<std::array<std::vector<double>, 4>, 4> row_f_;  // [qpt][comp]

    // dirty tracking
    std::vector<uint32_t> stamp_fx_, stamp_fy_, stamp_cell_;
    uint32_t stamp_ = 0;
    std::vector<int> fail_list_, dirty_cells_, dirty_fx_, dirty_fy_;
};

}  // namespace gpmood
