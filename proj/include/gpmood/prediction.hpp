#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "gpmood/dd.hpp"
#include "gpmood/schemes.hpp"
#include "gpmood/stencil.hpp"

namespace gpmood {

enum Face { face_east = 0, face_west = 1, face_north = 2, face_south = 3 };

struct KernelConfig {
    double ell = 1.0;  // correlation length, physical units
    double dx = 1.0;
    double dy = 1.0;
    int ndim = 2;
};

// Precomputed face-reconstruction weight vectors (one per face and
// quadrature point) plus cell-centered second-derivative weight vectors.
// Data-independent: built once per grid configuration and reused.
//
// Construction is canonicalized so that mirror/transpose relations between
// faces hold bit-exactly: the east-face vectors are solved in extended
// precision, the remaining faces are index permutations of them (north is
// built separately when dx != dy).
struct PredictionVectorSet {
    SchemeId scheme = SchemeId::fog;
    StencilGeometry stencil;
    KernelConfig config;
    int q = 1;
    std::array<std::vector<std::array<double, kMaxStencil>>, 4> weights;  // [face][qpt][k]
    std::array<std::array<double, kMaxStencil>, 2> d2{};                  // [dir][k]
    bool has_d2 = false;
};

PredictionVectorSet build_prediction_set(SchemeId scheme, StencilShape shape,
                                         const KernelConfig& cfg, int q_override = 0);

// Extended-precision internals (exposed for tests).
std::vector<dd> build_covariance_dd(const StencilGeometry& st, const KernelConfig& cfg);
// In-place lower Cholesky factor; throws std::runtime_error if a pivot is
// not positive (covariance not SPD after rounding).
void cholesky_dd(std::vector<dd>& a, int n);
std::vector<dd> cholesky_solve_dd(const std::vector<dd>& chol, int n,
                                  const std::vector<dd>& rhs);
// 2-norm condition number estimate of the covariance via extended-precision
// power/inverse-power iteration.
double covariance_condition_number(const StencilGeometry& st, const KernelConfig& cfg);

void dump_prediction_vectors(const PredictionVectorSet& s, std::ostream& os);

}  // namespace gpmood
