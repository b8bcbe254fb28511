#pragma once

#include <array>
#include <stdexcept>

namespace gpmood {

// Gaussian quadrature on the reference face interval [-1/2, 1/2].
// Points are ordered g1 > g2 > ... so the reflection partner of point m
// is point q-1-m.
struct QuadratureRule {
    int q = 1;
    std::array<double, 4> g{};
    std::array<double, 4> w{};
};

QuadratureRule quadrature_rule(int q);

// 5-point Gauss-Legendre on [-1/2, 1/2], used for pointwise -> volume
// average conversion of initial conditions (exact through degree 9).
struct GaussLegendre5 {
    std::array<double, 5> g{};  // ascending, antisymmetric
    std::array<double, 5> w{};
};

GaussLegendre5 gauss_legendre_5();

// Reflection-invariant weighted sums: terms are grouped so that reversing
// the point order produces a bit-identical result.
inline double symmetric_qsum(const double* t, int q) {
    switch (q) {
        case 1: return t[0];
        case 2: return t[0] + t[1];
        case 3: return (t[0] + t[2]) + t[1];
        case 4: return (t[0] + t[3]) + (t[1] + t[2]);
        default: throw std::invalid_argument("symmetric_qsum: q out of range");
    }
}

inline double symmetric_sum5(const double* t) {
    return ((t[0] + t[4]) + (t[1] + t[3])) + t[2];
}

}  // namespace gpmood
