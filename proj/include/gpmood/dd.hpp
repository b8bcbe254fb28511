#pragma once

#include <cmath>
#include <cstdint>

// Double-double arithmetic (~106-bit significand), used only while
// assembling the integrated covariance kernels and solving for the
// prediction vectors.  Results are truncated to double once and cached;
// nothing on the per-step path touches this type.

namespace gpmood {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi; }
};

namespace detail {

// Knuth two-sum: s + err == a + b exactly.
inline void two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
}

// Fast two-sum, requires |a| >= |b|.
inline void quick_two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    err = b - (s - a);
}

// p + err == a*b exactly.
inline void two_prod(double a, double b, double& p, double& err) {
    p = a * b;
    err = std::fma(a, b, -p);
}

}  // namespace detail

inline dd operator-(const dd& a) { return {-a.hi, -a.lo}; }

inline dd operator+(const dd& a, const dd& b) {
    double s1, s2, t1, t2;
    detail::two_sum(a.hi, b.hi, s1, s2);
    detail::two_sum(a.lo, b.lo, t1, t2);
    s2 += t1;
    detail::quick_two_sum(s1, s2, s1, s2);
    s2 += t2;
    detail::quick_two_sum(s1, s2, s1, s2);
    return {s1, s2};
}

inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
    double p1, p2;
    detail::two_prod(a.hi, b.hi, p1, p2);
    p2 += a.hi * b.lo + a.lo * b.hi;
    detail::quick_two_sum(p1, p2, p1, p2);
    return {p1, p2};
}

inline dd operator/(const dd& a, const dd& b) {
    double q1 = a.hi / b.hi;
    dd r = a - dd(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - dd(q2) * b;
    double q3 = r.hi / b.hi;
    double s, e;
    detail::quick_two_sum(q1, q2, s, e);
    dd q(s, e);
    return q + dd(q3);
}

inline dd operator+(const dd& a, double b) { return a + dd(b); }
inline dd operator-(const dd& a, double b) { return a - dd(b); }
inline dd operator*(const dd& a, double b) { return a * dd(b); }
inline dd operator/(const dd& a, double b) { return a / dd(b); }
inline dd operator+(double a, const dd& b) { return dd(a) + b; }
inline dd operator-(double a, const dd& b) { return dd(a) - b; }
inline dd operator*(double a, const dd& b) { return dd(a) * b; }
inline dd operator/(double a, const dd& b) { return dd(a) / b; }

inline bool operator<(const dd& a, const dd& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator==(const dd& a, const dd& b) { return a.hi == b.hi && a.lo == b.lo; }

inline dd dd_abs(const dd& a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

// Exact scaling by a power of two.
inline dd dd_ldexp(const dd& a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

inline dd dd_sqrt(const dd& a) {
    if (a.hi == 0.0) return {0.0, 0.0};
    // One Newton step on x = 1/sqrt(a) from the double estimate gives
    // full dd accuracy: sqrt(a) ~= a*x + (a - (a*x)^2) * x / 2.
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    dd axd(ax);
    return axd + (a - axd * axd) * (x * 0.5);
}

inline constexpr dd dd_pi()      { return {3.141592653589793, 1.2246467991473532e-16}; }
inline constexpr dd dd_ln2()     { return {0.6931471805599453, 2.3190468138462996e-17}; }
inline constexpr dd dd_sqrt_pi() { return {1.772453850905516, -7.666586499825799e-17}; }
// sqrt(pi/2) and 2/sqrt(pi)
inline constexpr dd dd_sqrt_half_pi()  { return {1.2533141373155003, -9.164289990229583e-17}; }
inline constexpr dd dd_two_over_sqrt_pi() { return {1.1283791670955126, 1.533545961316588e-17}; }

inline dd dd_exp(const dd& a) {
    // e^a = 2^m * e^r with r = a - m ln2, |r| <= ln2/2, then Taylor in r.
    if (a.hi < -745.0) return {0.0, 0.0};
    if (a.hi > 709.0) return {HUGE_VAL, 0.0};
    double m = std::floor(a.hi / dd_ln2().hi + 0.5);
    dd r = a - dd_ln2() * m;
    dd sum = dd(1.0) + r;
    dd term = r;
    for (int k = 2; k < 40; ++k) {
        term = term * r / static_cast<double>(k);
        sum = sum + term;
        if (std::abs(term.hi) < 1e-36 * std::abs(sum.hi)) break;
    }
    return dd_ldexp(sum, static_cast<int>(m));
}

inline dd dd_erf(const dd& a) {
    // erf(x) = (2/sqrt(pi)) x e^{-x^2} sum_n (2x^2)^n / (2n+1)!! -- all
    // terms positive, so no cancellation; adequate up to the |x|>=9
    // cutoff where erf == 1 beyond dd precision.
    bool neg = a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0);
    dd x = neg ? -a : a;
    if (x.hi == 0.0) return {0.0, 0.0};
    dd result;
    if (x.hi >= 9.0) {
        result = dd(1.0);
    } else {
        dd x2 = x * x;
        dd tx2 = dd_ldexp(x2, 1);
        dd term(1.0);
        dd sum(1.0);
        for (int n = 1; n < 500; ++n) {
            term = term * tx2 / static_cast<double>(2 * n + 1);
            sum = sum + term;
            if (term.hi < 1e-36 * sum.hi) break;
        }
        result = dd_two_over_sqrt_pi() * x * dd_exp(-x2) * sum;
    }
    return neg ? -result : result;
}

}  // namespace gpmood
