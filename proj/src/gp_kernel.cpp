#include "gpmood/gp_kernel.hpp"

namespace gpmood {

namespace {

inline dd erf_scaled(const dd& a, const dd& rt2s) { return dd_erf(a / rt2s); }

inline dd gauss(const dd& a, const dd& sigma) {
    return dd_exp(-(a * a) / dd_ldexp(sigma * sigma, 1));
}

}  // namespace

dd cov_factor_1d(int delta, const dd& sigma) {
    // sqrt(pi/2)*sigma*[ (d+1)erf((d+1)/s√2) + (d-1)erf((d-1)/s√2) - 2d erf(d/s√2) ]
    //   + sigma^2 [ e(d+1) + e(d-1) - 2 e(d) ],  e(a) = exp(-a^2/2s^2).
    // The +1/-1 terms are summed pairwise so the result is bit-even in d.
    dd d(static_cast<double>(delta));
    dd rt2s = dd_sqrt(dd(2.0)) * sigma;
    dd dp = d + 1.0;
    dd dm = d - 1.0;
    dd erf_part = (dp * erf_scaled(dp, rt2s) + dm * erf_scaled(dm, rt2s)) -
                  dd_ldexp(d * erf_scaled(d, rt2s), 1);
    dd exp_part = (gauss(dp, sigma) + gauss(dm, sigma)) - dd_ldexp(gauss(d, sigma), 1);
    return dd_sqrt_half_pi() * sigma * erf_part + sigma * sigma * exp_part;
}

dd pred_factor_1d(const dd& delta, const dd& sigma) {
    dd rt2s = dd_sqrt(dd(2.0)) * sigma;
    dd half(0.5);
    return dd_sqrt_half_pi() * sigma *
           (erf_scaled(delta + half, rt2s) - erf_scaled(delta - half, rt2s));
}

dd second_derivative_factor_1d(const dd& delta, const dd& sigma, const dd& ell) {
    dd dm = delta - dd(0.5);
    dd dp = delta + dd(0.5);
    dd bracket = dm * gauss(dm, sigma) - dp * gauss(dp, sigma);
    return bracket / (ell * ell);
}

}  // namespace gpmood
