#include "gpmood/quadrature.hpp"

#include <cmath>

namespace gpmood {

QuadratureRule quadrature_rule(int q) {
    QuadratureRule r;
    r.q = q;
    switch (q) {
        case 1:
            r.g = {0.0, 0.0, 0.0, 0.0};
            r.w = {1.0, 0.0, 0.0, 0.0};
            break;
        case 2: {
            double g = 1.0 / (2.0 * std::sqrt(3.0));
            r.g = {g, -g, 0.0, 0.0};
            r.w = {0.5, 0.5, 0.0, 0.0};
            break;
        }
        case 3: {
            double g = 0.5 * std::sqrt(3.0 / 5.0);
            r.g = {g, 0.0, -g, 0.0};
            r.w = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0, 0.0};
            break;
        }
        case 4: {
            double s = std::sqrt(6.0 / 5.0);
            double g_out = 0.5 * std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * s);
            double g_in = 0.5 * std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * s);
            double w_out = (18.0 - std::sqrt(30.0)) / 72.0;
            double w_in = (18.0 + std::sqrt(30.0)) / 72.0;
            r.g = {g_out, g_in, -g_in, -g_out};
            r.w = {w_out, w_in, w_in, w_out};
            break;
        }
        default:
            throw std::invalid_argument("quadrature_rule: q must be in {1,2,3,4}");
    }
    return r;
}

GaussLegendre5 gauss_legendre_5() {
    GaussLegendre5 r;
    double n1 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    double n2 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    double w0 = 128.0 / 225.0;
    double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    r.g = {-0.5 * n2, -0.5 * n1, 0.0, 0.5 * n1, 0.5 * n2};
    r.w = {0.5 * w2, 0.5 * w1, 0.5 * w0, 0.5 * w1, 0.5 * w2};
    return r;
}

}  // namespace gpmood
