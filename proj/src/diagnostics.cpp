#include "gpmood/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace gpmood {

std::array<double, 4> l1_error(const Field& a, const Field& b, const Mesh& m) {
    std::array<double, 4> err{};
    double cell = m.ndim == 2 ? m.dx * m.dy : m.dx;
    for (int c = 0; c < 4; ++c) {
        double s = 0.0;
        for (int jj = 0; jj < m.ny; ++jj) {
            int row = m.id(m.gx(), m.gy() + jj);
            for (int i = 0; i < m.nx; ++i)
                s += std::abs(a.comp[c][row + i] - b.comp[c][row + i]);
        }
        err[c] = s * cell;
    }
    return err;
}

std::array<double, 4> conserved_totals(const Field& f, const Mesh& m) {
    std::array<double, 4> tot{};
    double cell = m.ndim == 2 ? m.dx * m.dy : m.dx;
    for (int c = 0; c < 4; ++c) {
        double s = 0.0;
        for (int jj = 0; jj < m.ny; ++jj) {
            int row = m.id(m.gx(), m.gy() + jj);
            for (int i = 0; i < m.nx; ++i) s += f.comp[c][row + i];
        }
        tot[c] = s * cell;
    }
    return tot;
}

namespace {

double max_abs_interior(const Field& f, const Mesh& m, int comp) {
    double mx = 0.0;
    for (int jj = 0; jj < m.ny; ++jj) {
        int row = m.id(m.gx(), m.gy() + jj);
        for (int i = 0; i < m.nx; ++i) mx = std::max(mx, std::abs(f.comp[comp][row + i]));
    }
    return mx;
}

}  // namespace

double mirror_x_asymmetry(const Field& f, const Mesh& m, int comp, double sign) {
    double scale = max_abs_interior(f, m, comp);
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int jj = 0; jj < m.ny; ++jj) {
        for (int ii = 0; ii < m.nx / 2; ++ii) {
            double a = f.comp[comp][m.id(m.gx() + ii, m.gy() + jj)];
            double b = f.comp[comp][m.id(m.gx() + m.nx - 1 - ii, m.gy() + jj)];
            worst = std::max(worst, std::abs(a - sign * b));
        }
    }
    return worst / scale;
}

double mirror_y_asymmetry(const Field& f, const Mesh& m, int comp, double sign) {
    double scale = max_abs_interior(f, m, comp);
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int jj = 0; jj < m.ny / 2; ++jj) {
        for (int ii = 0; ii < m.nx; ++ii) {
            double a = f.comp[comp][m.id(m.gx() + ii, m.gy() + jj)];
            double b = f.comp[comp][m.id(m.gx() + ii, m.gy() + m.ny - 1 - jj)];
            worst = std::max(worst, std::abs(a - sign * b));
        }
    }
    return worst / scale;
}

double diagonal_asymmetry(const Field& f, const Mesh& m, int comp_a, int comp_b) {
    double scale = std::max(max_abs_interior(f, m, comp_a), max_abs_interior(f, m, comp_b));
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int jj = 0; jj < m.ny; ++jj) {
        for (int ii = 0; ii <= jj && ii < m.nx; ++ii) {
            double a = f.comp[comp_a][m.id(m.gx() + ii, m.gy() + jj)];
            double b = f.comp[comp_b][m.id(m.gx() + jj, m.gy() + ii)];
            worst = std::max(worst, std::abs(a - b));
        }
    }
    return worst / scale;
}

CheckerboardResult checkerboard_metric(const Field& f, const Mesh& m) {
    CheckerboardResult r;
    int half = std::max(4, std::min(m.nx, m.ny) / 16);
    int ci = m.gx() + m.nx / 2, cj = m.gy() + m.ny / 2;
    long count = 0;
    double mean = 0.0;
    for (int j = cj - half; j < cj + half; ++j)
        for (int i = ci - half; i < ci + half; ++i) {
            mean += f.comp[0][m.id(i, j)];
            ++count;
        }
    mean /= static_cast<double>(count);
    double var = 0.0, nyq = 0.0;
    for (int j = cj - half; j < cj + half; ++j)
        for (int i = ci - half; i < ci + half; ++i) {
            double d = f.comp[0][m.id(i, j)] - mean;
            var += d * d;
            nyq += ((i + j) & 1) ? -d : d;
        }
    if (var <= 0.0 || !std::isfinite(var)) {
        // A NaN-contaminated window counts as flagged: the pattern already
        // destroyed the state.
        r.flagged = !std::isfinite(var);
        r.ratio = r.flagged ? 1.0 : 0.0;
        return r;
    }
    r.ratio = (nyq * nyq / static_cast<double>(count)) / var;
    r.flagged = r.ratio > 0.1;
    return r;
}

}  // namespace gpmood
