#include "hyperq/numerics/special.hpp"

#include <cmath>

namespace hyperq {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double smoothstep_cinf(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double a = std::exp(-1.0 / s);
    double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

QuadraticFit polyfit_quadratic(const std::vector<double>& x,
                               const std::vector<double>& y) {
    const size_t n = x.size();
    if (n != y.size() || n < 3)
        throw FitError("quadratic fit needs at least 3 matching points");
    double xbar = 0.0;
    for (double v : x) xbar += v;
    xbar /= (double)n;
    // Normal equations in the centered variable t = x - xbar.
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    double b0 = 0, b1 = 0, b2 = 0;
    for (size_t i = 0; i < n; ++i) {
        double t = x[i] - xbar, t2 = t * t;
        s1 += t;
        s2 += t2;
        s3 += t2 * t;
        s4 += t2 * t2;
        b0 += y[i];
        b1 += y[i] * t;
        b2 += y[i] * t2;
    }
    double m[3][3] = {{(double)n, s1, s2}, {s1, s2, s3}, {s2, s3, s4}};
    double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                 m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (!(std::abs(det) > 1e-30 * std::max(1.0, s4 * s2 * (double)n)))
        throw FitError("quadratic fit is degenerate (collinear abscissae?)");
    auto solve = [&](int col) {
        double a[3][3];
        double rhs[3] = {b0, b1, b2};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) a[r][c] = (c == col) ? rhs[r] : m[r][c];
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])) /
               det;
    };
    double a0 = solve(0), a1 = solve(1), a2 = solve(2);
    // Undo the centering: y = a0 + a1 (x - xbar) + a2 (x - xbar)^2.
    QuadraticFit fit;
    fit.c2 = a2;
    fit.c1 = a1 - 2.0 * a2 * xbar;
    fit.c0 = a0 - a1 * xbar + a2 * xbar * xbar;
    return fit;
}

LineFit polyfit_line(const std::vector<double>& x,
                     const std::vector<double>& y) {
    const size_t n = x.size();
    if (n != y.size() || n < 2)
        throw FitError("line fit needs at least 2 matching points");
    double xbar = 0, ybar = 0;
    for (size_t i = 0; i < n; ++i) {
        xbar += x[i];
        ybar += y[i];
    }
    xbar /= (double)n;
    ybar /= (double)n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    if (!(sxx > 0.0)) throw FitError("line fit has zero abscissa variance");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    return fit;
}

namespace {

template <typename T>
T bs_extrapolate(const std::vector<double>& h, const std::vector<T>& y) {
    const size_t n = h.size();
    if (n != y.size() || n < 2)
        throw FitError("extrapolation needs at least 2 points");
    for (size_t i = 0; i < n; ++i) {
        if (!(h[i] > 0.0)) throw FitError("extrapolation abscissae must be > 0");
        for (size_t j = i + 1; j < n; ++j)
            if (h[i] == h[j]) throw FitError("extrapolation abscissae must differ");
    }
    // Bulirsch-Stoer rational extrapolation tableau evaluated at h = 0.
    std::vector<std::vector<T>> t(n, std::vector<T>(n, T{}));
    for (size_t i = 0; i < n; ++i) t[i][0] = y[i];
    for (size_t k = 1; k < n; ++k) {
        for (size_t i = 0; i + k < n; ++i) {
            T c = t[i + 1][k - 1];
            T d = t[i][k - 1];
            T prev = (k > 1) ? t[i + 1][k - 2] : T{};
            // Exactly coincident tableau entries mean the rational
            // interpolant already reproduces the data (typical when the
            // input is itself a low-degree rational); the correction term
            // is 0/0 there, and the right continuation is "no correction".
            if (std::abs(c - d) == 0.0 || std::abs(c - prev) == 0.0) {
                t[i][k] = c;
                continue;
            }
            T denom = (h[i] / h[i + k]) * (T{1.0} - (c - d) / (c - prev)) -
                      T{1.0};
            if (std::abs(denom) == 0.0)
                throw FitError("degenerate extrapolation tableau");
            t[i][k] = c + (c - d) / denom;
        }
    }
    return t[0][n - 1];
}

}  // namespace

double extrapolate_to_zero(const std::vector<double>& h,
                           const std::vector<double>& y) {
    return bs_extrapolate<double>(h, y);
}

cplx extrapolate_to_zero(const std::vector<double>& h,
                         const std::vector<cplx>& y) {
    return bs_extrapolate<cplx>(h, y);
}

}  // namespace hyperq
