#include "hyperq/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace hyperq {

namespace {

std::vector<double> legendre_nodes(int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        x[i] = t;
    }
    std::sort(x.begin(), x.end());
    return x;
}

std::vector<double> legendre_weights(int n, const std::vector<double>& x) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        double t = x[i];
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return w;
}

struct Panel {
    double a, b;
    cplx coarse, fine;
    double err;
};

Panel make_panel(const Integrand& f, double a, double b) {
    const auto& x12 = gl_nodes(12);
    const auto& w12 = gl_weights(12);
    const auto& x24 = gl_nodes(24);
    const auto& w24 = gl_weights(24);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx s12{0.0, 0.0}, s24{0.0, 0.0};
    // Evaluate the 24-point rule and re-use nothing from the 12-point one:
    // the node sets are disjoint, so both are evaluated outright. 36 calls
    // per panel buys an error estimate that is almost always a gross
    // overestimate, which is the point.
    for (int i = 0; i < 12; ++i) s12 += w12[i] * f(mid + half * x12[i]);
    for (int i = 0; i < 24; ++i) s24 += w24[i] * f(mid + half * x24[i]);
    s12 *= half;
    s24 *= half;
    double err = std::abs(s24 - s12);
    // Overflowing integrands produce inf/NaN; pin those panels to a huge
    // finite error so the worst-first comparison still orders them.
    if (!std::isfinite(err)) err = HUGE_VAL;
    return {a, b, s12, s24, err};
}

}  // namespace

const std::vector<double>& gl_nodes(int order) {
    static std::map<int, std::vector<double>> cache;
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, legendre_nodes(order)).first;
    return it->second;
}

const std::vector<double>& gl_weights(int order) {
    static std::map<int, std::vector<double>> cache;
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, legendre_weights(order, gl_nodes(order)))
                 .first;
    return it->second;
}

QuadratureResult integrate_panel(const Integrand& f, double a, double b) {
    Panel p = make_panel(f, a, b);
    return {p.fine, p.err, 1};
}

QuadratureResult integrate_adaptive(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opt) {
    if (!(b > a)) {
        if (a == b) return {cplx{0.0, 0.0}, 0.0, 0};
        auto r = integrate_adaptive(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    std::vector<Panel> panels;
    panels.push_back(make_panel(f, a, b));
    while ((int)panels.size() < opt.max_panels) {
        cplx total{0.0, 0.0};
        double err = 0.0;
        for (const auto& p : panels) {
            total += p.fine;
            err += p.err;
        }
        if (err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)))
            break;
        // Split the worst panel; ties resolved by leftmost position so the
        // refinement order (and hence the result bit pattern) is stable.
        int worst = 0;
        for (int i = 1; i < (int)panels.size(); ++i) {
            if (panels[i].err > panels[worst].err ||
                (panels[i].err == panels[worst].err &&
                 panels[i].a < panels[worst].a))
                worst = i;
        }
        Panel old = panels[worst];
        double mid = 0.5 * (old.a + old.b);
        if (mid <= old.a || mid >= old.b) break;  // interval at resolution limit
        panels[worst] = make_panel(f, old.a, mid);
        panels.push_back(make_panel(f, mid, old.b));
    }
    QuadratureResult res;
    for (const auto& p : panels) {
        res.value += p.fine;
        res.err += p.err;
    }
    res.panels = (int)panels.size();
    return res;
}

namespace {

// Shared tail logic: feed successive window contributions, decide between
// "converged", "keep going" and NonDecayingTail.
class TailJudge {
  public:
    explicit TailJudge(const TailOptions& opt) : opt_(opt) {}

    // Returns true once the run may stop (converged).
    bool absorb(cplx contribution, double window_err, cplx running_total) {
        double mag = std::abs(contribution);
        if (!std::isfinite(mag))
            throw NonDecayingTail(
                "window contribution is not finite; integrand grows beyond "
                "double range");
        double target =
            std::max(opt_.abs_tol, opt_.rel_tol * std::abs(running_total));
        small_streak_ = (mag <= target) ? small_streak_ + 1 : 0;
        if (prev_mag_ > 0.0 && mag > 0.0) {
            double ratio = mag / prev_mag_;
            if (prev_ratio_ > 0.0 && ratio > prev_ratio_ * (1.0 + opt_.growth_tol))
                ++growth_streak_;
            else
                growth_streak_ = 0;
            prev_ratio_ = ratio;
        } else {
            prev_ratio_ = -1.0;
            growth_streak_ = 0;
        }
        prev_mag_ = mag;
        if (growth_streak_ >= 2)
            throw NonDecayingTail(
                "window contributions accelerate instead of decaying");
        (void)window_err;
        return small_streak_ >= 2;
    }

  private:
    TailOptions opt_;
    double prev_mag_ = -1.0;
    double prev_ratio_ = -1.0;
    int small_streak_ = 0;
    int growth_streak_ = 0;
};

}  // namespace

TailResult integrate_semi_infinite(const Integrand& f, double a,
                                   const TailOptions& opt) {
    QuadratureOptions qopt;
    qopt.rel_tol = opt.rel_tol * 0.1;
    qopt.abs_tol = opt.abs_tol * 0.1;
    TailResult res;
    TailJudge judge(opt);
    double lo = a;
    double span = 1.0;
    for (int k = 0; k < opt.max_extensions; ++k) {
        double hi = lo + span;
        auto part = integrate_adaptive(f, lo, hi, qopt);
        res.value += part.value;
        res.err += part.err;
        res.reached = hi;
        res.extensions = k + 1;
        if (judge.absorb(part.value, part.err, res.value)) return res;
        lo = hi;
        span *= 2.0;
    }
    throw NonDecayingTail(
        "semi-infinite integral did not settle within the window budget");
}

LineResult integrate_line_expanding(const Integrand& f, double center,
                                    double seed_halfwidth,
                                    const TailOptions& opt) {
    QuadratureOptions qopt;
    qopt.rel_tol = opt.rel_tol * 0.1;
    qopt.abs_tol = opt.abs_tol * 0.1;
    LineResult res;
    res.lo = center - seed_halfwidth;
    res.hi = center + seed_halfwidth;
    auto seed = integrate_adaptive(f, res.lo, res.hi, qopt);
    res.value = seed.value;
    res.err = seed.err;
    TailJudge right(opt), left(opt);
    bool right_done = false, left_done = false;
    double right_span = seed_halfwidth, left_span = seed_halfwidth;
    for (int k = 0; k < 2 * opt.max_extensions; ++k) {
        if (right_done && left_done) return res;
        if (!right_done) {
            double hi = res.hi + right_span;
            auto part = integrate_adaptive(f, res.hi, hi, qopt);
            res.value += part.value;
            res.err += part.err;
            res.hi = hi;
            ++res.extensions;
            right_span *= 2.0;
            right_done = right.absorb(part.value, part.err, res.value);
        }
        if (!left_done) {
            double lo = res.lo - left_span;
            auto part = integrate_adaptive(f, lo, res.lo, qopt);
            res.value += part.value;
            res.err += part.err;
            res.lo = lo;
            ++res.extensions;
            left_span *= 2.0;
            left_done = left.absorb(part.value, part.err, res.value);
        }
    }
    throw NonDecayingTail(
        "line integral did not settle within the window budget");
}

}  // namespace hyperq
