#include "hhm/smooth_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hhm/hh_refinements.hpp"
#include "hhm/scalar_means.hpp"

namespace hhm {

namespace {

void require_segment(const ConvexFunction& f, double a, double b) {
    if (!(a < b)) throw OrientationError("bounds need a < b");
    if (!f.domain.contains(a, b)) throw DomainError("segment outside the domain of " + f.id);
}

void require_oriented(PositivePair p) {
    if (!p.oriented()) throw OrientationError("mean-specialized bound checks need b >= a");
}

double resolve_K(const ConvexFunction& f, double a, double b) {
    if (f.deriv_bound) return *f.deriv_bound;
    const DerivativeBounds d = estimate_derivative_bounds(f, a, b);
    if (!d.K) throw MissingBoundError("no derivative bound K for " + f.id);
    return *d.K;
}

CurvatureBounds resolve_curvature(const ConvexFunction& f, double a, double b) {
    if (f.curvature) return *f.curvature;
    const DerivativeBounds d = estimate_derivative_bounds(f, a, b);
    if (!d.curvature) throw MissingBoundError("no curvature bounds m, M for " + f.id);
    return *d.curvature;
}

double mean_over(const ConvexFunction& f, double a, double b, const QuadConfig& q) {
    return integrate_unit([&](double t) { return f(a + (b - a) * t); }, q).value;
}

// Terms shared by the mean-specialized checks: G1 and G2 as in the header, in log form.
double log_geom_of_split_ariths(PositivePair p, Weight w) {
    const double lo = wgt_arith(p, w.half());
    const double hi = wgt_arith(p, w.upper_half());
    return arith(std::log(lo), std::log(hi), w);
}

double log_geom_arith_mid(PositivePair p, Weight w) {
    const double v = w.value();
    const double log_geom = arith(std::log(p.a()), std::log(p.b()), v);
    return 0.5 * (log_geom + std::log(wgt_arith(p, w)));
}

double log_scale(std::initializer_list<double> logs) {
    double s = 1.0;
    for (double x : logs) s = std::max(s, std::abs(x));
    return s;
}

}  // namespace

GapBoundReport make_gap_report(double gap, double lower, double upper, double scale, double tol) {
    GapBoundReport r;
    r.gap = gap;
    r.lower_bound = lower;
    r.upper_bound = upper;
    r.scale = scale;
    r.tol_used = tol;
    r.pass = lower - tol * scale <= gap && gap <= upper + tol * scale;
    return r;
}

DerivativeBounds estimate_derivative_bounds(const ConvexFunction& f, double a, double b, int n_grid,
                                            bool allow_finite_differences) {
    if (a > b) std::swap(a, b);
    if (!f.domain.contains(a, b)) throw DomainError("segment outside the domain of " + f.id);
    DerivativeBounds out;
    if (f.builtin) {
        switch (*f.builtin) {
            case Builtin::exp:
                out.K = std::exp(b);
                out.curvature = CurvatureBounds{std::exp(a), std::exp(b)};
                break;
            case Builtin::neg_log:
                out.K = 1.0 / a;
                out.curvature = CurvatureBounds{1.0 / (b * b), 1.0 / (a * a)};
                break;
            case Builtin::square:
                out.K = 2.0 * std::max(std::abs(a), std::abs(b));
                out.curvature = CurvatureBounds{2.0, 2.0};
                break;
            case Builtin::quartic: {
                const double r = std::max(std::abs(a), std::abs(b));
                const double inner = (a <= 0.0 && b >= 0.0) ? 0.0 : std::min(std::abs(a), std::abs(b));
                out.K = 4.0 * r * r * r;
                out.curvature = CurvatureBounds{12.0 * inner * inner, 12.0 * r * r};
                break;
            }
            case Builtin::xlogx:
                out.K = std::max(std::abs(std::log(a) + 1.0), std::abs(std::log(b) + 1.0));
                out.curvature = CurvatureBounds{1.0 / b, 1.0 / a};
                break;
        }
        return out;
    }

    if (n_grid < 2) throw DomainError("n_grid must be at least 2");
    std::function<double(double)> d1 = f.deriv1;
    std::function<double(double)> d2 = f.deriv2;
    if (allow_finite_differences) {
        const auto step = [](double x) { return 1e-4 * std::max(1.0, std::abs(x)); };
        if (!d1) {
            d1 = [&f, step](double x) {
                const double h = step(x);
                return (f(x + h) - f(x - h)) / (2.0 * h);
            };
        }
        if (!d2) {
            d2 = [&f, step](double x) {
                const double h = step(x);
                return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
            };
        }
    }
    if (!d1 && !d2) throw MissingBoundError(f.id + " has no derivatives and finite differences are disabled");

    // Finite differences reach h beyond the sample points; stay inside an open domain.
    double lo = a;
    double hi = b;
    const double pad = 1e-4 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    if (!f.domain.contains(lo - pad)) lo += pad;
    if (!f.domain.contains(hi + pad)) hi -= pad;

    double k = 0.0;
    double m = std::numeric_limits<double>::infinity();
    double big_m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_grid; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_grid - 1);
        if (d1) k = std::max(k, std::abs(d1(x)));
        if (d2) {
            const double c = d2(x);
            m = std::min(m, c);
            big_m = std::max(big_m, c);
        }
    }
    if (d1) out.K = 1.01 * k;
    if (d2) out.curvature = CurvatureBounds{m - 0.01 * std::abs(m), big_m + 0.01 * std::abs(big_m)};
    return out;
}

GapBoundReport hh_trapezoid_bounds(const ConvexFunction& f, double a, double b, const QuadConfig& q, double tol) {
    require_segment(f, a, b);
    const CurvatureBounds c = resolve_curvature(f, a, b);
    const double avg = mean_over(f, a, b, q);
    const double ends = 0.5 * (f(a) + f(b));
    const double h2 = 0.25 * (b - a) * (b - a);
    return make_gap_report(ends - avg, c.m / 3.0 * h2, c.M / 3.0 * h2,
                           std::max({std::abs(f(a)), std::abs(f(b)), std::abs(avg)}), tol);
}

GapBoundReport hh_midpoint_bounds(const ConvexFunction& f, double a, double b, const QuadConfig& q, double tol) {
    require_segment(f, a, b);
    const CurvatureBounds c = resolve_curvature(f, a, b);
    const double avg = mean_over(f, a, b, q);
    const double mid = f(0.5 * (a + b));
    const double h2 = 0.25 * (b - a) * (b - a);
    return make_gap_report(avg - mid, c.m / 6.0 * h2, c.M / 6.0 * h2, std::max(std::abs(avg), std::abs(mid)), tol);
}

GapBoundPair thm32_gaps(const ConvexFunction& f, double a, double b, Weight w, const QuadConfig& q, double tol) {
    require_segment(f, a, b);
    const double K = resolve_K(f, a, b);
    const double v = w.value();
    const double c = c_fv(f, a, b, w, q);
    const double lo = r1(f, a, b, w);
    const double hi = r2(f, a, b, w);
    const double bound = v * (1.0 - v) * K * (b - a) / 2.0;
    return {make_gap_report(c - lo, 0.0, bound, std::max(std::abs(c), std::abs(lo)), tol),
            make_gap_report(hi - c, 0.0, bound, std::max(std::abs(c), std::abs(hi)), tol)};
}

GapBoundPair thm33_gaps(const ConvexFunction& f, double a, double b, Weight w, const QuadConfig& q, double tol) {
    require_segment(f, a, b);
    const CurvatureBounds cb = resolve_curvature(f, a, b);
    const double v = w.value();
    const double c = c_fv(f, a, b, w, q);
    const double lo = r1(f, a, b, w);
    const double hi = r2(f, a, b, w);
    const double base = v * (1.0 - v) * 0.25 * (b - a) * (b - a);
    return {make_gap_report(c - lo, base * cb.m / 6.0, base * cb.M / 6.0, std::max(std::abs(c), std::abs(lo)), tol),
            make_gap_report(hi - c, base * cb.m / 3.0, base * cb.M / 3.0, std::max(std::abs(c), std::abs(hi)), tol)};
}

GapBoundPair cor31_check(PositivePair p, Weight w, double tol) {
    require_oriented(p);
    const ChainReport chain = mean_chain_log(p, w, tol);
    const double split = chain.values[1];
    const double l = chain.values[2];
    const double avg = chain.values[3];
    const double v = w.value();
    const double bound = v * (1.0 - v) * p.b() / 2.0 * std::log(p.b() / p.a());
    return {make_gap_report(l - split, 0.0, bound, std::max(l, split), tol),
            make_gap_report(avg - l, 0.0, bound, std::max(l, avg), tol)};
}

GapBoundPair cor32_check(PositivePair p, Weight w, double tol) {
    require_oriented(p);
    const double log_i = log_wgt_identric(p, w);
    const double log_g1 = log_geom_of_split_ariths(p, w);
    const double log_g2 = log_geom_arith_mid(p, w);
    const double v = w.value();
    const double bound = v * (1.0 - v) * (p.b() - p.a()) / (2.0 * p.a());
    return {make_gap_report(log_g1 - log_i, 0.0, bound, log_scale({log_g1, log_i}), tol),
            make_gap_report(log_i - log_g2, 0.0, bound, log_scale({log_i, log_g2}), tol)};
}

GapBoundPair cor33_check(PositivePair p, Weight w, double tol) {
    require_oriented(p);
    const ChainReport chain = mean_chain_log(p, w, tol);
    const double split = chain.values[1];
    const double l = chain.values[2];
    const double avg = chain.values[3];
    const double v = w.value();
    const double lr = std::log(p.b() / p.a());
    const double base = v * (1.0 - v) * lr * lr;
    return {make_gap_report(l - split, base * p.a() / 24.0, base * p.b() / 24.0, std::max(l, split), tol),
            make_gap_report(avg - l, base * p.a() / 12.0, base * p.b() / 12.0, std::max(l, avg), tol)};
}

GapBoundPair cor34_check(PositivePair p, Weight w, double tol) {
    require_oriented(p);
    const double log_i = log_wgt_identric(p, w);
    const double log_g1 = log_geom_of_split_ariths(p, w);
    const double log_g2 = log_geom_arith_mid(p, w);
    const double v = w.value();
    const double d = p.b() - p.a();
    const double base = v * (1.0 - v) * d * d;
    const double a2 = p.a() * p.a();
    const double b2 = p.b() * p.b();
    return {make_gap_report(log_g1 - log_i, base / (24.0 * b2), base / (24.0 * a2), log_scale({log_g1, log_i}), tol),
            make_gap_report(log_i - log_g2, base / (12.0 * b2), base / (12.0 * a2), log_scale({log_i, log_g2}), tol)};
}

}  // namespace hhm
