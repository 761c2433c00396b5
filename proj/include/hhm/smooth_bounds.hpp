#pragma once

#include <optional>

#include "hhm/convex_fn.hpp"
#include "hhm/quadrature.hpp"
#include "hhm/types.hpp"

namespace hhm {

/// A gap sandwiched as lower_bound <= gap <= upper_bound.
struct GapBoundReport {
    double gap = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    double tol_used = 0.0;
    /// Magnitude of the quantities the gap was formed from.
    double scale = 0.0;
    bool pass = false;

    double lower_slack() const noexcept { return gap - lower_bound; }
    double upper_slack() const noexcept { return upper_bound - gap; }
};

GapBoundReport make_gap_report(double gap, double lower, double upper, double scale, double tol);

/// The two reports of a pair of gap bounds (first: around R1, second: around R2).
struct GapBoundPair {
    GapBoundReport first;
    GapBoundReport second;
    bool pass() const noexcept { return first.pass && second.pass; }
};

inline constexpr double kBoundTol = 1e-9;

struct DerivativeBounds {
    std::optional<double> K;
    std::optional<CurvatureBounds> curvature;
};

/// K = sup|f'|, m = inf f'', M = sup f'' over [a,b].
///
/// Builtins get exact endpoint values (exp: K = e^b, m = e^a, M = e^b; -log: K = 1/a,
/// m = 1/b^2, M = 1/a^2). Other functions are sampled on n_grid uniform points using
/// deriv1/deriv2 or, when allowed, central differences; K and M are inflated and m
/// deflated by 1%. Throws MissingBoundError if nothing can be produced.
DerivativeBounds estimate_derivative_bounds(const ConvexFunction& f, double a, double b, int n_grid = 257,
                                            bool allow_finite_differences = true);

/// (f(a)+f(b))/2 - mean of f over [a,b], within [(m/3)((b-a)/2)^2, (M/3)((b-a)/2)^2].
GapBoundReport hh_trapezoid_bounds(const ConvexFunction& f, double a, double b, const QuadConfig& q = {},
                                   double tol = kBoundTol);

/// mean of f over [a,b] - f((a+b)/2), within [(m/6)((b-a)/2)^2, (M/6)((b-a)/2)^2].
GapBoundReport hh_midpoint_bounds(const ConvexFunction& f, double a, double b, const QuadConfig& q = {},
                                  double tol = kBoundTol);

/// C - R1 and R2 - C, each in [0, v(1-v) K (b-a)/2].
GapBoundPair thm32_gaps(const ConvexFunction& f, double a, double b, Weight w, const QuadConfig& q = {},
                        double tol = kBoundTol);

/// C - R1 in v(1-v)[m/6, M/6]((b-a)/2)^2 and R2 - C in v(1-v)[m/3, M/3]((b-a)/2)^2.
GapBoundPair thm33_gaps(const ConvexFunction& f, double a, double b, Weight w, const QuadConfig& q = {},
                        double tol = kBoundTol);

// Specializations to the weighted logarithmic (f = exp) and identric (f = -log) means.
// All require b >= a and throw OrientationError otherwise. The ratio-type checks compare
// logarithms, so their gaps and bounds are exponents.

/// L_v - (a♯_{v/2}b)∇_v(a♯_{(1+v)/2}b) and (a∇_v b)∇(a♯_v b) - L_v, each <= v(1-v)(b/2) log(b/a).
GapBoundPair cor31_check(PositivePair p, Weight w, double tol = kBoundTol);

/// log G1 - log I_v and log I_v - log G2, each <= v(1-v)(b-a)/(2a), with
/// G1 = (a∇_{v/2}b)♯_v(a∇_{(1+v)/2}b) and G2 = (a♯_v b)♯(a∇_v b).
GapBoundPair cor32_check(PositivePair p, Weight w, double tol = kBoundTol);

/// The log-mean gaps of cor31 within v(1-v)[a, b] log^2(b/a)/24 and /12.
GapBoundPair cor33_check(PositivePair p, Weight w, double tol = kBoundTol);

/// The identric exponent gaps of cor32 within v(1-v)(b-a)^2 [1/b^2, 1/a^2]/24 and /12.
GapBoundPair cor34_check(PositivePair p, Weight w, double tol = kBoundTol);

}  // namespace hhm
