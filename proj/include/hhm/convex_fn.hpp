#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace hhm {

/// Open interval (lo, hi); infinite ends allowed.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const noexcept { return x > lo && x < hi; }
    /// Closed segment between a and b (either order) lies inside the interval.
    bool contains(double a, double b) const noexcept { return contains(a) && contains(b); }
};

/// m = inf f'' and M = sup f'' over a segment.
struct CurvatureBounds {
    double m = 0.0;
    double M = 0.0;
};

enum class Builtin { exp, neg_log, square, quartic, xlogx };

/// A convex function with optional derivatives and derivative bounds over the
/// segment it is currently being applied to.
struct ConvexFunction {
    std::string id;
    std::function<double(double)> eval;
    std::function<double(double)> deriv1;  // empty when unknown
    std::function<double(double)> deriv2;  // empty when unknown
    Interval domain;
    /// K >= sup |f'| over the working segment.
    std::optional<double> deriv_bound;
    std::optional<CurvatureBounds> curvature;
    std::optional<Builtin> builtin;

    double operator()(double x) const { return eval(x); }
    bool has_deriv1() const noexcept { return static_cast<bool>(deriv1); }
    bool has_deriv2() const noexcept { return static_cast<bool>(deriv2); }
};

ConvexFunction make_builtin(Builtin which);

/// Accepts the CLI spellings exp, neg-log, square, quartic, xlogx.
std::optional<Builtin> parse_builtin(std::string_view name);
std::string_view builtin_name(Builtin which);

inline constexpr std::array<Builtin, 5> kAllBuiltins = {
    Builtin::exp, Builtin::neg_log, Builtin::square, Builtin::quartic, Builtin::xlogx,
};

struct SpotCheck {
    bool convex = true;
    bool deriv1_consistent = true;
    bool deriv2_consistent = true;
    /// Largest scaled midpoint-convexity violation f((x+y)/2) - (f(x)+f(y))/2 seen.
    double worst_violation = 0.0;
};

inline constexpr double kConvexityTol = 1e-9;

/// Samples a uniform grid on [lo, hi] (clipped into the domain) and checks midpoint
/// convexity on every pair and, where present, derivatives against central differences
/// to relative 1e-6.
SpotCheck spot_check(const ConvexFunction& f, double lo, double hi, int samples = 33);

/// User function checked on [lo, hi]; throws DomainError if the spot check fails.
ConvexFunction make_user_function(std::string id, std::function<double(double)> eval, Interval domain,
                                  double lo, double hi, std::function<double(double)> deriv1 = {},
                                  std::function<double(double)> deriv2 = {});

/// Throws DomainError if K < 0 or m > M.
void validate_bounds(const ConvexFunction& f);

}  // namespace hhm
