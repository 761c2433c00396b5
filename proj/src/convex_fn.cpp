#include "hhm/convex_fn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hhm/errors.hpp"

namespace hhm {

ConvexFunction make_builtin(Builtin which) {
    ConvexFunction f;
    f.builtin = which;
    f.id = std::string(builtin_name(which));
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (which) {
        case Builtin::exp:
            f.eval = [](double x) { return std::exp(x); };
            f.deriv1 = f.eval;
            f.deriv2 = f.eval;
            break;
        case Builtin::neg_log:
            f.eval = [](double x) { return -std::log(x); };
            f.deriv1 = [](double x) { return -1.0 / x; };
            f.deriv2 = [](double x) { return 1.0 / (x * x); };
            f.domain = {0.0, inf};
            break;
        case Builtin::square:
            f.eval = [](double x) { return x * x; };
            f.deriv1 = [](double x) { return 2.0 * x; };
            f.deriv2 = [](double) { return 2.0; };
            break;
        case Builtin::quartic:
            f.eval = [](double x) { return (x * x) * (x * x); };
            f.deriv1 = [](double x) { return 4.0 * x * x * x; };
            f.deriv2 = [](double x) { return 12.0 * x * x; };
            break;
        case Builtin::xlogx:
            f.eval = [](double x) { return x * std::log(x); };
            f.deriv1 = [](double x) { return std::log(x) + 1.0; };
            f.deriv2 = [](double x) { return 1.0 / x; };
            f.domain = {0.0, inf};
            break;
    }
    return f;
}

std::optional<Builtin> parse_builtin(std::string_view name) {
    for (Builtin b : kAllBuiltins) {
        if (builtin_name(b) == name) return b;
    }
    return std::nullopt;
}

std::string_view builtin_name(Builtin which) {
    switch (which) {
        case Builtin::exp: return "exp";
        case Builtin::neg_log: return "neg-log";
        case Builtin::square: return "square";
        case Builtin::quartic: return "quartic";
        case Builtin::xlogx: return "xlogx";
    }
    return "?";
}

SpotCheck spot_check(const ConvexFunction& f, double lo, double hi, int samples) {
    if (lo > hi) std::swap(lo, hi);
    // Pull the ends strictly inside an open domain.
    if (!(lo > f.domain.lo)) lo = f.domain.lo + 1e-6 * std::max(1.0, std::abs(f.domain.lo));
    if (!(hi < f.domain.hi)) hi = f.domain.hi - 1e-6 * std::max(1.0, std::abs(f.domain.hi));
    if (!(lo <= hi)) throw DomainError("spot-check segment lies outside the domain of " + f.id);
    samples = std::max(samples, 3);

    std::vector<double> xs(samples);
    std::vector<double> fx(samples);
    for (int i = 0; i < samples; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        fx[i] = f(xs[i]);
    }

    SpotCheck out;
    for (int i = 0; i < samples; ++i) {
        for (int j = i + 1; j < samples; ++j) {
            const double mid = f(0.5 * (xs[i] + xs[j]));
            const double chord = 0.5 * (fx[i] + fx[j]);
            const double scale = std::max({1.0, std::abs(fx[i]), std::abs(fx[j])});
            const double violation = (mid - chord) / scale;
            out.worst_violation = std::max(out.worst_violation, violation);
            if (!(violation < kConvexityTol)) out.convex = false;
        }
    }

    auto fd_matches = [&](const std::function<double(double)>& g, const std::function<double(double)>& d) {
        for (int i = 1; i + 1 < samples; ++i) {
            const double x = xs[i];
            const double h = 1e-5 * std::max(1.0, std::abs(x));
            if (!f.domain.contains(x - h, x + h)) continue;
            const double fd = (g(x + h) - g(x - h)) / (2.0 * h);
            const double exact = d(x);
            if (!(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)))) return false;
        }
        return true;
    };
    if (f.has_deriv1()) out.deriv1_consistent = fd_matches(f.eval, f.deriv1);
    if (f.has_deriv1() && f.has_deriv2()) out.deriv2_consistent = fd_matches(f.deriv1, f.deriv2);
    return out;
}

ConvexFunction make_user_function(std::string id, std::function<double(double)> eval, Interval domain,
                                  double lo, double hi, std::function<double(double)> deriv1,
                                  std::function<double(double)> deriv2) {
    ConvexFunction f;
    f.id = std::move(id);
    f.eval = std::move(eval);
    f.deriv1 = std::move(deriv1);
    f.deriv2 = std::move(deriv2);
    f.domain = domain;
    const SpotCheck check = spot_check(f, lo, hi);
    if (!check.convex) {
        throw DomainError(f.id + " failed the midpoint-convexity spot check (violation " +
                          std::to_string(check.worst_violation) + ")");
    }
    if (!check.deriv1_consistent) throw DomainError(f.id + ": first derivative disagrees with finite differences");
    if (!check.deriv2_consistent) throw DomainError(f.id + ": second derivative disagrees with finite differences");
    return f;
}

void validate_bounds(const ConvexFunction& f) {
    if (f.deriv_bound && !(*f.deriv_bound >= 0.0)) throw DomainError("derivative bound K must be nonnegative");
    if (f.curvature && !(f.curvature->m <= f.curvature->M)) throw DomainError("curvature bounds need m <= M");
}

}  // namespace hhm
