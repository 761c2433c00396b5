#include "hhm/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "hhm/errors.hpp"

namespace hhm {

namespace {

// 7-point Gauss-Legendre rule on [-1, 1]; node 0 plus the positive half.
constexpr std::array<double, 4> kNodes = {
    0.0,
    0.4058451513773971669066064,
    0.7415311855993944398638648,
    0.9491079123427585245261897,
};
constexpr std::array<double, 4> kWeights = {
    0.4179591836734693877551020,
    0.3818300505051189449503698,
    0.2797053914892766679014678,
    0.1294849661688696932706114,
};

struct LevelSum {
    double value;
    double abs_value;
};

LevelSum composite(const std::function<double(double)>& f, double lo, double hi, long panels) {
    const double width = (hi - lo) / static_cast<double>(panels);
    const double half = 0.5 * width;
    double sum = 0.0;
    double abs_sum = 0.0;
    for (long i = 0; i < panels; ++i) {
        // Panel centers from the left endpoint to keep the last panel flush with hi.
        const double center = lo + (static_cast<double>(i) + 0.5) * width;
        double panel = kWeights[0] * f(center);
        double abs_panel = std::abs(panel);
        for (std::size_t k = 1; k < kNodes.size(); ++k) {
            const double left = f(center - half * kNodes[k]);
            const double right = f(center + half * kNodes[k]);
            panel += kWeights[k] * (left + right);
            abs_panel += kWeights[k] * (std::abs(left) + std::abs(right));
        }
        sum += panel;
        abs_sum += abs_panel;
    }
    return {sum * half, abs_sum * std::abs(half)};
}

}  // namespace

void QuadConfig::validate() const {
    if (!(rel_tol >= 1e-14 && rel_tol <= 1e-2)) {
        throw DomainError("quadrature rel_tol must lie in [1e-14, 1e-2]");
    }
    if (max_levels < 1 || max_levels > 30) {
        throw DomainError("quadrature max_levels must lie in [1, 30]");
    }
}

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi, const QuadConfig& cfg) {
    cfg.validate();
    QuadResult out;
    if (lo == hi) return out;

    constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
    LevelSum prev = composite(f, lo, hi, 1);
    out.evaluations = 7;
    for (int level = 1; level <= cfg.max_levels; ++level) {
        const long panels = 1L << level;
        const LevelSum cur = composite(f, lo, hi, panels);
        out.evaluations += 7 * panels;
        out.value = cur.value;
        out.error = std::abs(cur.value - prev.value);
        out.levels = level;
        if (!std::isfinite(cur.value)) {
            throw QuadratureError("integrand produced a non-finite value", cur.value, out.error);
        }
        if (out.error <= cfg.rel_tol * std::abs(cur.value) || out.error <= kRoundoff * cur.abs_value) {
            return out;
        }
        prev = cur;
    }
    throw QuadratureError("quadrature did not reach rel_tol " + std::to_string(cfg.rel_tol) + " within " +
                              std::to_string(cfg.max_levels) + " levels",
                          out.value, out.error);
}

}  // namespace hhm
