#pragma once

// Test-only reference evaluations, independent of the library's evaluation routes.

#include <cmath>
#include <functional>
#include <random>

namespace oracle {

/// The logarithmic-mean definition evaluated literally in long double.
inline long double log_mean(long double a, long double b, long double v) {
    const long double g = std::pow(a, 1 - v) * std::pow(b, v);
    return ((1 - v) / v * (a - g) + v / (1 - v) * (g - b)) / (std::log(a) - std::log(b));
}

/// The identric-mean closed form evaluated literally in long double.
inline long double identric(long double a, long double b, long double v) {
    const long double c = (1 - v) * a + v * b;
    const long double e1 = (1 - 2 * v) * c / (v * (1 - v) * (b - a));
    const long double log_ratio = (v * b / (1 - v) * std::log(b) - (1 - v) * a / v * std::log(a)) / (b - a);
    return std::exp(-1.0L + e1 * std::log(c) + log_ratio);
}

/// Midpoint rule with n cells for the two unit-interval integrals defining C_{f,v}.
inline double naive_c_fv(const std::function<double(double)>& f, double a, double b, double v, long n = 1000000) {
    long double lower = 0;
    long double upper = 0;
    const double node = (1 - v) * a + v * b;
    for (long i = 0; i < n; ++i) {
        const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        lower += f((1 - v * t) * a + v * t * b);
        upper += f((1 - v) * (b - a) * t + node);
    }
    lower /= n;
    upper /= n;
    return static_cast<double>((1 - v) * lower + v * upper);
}

/// Seeded generator used by the hand-rolled property tests.
class Gen {
public:
    explicit Gen(unsigned long long seed) : engine_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

private:
    std::mt19937_64 engine_;
};

inline double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

}  // namespace oracle
