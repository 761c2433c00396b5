#pragma once

#include <functional>

namespace hhm {

/// Settings of the adaptive composite Gauss-Legendre rule.
struct QuadConfig {
    double rel_tol = 1e-10;
    int max_levels = 20;

    /// Throws DomainError unless rel_tol in [1e-14, 1e-2] and max_levels in [1, 30].
    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    /// |I_k - I_{k-1}| at the accepted level.
    double error = 0.0;
    int levels = 0;
    long evaluations = 0;
};

/// Integral of f over [lo, hi] with 7-point Gauss-Legendre panels.
///
/// Level k splits the interval into 2^k equal panels. Refinement stops once two
/// consecutive levels agree to rel_tol (or to a roundoff floor relative to the
/// integral of |f|); QuadratureError carries the best estimate if max_levels is hit
/// first. lo > hi is allowed and gives the negated integral.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi, const QuadConfig& cfg = {});

/// Integral of f over [0,1].
inline QuadResult integrate_unit(const std::function<double(double)>& f, const QuadConfig& cfg = {}) {
    return integrate(f, 0.0, 1.0, cfg);
}

}  // namespace hhm
