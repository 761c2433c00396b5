#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hhm/errors.hpp"

namespace hhm {

/// Weight v in [0,1] of the two-point weighted means.
class Weight {
public:
    explicit Weight(double v) : v_(v) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw DomainError("weight must lie in [0,1], got " + std::to_string(v));
        }
    }

    double value() const noexcept { return v_; }
    double complement() const noexcept { return 1.0 - v_; }
    double min() const noexcept { return std::min(1.0 - v_, v_); }
    double max() const noexcept { return std::max(1.0 - v_, v_); }
    bool interior() const noexcept { return v_ > 0.0 && v_ < 1.0; }

    /// The weight 1-v used by the symmetry (a,b,v) <-> (b,a,1-v).
    Weight flipped() const { return Weight(1.0 - v_); }

    /// v/2 and (1+v)/2, the nodes of the split refinements.
    Weight half() const { return Weight(0.5 * v_); }
    Weight upper_half() const { return Weight(0.5 * (1.0 + v_)); }

private:
    double v_;
};

inline const Weight kHalf{0.5};

/// Arguments (a, b) of a two-point mean, both strictly positive and finite.
class PositivePair {
public:
    PositivePair(double a, double b) : a_(a), b_(b) {
        if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
            throw DomainError("mean arguments must be positive and finite");
        }
    }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    PositivePair swapped() const { return PositivePair(b_, a_); }
    bool oriented() const noexcept { return a_ <= b_; }

private:
    double a_;
    double b_;
};

/// (1-v)x + v y for arbitrary reals.
inline double arith(double x, double y, double v) noexcept {
    if (v == 0.0) return x;
    if (v == 1.0) return y;
    return (1.0 - v) * x + v * y;
}

inline double arith(double x, double y, Weight w) noexcept { return arith(x, y, w.value()); }

}  // namespace hhm
