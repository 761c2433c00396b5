#include "hhm/hh_refinements.hpp"

#include <algorithm>
#include <cmath>

namespace hhm {

namespace {

void require_domain(const ConvexFunction& f, double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !f.domain.contains(a, b)) {
        throw DomainError("[" + std::to_string(a) + ", " + std::to_string(b) + "] is not inside the domain of " + f.id);
    }
}

// Δ_{f,1/2} between the two split nodes a∇_{v/2}b and a∇_{(1+v)/2}b.
double split_gap(const ConvexFunction& f, double a, double b, Weight w) {
    return delta(f, arith(a, b, 0.5 * w.value()), arith(a, b, 0.5 * (1.0 + w.value())), kHalf);
}

double scale_of(const ConvexFunction& f, double a, double b, Weight w) {
    return std::max({std::abs(f(a)), std::abs(f(b)), std::abs(f(arith(a, b, w)))});
}

}  // namespace

double c_fv(const ConvexFunction& f, double a, double b, Weight w, const QuadConfig& q) {
    require_domain(f, a, b);
    if (a == b) return f(a);
    const double v = w.value();
    const double node = arith(a, b, w);
    const double lower = integrate_unit([&](double t) { return f(arith(a, b, v * t)); }, q).value;
    if (v == 0.0) return lower;
    const double span = (1.0 - v) * (b - a);
    const double upper = integrate_unit([&](double t) { return f(span * t + node); }, q).value;
    return arith(lower, upper, w);
}

double r1(const ConvexFunction& f, double a, double b, Weight w) {
    require_domain(f, a, b);
    return arith(f(arith(a, b, 0.5 * w.value())), f(arith(a, b, 0.5 * (1.0 + w.value()))), w);
}

double r2(const ConvexFunction& f, double a, double b, Weight w) {
    require_domain(f, a, b);
    return 0.5 * (arith(f(a), f(b), w) + f(arith(a, b, w)));
}

double delta(const ConvexFunction& f, double a, double b, Weight w) {
    require_domain(f, a, b);
    if (w.value() == 0.0 || w.value() == 1.0) return 0.0;
    return arith(f(a), f(b), w) - f(arith(a, b, w));
}

double q1(const ConvexFunction& f, double a, double b, Weight w) {
    require_domain(f, a, b);
    return f(arith(a, b, w)) + 2.0 * w.min() * split_gap(f, a, b, w);
}

double q2(const ConvexFunction& f, double a, double b, Weight w) {
    require_domain(f, a, b);
    return arith(f(a), f(b), w) - w.min() * delta(f, a, b, kHalf);
}

double p1(const ConvexFunction& f, double a, double b, Weight w) {
    require_domain(f, a, b);
    return f(arith(a, b, w)) + 2.0 * w.max() * split_gap(f, a, b, w);
}

double p2(const ConvexFunction& f, double a, double b, Weight w) {
    require_domain(f, a, b);
    return arith(f(a), f(b), w) - w.max() * delta(f, a, b, kHalf);
}

ChainReport chain_eval(const ConvexFunction& f, double a, double b, Weight w, const QuadConfig& q, double tol) {
    if (!(a < b)) throw OrientationError("chain_eval needs a < b");
    require_domain(f, a, b);
    ChainReport r = make_chain_report(
        {"f_at_mean", "Q1", "R1", "C", "R2", "Q2", "mean_of_f"},
        {f(arith(a, b, w)), q1(f, a, b, w), r1(f, a, b, w), c_fv(f, a, b, w, q), r2(f, a, b, w), q2(f, a, b, w),
         arith(f(a), f(b), w)},
        tol);
    if (!f.builtin) {
        r.certified = spot_check(f, a, b).convex;
        r.pass = r.pass && r.certified;
    }
    return r;
}

MitroiResult mitroi_check(const ConvexFunction& f, double a, double b, Weight w, double tol) {
    const double half_gap = delta(f, a, b, kHalf);
    MitroiResult r;
    r.lhs = 2.0 * w.min() * half_gap;
    r.mid = delta(f, a, b, w);
    r.rhs = 2.0 * w.max() * half_gap;
    const double slack = tol * scale_of(f, a, b, w);
    r.pass = r.mid >= r.lhs - slack && r.rhs >= r.mid - slack;
    return r;
}

RefinedMitroiResult refined_mitroi_check(const ConvexFunction& f, double a, double b, Weight w, double tol) {
    RefinedMitroiResult r;
    r.lhs = delta(f, a, b, w);
    r.rhs = w.min() * (delta(f, a, b, kHalf) + 2.0 * split_gap(f, a, b, w));
    const double slack = tol * scale_of(f, a, b, w);
    r.pass = r.lhs >= r.rhs - slack && r.rhs >= -slack;
    return r;
}

}  // namespace hhm
