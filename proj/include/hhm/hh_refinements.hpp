#pragma once

#include "hhm/chain_report.hpp"
#include "hhm/convex_fn.hpp"
#include "hhm/quadrature.hpp"
#include "hhm/types.hpp"

namespace hhm {

/// Weighted two-piece integral average
///   C_{f,v}(a,b) = (int_0^1 f(a∇_{vt}b) dt) ∇_v (int_0^1 f((1-v)(b-a)t + a∇_v b) dt),
/// both unit-interval integrals done by adaptive Gauss-Legendre. Either orientation of
/// (a,b) is accepted; a == b gives f(a).
double c_fv(const ConvexFunction& f, double a, double b, Weight w, const QuadConfig& q = {});

/// f(a∇_{v/2}b) ∇_v f(a∇_{(1+v)/2}b).
double r1(const ConvexFunction& f, double a, double b, Weight w);

/// (f(a)∇_v f(b)) ∇ f(a∇_v b).
double r2(const ConvexFunction& f, double a, double b, Weight w);

/// Convexity gap f(a)∇_v f(b) - f(a∇_v b).
double delta(const ConvexFunction& f, double a, double b, Weight w);

/// f(a∇_v b) + 2 v_min Δ_{f,1/2}(a∇_{v/2}b, a∇_{(1+v)/2}b).
double q1(const ConvexFunction& f, double a, double b, Weight w);
/// f(a)∇_v f(b) - v_min Δ_{f,1/2}(a,b).
double q2(const ConvexFunction& f, double a, double b, Weight w);

/// As q1/q2 with v_max in place of v_min. No order holds between p1 and p2.
double p1(const ConvexFunction& f, double a, double b, Weight w);
double p2(const ConvexFunction& f, double a, double b, Weight w);

/// Seven-term chain f(a∇_v b) <= Q1 <= R1 <= C <= R2 <= Q2 <= f(a)∇_v f(b).
///
/// Requires a < b. A function failing the convexity spot check on [a,b] still gets its
/// terms evaluated, but the report comes back with certified = false and pass = false.
ChainReport chain_eval(const ConvexFunction& f, double a, double b, Weight w, const QuadConfig& q = {},
                       double tol = kChainTol);

struct MitroiResult {
    double lhs = 0.0;  // 2 v_min Δ_{f,1/2}(a,b)
    double mid = 0.0;  // Δ_{f,v}(a,b)
    double rhs = 0.0;  // 2 v_max Δ_{f,1/2}(a,b)
    bool pass = false;
};

/// 2 v_min Δ_{f,1/2} <= Δ_{f,v} <= 2 v_max Δ_{f,1/2}, to tol relative to max(|f(a)|, |f(b)|, |f(a∇_v b)|).
MitroiResult mitroi_check(const ConvexFunction& f, double a, double b, Weight w, double tol = kChainTol);

struct RefinedMitroiResult {
    double lhs = 0.0;  // Δ_{f,v}(a,b)
    double rhs = 0.0;  // v_min (Δ_{f,1/2}(a,b) + 2 Δ_{f,1/2}(a∇_{v/2}b, a∇_{(1+v)/2}b))
    bool pass = false;
};

/// Δ_{f,v}(a,b) >= rhs >= 0.
RefinedMitroiResult refined_mitroi_check(const ConvexFunction& f, double a, double b, Weight w,
                                         double tol = kChainTol);

}  // namespace hhm
