#pragma once

#include "hhm/chain_report.hpp"
#include "hhm/types.hpp"

namespace hhm {

/// (1-v)a + v b.
double wgt_arith(PositivePair p, Weight w);

/// a^{1-v} b^v, evaluated in the log domain.
double wgt_geom(PositivePair p, Weight w);

/// Weighted logarithmic mean L_v(a,b).
///
/// Evaluated as a * L_v(1, b/a) through the representing function below. L_v(a,a) = a
/// for every v; v = 0 and v = 1 return a and b.
double wgt_log_mean(PositivePair p, Weight w);

/// Weighted identric mean I_v(a,b), evaluated in the log domain.
///
/// log I_v is the (1-v, v) combination of the averages of log over [a, a∇_v b] and
/// [a∇_v b, b]; each average is log x + phi(y/x) with phi(r) = r log r/(r-1) - 1
/// computed through log1p, so no cancellation occurs as b -> a.
double wgt_identric(PositivePair p, Weight w);

/// log I_v(a,b) without the final exponentiation.
double log_wgt_identric(PositivePair p, Weight w);

/// Representing function t -> L_v(1, t) of the weighted logarithmic mean.
double log_mean_repr(double t, Weight w);

/// L_v(1, e^h); |h| below kLogMeanSwitch uses the second-order expansion
/// 1 + v h + v(1+2v) h^2 / 6.
double log_mean_repr_log(double h, Weight w);

inline constexpr double kLogMeanSwitch = 1e-8;

/// a♯_v b <= (a♯_{v/2}b)∇_v(a♯_{(1+v)/2}b) <= L_v <= (a∇_v b)∇(a♯_v b) <= a∇_v b.
ChainReport mean_chain_log(PositivePair p, Weight w, double tol = kChainTol);

/// a♯_v b <= (a♯_v b)♯(a∇_v b) <= I_v <= (a∇_{v/2}b)♯_v(a∇_{(1+v)/2}b) <= a∇_v b.
ChainReport mean_chain_identric(PositivePair p, Weight w, double tol = kChainTol);

}  // namespace hhm
