#include "hhm/scalar_means.hpp"

#include <cmath>

namespace hhm {

namespace {

// log(b/a) without overflow in the ratio.
double log_ratio(double a, double b) {
    const double t = b / a;
    if (std::isfinite(t) && t > 0.0) return std::log(t);
    return std::log(b) - std::log(a);
}

// phi(1+u) = (1+u) log1p(u) / u - 1, the excess of the mean of log over [x, x(1+u)] above log x.
double log_average_excess(double u) {
    if (std::abs(u) < 1e-4) {
        return u * (0.5 + u * (-1.0 / 6.0 + u * (1.0 / 12.0 - u / 20.0)));
    }
    return (1.0 + u) * std::log1p(u) / u - 1.0;
}

// log(I_v(a,b)/a) for v in (0,1).
double identric_log_excess(double a, double b, double v) {
    if (b < a) {
        // I_v(a,b) = I_{1-v}(b,a); keeps d >= 0 so log1p never nears -1.
        return identric_log_excess(b, a, 1.0 - v) + std::log(b / a);
    }
    const double d = (b - a) / a;   // t - 1 with t = b/a
    const double vd = v * d;        // node c = 1 + vd
    const double upper = (1.0 - v) * d / (1.0 + vd);  // t/c - 1
    return (1.0 - v) * log_average_excess(vd) + v * (std::log1p(vd) + log_average_excess(upper));
}

}  // namespace

double wgt_arith(PositivePair p, Weight w) { return arith(p.a(), p.b(), w); }

double wgt_geom(PositivePair p, Weight w) {
    const double v = w.value();
    if (v == 0.0 || p.a() == p.b()) return p.a();
    if (v == 1.0) return p.b();
    return std::exp((1.0 - v) * std::log(p.a()) + v * std::log(p.b()));
}

double log_mean_repr_log(double h, Weight w) {
    const double v = w.value();
    if (v == 0.0) return 1.0;
    if (v == 1.0) return std::exp(h);
    if (std::abs(h) < kLogMeanSwitch) {
        return 1.0 + h * (v + h * v * (1.0 + 2.0 * v) / 6.0);
    }
    // expm1(h) - expm1(vh) = e^{vh} expm1((1-v)h); both terms share the sign of h.
    const double lower = std::expm1(v * h);
    const double upper = std::exp(v * h) * std::expm1((1.0 - v) * h);
    return ((1.0 - v) / v * lower + v / (1.0 - v) * upper) / h;
}

double log_mean_repr(double t, Weight w) {
    if (!(t > 0.0)) throw DomainError("representing function needs t > 0");
    return log_mean_repr_log(std::log(t), w);
}

double wgt_log_mean(PositivePair p, Weight w) {
    const double v = w.value();
    if (v == 0.0 || p.a() == p.b()) return p.a();
    if (v == 1.0) return p.b();
    return p.a() * log_mean_repr_log(log_ratio(p.a(), p.b()), w);
}


double log_wgt_identric(PositivePair p, Weight w) {
    const double v = w.value();
    if (v == 0.0 || p.a() == p.b()) return std::log(p.a());
    if (v == 1.0) return std::log(p.b());
    return std::log(p.a()) + identric_log_excess(p.a(), p.b(), v);
}

double wgt_identric(PositivePair p, Weight w) {
    const double v = w.value();
    if (v == 0.0 || p.a() == p.b()) return p.a();
    if (v == 1.0) return p.b();
    return p.a() * std::exp(identric_log_excess(p.a(), p.b(), v));
}

ChainReport mean_chain_log(PositivePair p, Weight w, double tol) {
    const double g = wgt_geom(p, w);
    const double split = arith(wgt_geom(p, w.half()), wgt_geom(p, w.upper_half()), w);
    const double l = wgt_log_mean(p, w);
    const double ar = wgt_arith(p, w);
    const double avg = 0.5 * (ar + g);
    return make_chain_report({"geom", "geom_split", "log_mean", "arith_geom_avg", "arith"},
                             {g, split, l, avg, ar}, tol);
}

ChainReport mean_chain_identric(PositivePair p, Weight w, double tol) {
    const double g = wgt_geom(p, w);
    const double ar = wgt_arith(p, w);
    const double mid = wgt_geom(PositivePair(g, ar), kHalf);
    const double id = wgt_identric(p, w);
    const double split = wgt_geom(PositivePair(wgt_arith(p, w.half()), wgt_arith(p, w.upper_half())), w);
    return make_chain_report({"geom", "geom_arith_mid", "identric", "arith_split_geom", "arith"},
                             {g, mid, id, split, ar}, tol);
}

}  // namespace hhm
