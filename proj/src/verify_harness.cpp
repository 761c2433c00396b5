#include "hhm/verify_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>
#include <tuple>

#include "hhm/hh_refinements.hpp"
#include "hhm/operator_means.hpp"
#include "hhm/scalar_means.hpp"
#include "hhm/smooth_bounds.hpp"

namespace hhm {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) : engine_(splitmix64(seed ^ trial)) {}

double TrialRng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double TrialRng::uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

double TrialRng::log_uniform(double lo, double hi) {
    if (lo == hi) return lo;
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

double TrialRng::normal() {
    const double u1 = 1.0 - unit();  // (0, 1]
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void SuiteConfig::validate() const {
    auto positive = [](Range r) { return r.lo > 0.0 && r.lo <= r.hi && std::isfinite(r.hi); };
    if (trials < 1) throw DomainError("trials must be at least 1");
    if (!positive(a_range) || !positive(b_range)) throw DomainError("a and b ranges must be nonempty and positive");
    if (!(v_range.lo >= 0.0 && v_range.lo <= v_range.hi && v_range.hi <= 1.0)) {
        throw DomainError("v range must be a nonempty subinterval of [0,1]");
    }
    if (!(tol > 0.0)) throw DomainError("tol must be positive");
    if (!(cond_max >= 1.0)) throw DomainError("cond_max must be at least 1");
    for (int d : dims) {
        if (d < 1) throw DomainError("matrix dimensions must be positive");
    }
    quad.validate();
}

SuiteConfig SuiteConfig::scalar_defaults() { return SuiteConfig{}; }

SuiteConfig SuiteConfig::bounds_defaults() {
    SuiteConfig c;
    c.trials = 2000;
    return c;
}

SuiteConfig SuiteConfig::operator_defaults() {
    SuiteConfig c;
    c.seed = 7;
    c.trials = 500;
    c.tol = 1e-10;
    return c;
}

void SuiteReport::note_slack(const std::string& name, double relative_slack, bool passed) {
    auto [it, inserted] = min_slacks.emplace(name, relative_slack);
    if (!inserted) it->second = std::min(it->second, relative_slack);
    if (relative_slack < 0.0 && passed) ++tight[name];
}

void SuiteReport::merge(const SuiteReport& other) {
    trials += other.trials;
    for (const auto& [k, v] : other.min_slacks) {
        auto [it, inserted] = min_slacks.emplace(k, v);
        if (!inserted) it->second = std::min(it->second, v);
    }
    for (const auto& [k, n] : other.tight) tight[k] += n;
    for (const auto& [k, v] : other.values) values[k] = v;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    std::stable_sort(failures.begin(), failures.end(), [](const FailureRecord& x, const FailureRecord& y) {
        return std::tie(x.trial, x.check) < std::tie(y.trial, y.check);
    });
}

namespace {

using Inputs = std::map<std::string, double>;

double relative(double slack, double scale) { return scale > 0.0 ? slack / scale : slack; }

void record_chain(SuiteReport& out, std::int64_t trial, const std::string& check, const Inputs& inputs,
                  const ChainReport& r) {
    for (std::size_t i = 0; i < r.slacks.size(); ++i) {
        const bool ok = r.slacks[i] >= -r.tol_used * r.scale;
        out.note_slack(check + ":" + r.labels[i] + "<=" + r.labels[i + 1], relative(r.slacks[i], r.scale), ok);
    }
    if (!r.pass) {
        out.failures.push_back({trial, check, inputs, r.slacks, r.certified ? "" : "convexity spot check failed"});
    }
}

void record_gap(SuiteReport& out, std::int64_t trial, const std::string& check, const Inputs& inputs,
                const GapBoundReport& r) {
    const double margin = r.tol_used * r.scale;
    out.note_slack(check + ":lower", relative(r.lower_slack(), r.scale), r.lower_slack() >= -margin);
    out.note_slack(check + ":upper", relative(r.upper_slack(), r.scale), r.upper_slack() >= -margin);
    if (!r.pass) out.failures.push_back({trial, check, inputs, {r.lower_slack(), r.upper_slack()}, ""});
}

void record_error(SuiteReport& out, std::int64_t trial, const std::string& check, const Inputs& inputs,
                  const std::exception& e) {
    out.failures.push_back({trial, check, inputs, {}, e.what()});
}

// Runs body(trial, report) over [0, total), split into contiguous chunks per worker.
SuiteReport run_trials(const SuiteConfig& cfg, std::size_t total,
                       const std::function<void(std::size_t, SuiteReport&)>& body) {
    const std::size_t workers = std::clamp<std::size_t>(cfg.workers, 1, std::max<std::size_t>(total, 1));
    std::vector<SuiteReport> parts(workers);
    auto run_chunk = [&](std::size_t k) {
        const std::size_t lo = total * k / workers;
        const std::size_t hi = total * (k + 1) / workers;
        for (std::size_t i = lo; i < hi; ++i) {
            body(i, parts[k]);
            ++parts[k].trials;
        }
    };
    if (workers == 1) {
        run_chunk(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(run_chunk, k);
    }
    SuiteReport merged;
    for (const auto& p : parts) merged.merge(p);
    return merged;
}

template <class Fn>
SuiteReport timed(const std::string& name, std::uint64_t seed, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport r = fn();
    r.suite = name;
    r.seed = seed;
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

// Draws (a, b, v); redraws b a bounded number of times while |b - a| < min_gap.
struct Draw {
    double a;
    double b;
    double v;
    bool separated;
};

Draw draw_scalar(const SuiteConfig& cfg, TrialRng& rng) {
    Draw d{};
    d.a = rng.log_uniform(cfg.a_range.lo, cfg.a_range.hi);
    d.b = rng.log_uniform(cfg.b_range.lo, cfg.b_range.hi);
    d.v = rng.uniform(cfg.v_range.lo, cfg.v_range.hi);
    for (int k = 0; k < 16 && std::abs(d.b - d.a) < cfg.min_gap; ++k) {
        d.b = rng.log_uniform(cfg.b_range.lo, cfg.b_range.hi);
    }
    d.separated = std::abs(d.b - d.a) >= cfg.min_gap;
    return d;
}

Matrix random_spd(int dim, double cond_max, TrialRng& rng) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) g(i, j) = rng.normal();
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    }
    Eigen::VectorXd lambda(dim);
    for (int i = 0; i < dim; ++i) lambda[i] = rng.log_uniform(1.0, cond_max);
    return symmetrize(q * lambda.asDiagonal() * q.transpose());
}

}  // namespace

SuiteReport run_scalar_suite(const SuiteConfig& cfg) {
    cfg.validate();
    std::vector<ConvexFunction> fns;
    for (Builtin b : cfg.functions) fns.push_back(make_builtin(b));

    return timed("scalar", cfg.seed, [&] {
        return run_trials(cfg, cfg.trials, [&](std::size_t i, SuiteReport& out) {
            TrialRng rng(cfg.seed, i);
            const Draw d = draw_scalar(cfg, rng);
            const auto trial = static_cast<std::int64_t>(i);
            const Inputs in{{"a", d.a}, {"b", d.b}, {"v", d.v}};
            const Weight w(d.v);
            const PositivePair p(d.a, d.b);
            record_chain(out, trial, "mean_chain_log", in, mean_chain_log(p, w, cfg.tol));
            record_chain(out, trial, "mean_chain_identric", in, mean_chain_identric(p, w, cfg.tol));

            const double lo = std::min(d.a, d.b);
            const double hi = std::max(d.a, d.b);
            for (const ConvexFunction& f : fns) {
                const Inputs fin{{"a", lo}, {"b", hi}, {"v", d.v}};
                if (d.separated) {
                    try {
                        record_chain(out, trial, "chain_eval[" + f.id + "]", fin,
                                     chain_eval(f, lo, hi, w, cfg.quad, cfg.tol));
                    } catch (const Error& e) {
                        record_error(out, trial, "chain_eval[" + f.id + "]", fin, e);
                    }
                }
                const double scale = std::max({std::abs(f(lo)), std::abs(f(hi)), std::abs(f(arith(lo, hi, w)))});
                const double margin = cfg.tol * scale;
                const MitroiResult m = mitroi_check(f, lo, hi, w, cfg.tol);
                const std::string mname = "mitroi[" + f.id + "]";
                out.note_slack(mname + ":lhs<=mid", relative(m.mid - m.lhs, scale), m.mid - m.lhs >= -margin);
                out.note_slack(mname + ":mid<=rhs", relative(m.rhs - m.mid, scale), m.rhs - m.mid >= -margin);
                if (!m.pass) out.failures.push_back({trial, mname, fin, {m.mid - m.lhs, m.rhs - m.mid}, ""});

                const RefinedMitroiResult rm = refined_mitroi_check(f, lo, hi, w, cfg.tol);
                const std::string rname = "refined_mitroi[" + f.id + "]";
                out.note_slack(rname + ":rhs<=delta", relative(rm.lhs - rm.rhs, scale), rm.lhs - rm.rhs >= -margin);
                out.note_slack(rname + ":0<=rhs", relative(rm.rhs, scale), rm.rhs >= -margin);
                if (!rm.pass) out.failures.push_back({trial, rname, fin, {rm.lhs - rm.rhs, rm.rhs}, ""});
            }
        });
    });
}

SuiteReport run_bounds_suite(const SuiteConfig& cfg) {
    cfg.validate();
    std::vector<ConvexFunction> fns;
    for (Builtin b : cfg.functions) fns.push_back(make_builtin(b));

    return timed("bounds", cfg.seed, [&] {
        return run_trials(cfg, cfg.trials, [&](std::size_t i, SuiteReport& out) {
            TrialRng rng(cfg.seed, i);
            const Draw d = draw_scalar(cfg, rng);
            const auto trial = static_cast<std::int64_t>(i);
            const double a = std::min(d.a, d.b);
            const double b = std::max(d.a, d.b);
            const Inputs in{{"a", a}, {"b", b}, {"v", d.v}};
            const Weight w(d.v);

            if (d.separated) {
                for (const ConvexFunction& base : fns) {
                    ConvexFunction f = base;
                    const DerivativeBounds exact = estimate_derivative_bounds(f, a, b);
                    f.deriv_bound = exact.K;
                    f.curvature = exact.curvature;
                    try {
                        const GapBoundPair t32 = thm32_gaps(f, a, b, w, cfg.quad, cfg.tol);
                        record_gap(out, trial, "thm32[" + f.id + "]:C-R1", in, t32.first);
                        record_gap(out, trial, "thm32[" + f.id + "]:R2-C", in, t32.second);
                        const GapBoundPair t33 = thm33_gaps(f, a, b, w, cfg.quad, cfg.tol);
                        record_gap(out, trial, "thm33[" + f.id + "]:C-R1", in, t33.first);
                        record_gap(out, trial, "thm33[" + f.id + "]:R2-C", in, t33.second);
                        if (t33.first.lower_bound < 0.0 || t33.second.lower_bound < 0.0) {
                            out.failures.push_back({trial, "thm33[" + f.id + "]:lower>=0", in,
                                                    {t33.first.lower_bound, t33.second.lower_bound}, ""});
                        }
                    } catch (const Error& e) {
                        record_error(out, trial, "thm3x[" + f.id + "]", in, e);
                    }
                }
            }

            const PositivePair p(a, b);
            const GapBoundPair c31 = cor31_check(p, w, cfg.tol);
            record_gap(out, trial, "cor31:split", in, c31.first);
            record_gap(out, trial, "cor31:avg", in, c31.second);
            const GapBoundPair c32 = cor32_check(p, w, cfg.tol);
            record_gap(out, trial, "cor32:split", in, c32.first);
            record_gap(out, trial, "cor32:mid", in, c32.second);
            const GapBoundPair c33 = cor33_check(p, w, cfg.tol);
            record_gap(out, trial, "cor33:split", in, c33.first);
            record_gap(out, trial, "cor33:avg", in, c33.second);
            if (b > a && (!(c33.first.lower_bound > 0.0) || !(c33.second.lower_bound > 0.0))) {
                out.failures.push_back({trial, "cor33:lower>0", in, {c33.first.lower_bound, c33.second.lower_bound},
                                        "lower bound not strictly positive"});
            }
            const GapBoundPair c34 = cor34_check(p, w, cfg.tol);
            record_gap(out, trial, "cor34:split", in, c34.first);
            record_gap(out, trial, "cor34:mid", in, c34.second);
        });
    });
}

SuiteReport run_operator_suite(const SuiteConfig& cfg) {
    cfg.validate();
    if (cfg.dims.empty()) throw DomainError("operator suite needs at least one dimension");

    return timed("operator", cfg.seed, [&] {
        SuiteReport report = run_trials(cfg, cfg.trials * cfg.dims.size(), [&](std::size_t i, SuiteReport& out) {
            TrialRng rng(cfg.seed, i);
            const int dim = cfg.dims[i / cfg.trials];
            const double v = rng.uniform(cfg.v_range.lo, cfg.v_range.hi);
            const auto trial = static_cast<std::int64_t>(i);
            Inputs in{{"dim", static_cast<double>(dim)}, {"v", v}};
            try {
                const SpdMatrix a = SpdMatrix::from(random_spd(dim, cfg.cond_max, rng));
                const SpdMatrix b = SpdMatrix::from(random_spd(dim, cfg.cond_max, rng));
                const OperatorChainReport r = op_chain(a, b, Weight(v), cfg.tol);
                std::vector<double> slacks;
                for (std::size_t k = 0; k < r.verdicts.size(); ++k) {
                    const LoewnerVerdict& lv = r.verdicts[k];
                    const double norms = cfg.tol > 0.0 ? lv.tol_used / cfg.tol : 0.0;
                    out.note_slack("op_chain[" + std::to_string(dim) + "]:" + r.labels[k] + "<=" + r.labels[k + 1],
                                   relative(lv.min_eig_of_difference, norms), lv.holds);
                    slacks.push_back(lv.min_eig_of_difference);
                }
                if (!r.pass) out.failures.push_back({trial, "op_chain[" + std::to_string(dim) + "]", in, slacks, ""});
            } catch (const Error& e) {
                record_error(out, trial, "op_chain[" + std::to_string(dim) + "]", in, e);
            }
        });

        // Deterministic grid: no RNG, so it is run once and merged as trial -1.
        SuiteReport grid;
        const std::size_t n = std::max<std::size_t>(cfg.grid_points, 2);
        for (std::size_t k = 0; k < n; ++k) {
            const double t = std::pow(10.0, -4.0 + 8.0 * static_cast<double>(k) / static_cast<double>(n - 1));
            for (int j = 1; j <= 99; ++j) {
                const double v = 0.01 * j;
                const ChainReport r = representing_chain(t, Weight(v), cfg.tol);
                record_chain(grid, -1, "representing_chain", {{"t", t}, {"v", v}}, r);
            }
            const HelperIneqResult h = helper_ineq_check(t);
            grid.note_slack("helper_ineq", relative(h.lhs - h.rhs, std::max(1.0, h.rhs)), h.pass);
            if (!h.pass) grid.failures.push_back({-1, "helper_ineq", {{"x", t}}, {h.lhs - h.rhs}, ""});
        }
        report.merge(grid);
        return report;
    });
}

SuiteReport reproduce_paper_numbers() {
    return timed("paper-numbers", 0, [] {
        SuiteReport out;
        out.trials = 2;
        const ConvexFunction f = make_builtin(Builtin::exp);
        const Weight w(0.25);
        const double d41 = p1(f, 4.0, 1.0, w) - p2(f, 4.0, 1.0, w);
        const double d81 = p1(f, 8.0, 1.0, w) - p2(f, 8.0, 1.0, w);
        out.values["p1-p2@(4,1)"] = d41;
        out.values["p1-p2@(8,1)"] = d81;

        auto check = [&](const std::string& name, double got, double want, double tol, double a) {
            const double slack = tol - std::abs(got - want);
            out.note_slack(name, slack / tol, slack >= 0.0);
            if (slack < 0.0) {
                out.failures.push_back({-1, name, {{"a", a}, {"b", 1.0}, {"v", 0.25}}, {got - want},
                                        "expected " + std::to_string(want)});
            }
        };
        check("p1-p2@(4,1)", d41, kRefDiffAt41, kRefDiffAt41Tol, 4.0);
        check("p1-p2@(8,1)", d81, kRefDiffAt81, kRefDiffAt81Tol, 8.0);
        if (!(d41 > 0.0 && d81 < 0.0)) {
            out.failures.push_back({-1, "sign-flip", {{"v", 0.25}}, {d41, d81}, "p1 - p2 does not change sign"});
        }
        return out;
    });
}

}  // namespace hhm
