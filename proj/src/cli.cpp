#include "hhm/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "hhm/hh_refinements.hpp"
#include "hhm/json_io.hpp"
#include "hhm/operator_means.hpp"
#include "hhm/scalar_means.hpp"
#include "hhm/smooth_bounds.hpp"
#include "hhm/verify_harness.hpp"

namespace hhm {

namespace {

/// Flag values shared across subcommands.
struct Flags {
    double a = 1.0;
    double b = 2.0;
    double v = 0.5;
    std::string f = "exp";
    std::optional<double> tol;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t trials = 0;
    unsigned workers = 1;
    bool timing = false;
    std::string format = "json";
    std::string file;
    std::string mean = "log";
    std::string chain = "log";
    std::optional<double> K;
    std::optional<double> m;
    std::optional<double> M;
    std::vector<std::string> grid;
};

/// Raised for flag values that parse but are invalid; exits 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    json value;
    /// CSV rendering; empty means "no CSV form", the JSON is printed instead.
    std::string csv;
    bool ok = true;
};

std::string csv_row(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    return line + '\n';
}

std::string chain_csv(const ChainReport& r) {
    std::string s = csv_row({"label", "value", "slack"});
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        s += csv_row({r.labels[i], format_double(r.values[i]), i ? format_double(r.slacks[i - 1]) : ""});
    }
    return s;
}

std::string gap_pair_csv(const GapBoundPair& p) {
    std::string s = csv_row({"report", "gap", "lower_bound", "upper_bound", "pass"});
    auto row = [&](const char* name, const GapBoundReport& r) {
        s += csv_row({name, format_double(r.gap), format_double(r.lower_bound), format_double(r.upper_bound),
                      r.pass ? "1" : "0"});
    };
    row("first", p.first);
    row("second", p.second);
    return s;
}

std::string suite_csv(const SuiteReport& r) {
    std::string s = csv_row({"inequality", "min_slack", "tight"});
    for (const auto& [name, slack] : r.min_slacks) {
        const auto it = r.tight.find(name);
        s += csv_row({name, format_double(slack), std::to_string(it == r.tight.end() ? 0 : it->second)});
    }
    return s;
}

const CLI::Validator kPositive(
    [](std::string& input) -> std::string {
        try {
            std::size_t used = 0;
            const double x = std::stod(input, &used);
            if (used == input.size() && x > 0.0 && std::isfinite(x)) return {};
        } catch (const std::exception&) {
        }
        return "value must be a positive finite number, got '" + input + "'";
    },
    "POSITIVE");

Weight weight_of(const Flags& fl) { return Weight(fl.v); }

PositivePair pair_of(const Flags& fl) {
    if (!(fl.a > 0.0) || !(fl.b > 0.0)) throw UsageError("--a and --b must be positive");
    return PositivePair(fl.a, fl.b);
}

ConvexFunction function_of(const Flags& fl, bool need_segment) {
    const auto which = parse_builtin(fl.f);
    if (!which) throw UsageError("unknown function '" + fl.f + "'");
    ConvexFunction f = make_builtin(*which);
    if (need_segment && !f.domain.contains(fl.a, fl.b)) {
        throw UsageError("[--a, --b] lies outside the domain of " + fl.f);
    }
    f.deriv_bound = fl.K;
    if (fl.m || fl.M) {
        if (!(fl.m && fl.M)) throw UsageError("--m and --M must be given together");
        f.curvature = CurvatureBounds{*fl.m, *fl.M};
        if (*fl.m > *fl.M) throw UsageError("--m must not exceed --M");
    }
    return f;
}

struct GridAxis {
    std::vector<double> points;
};

GridAxis parse_grid(const std::string& spec, char& axis) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 4 || parts[0].size() != 1 || std::string("abv").find(parts[0][0]) == std::string::npos) {
        throw UsageError("grid spec must look like a:lo:hi:n (axis a, b or v), got '" + spec + "'");
    }
    axis = parts[0][0];
    double lo = 0.0;
    double hi = 0.0;
    long n = 0;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("lo");
        hi = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("hi");
        n = std::stol(parts[3], &used);
        if (used != parts[3].size()) throw std::invalid_argument("n");
    } catch (const std::exception&) {
        throw UsageError("grid spec '" + spec + "' has a malformed number");
    }
    if (n < 1) throw UsageError("grid axis '" + spec + "' is empty");
    GridAxis g;
    for (long k = 0; k < n; ++k) {
        g.points.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    }
    for (double x : g.points) {
        if (axis == 'v' ? !(x >= 0.0 && x <= 1.0) : !(x > 0.0)) {
            throw UsageError("grid axis '" + spec + "' leaves the admissible range");
        }
    }
    return g;
}

Output run_scan(const Flags& fl) {
    std::vector<std::string> specs = fl.grid;
    GridAxis axes[3] = {{}, {}, {}};
    bool seen[3] = {false, false, false};
    for (const std::string& s : specs) {
        char axis = 0;
        GridAxis g = parse_grid(s, axis);
        const int k = axis == 'a' ? 0 : axis == 'b' ? 1 : 2;
        axes[k] = std::move(g);
        seen[k] = true;
    }
    const char* defaults[3] = {"a:0.5:5:11", "b:0.5:5:11", "v:0.1:0.9:9"};
    for (int k = 0; k < 3; ++k) {
        if (!seen[k]) {
            char axis = 0;
            axes[k] = parse_grid(defaults[k], axis);
        }
    }
    if (fl.chain != "log" && fl.chain != "identric") throw UsageError("--chain must be log or identric");
    const bool log_chain = fl.chain == "log";
    const double tol = fl.tol.value_or(kChainTol);

    std::vector<std::string> columns{"a", "b", "v"};
    const ChainReport probe = log_chain ? mean_chain_log(PositivePair(1, 1), kHalf, tol)
                                        : mean_chain_identric(PositivePair(1, 1), kHalf, tol);
    for (const auto& l : probe.labels) columns.push_back(l);
    for (std::size_t i = 1; i < probe.labels.size(); ++i) columns.push_back("slack" + std::to_string(i));
    columns.push_back("pass");

    Output o;
    json rows = json::array();
    o.csv = csv_row(columns);
    for (double a : axes[0].points) {
        for (double b : axes[1].points) {
            for (double v : axes[2].points) {
                const PositivePair p(a, b);
                const ChainReport r = log_chain ? mean_chain_log(p, Weight(v), tol) : mean_chain_identric(p, Weight(v), tol);
                std::vector<double> row{a, b, v};
                row.insert(row.end(), r.values.begin(), r.values.end());
                row.insert(row.end(), r.slacks.begin(), r.slacks.end());
                row.push_back(r.pass ? 1.0 : 0.0);
                std::vector<std::string> cells;
                for (double x : row) cells.push_back(format_double(x));
                o.csv += csv_row(cells);
                rows.push_back(row);
                o.ok = o.ok && r.pass;
            }
        }
    }
    o.value = {{"chain", fl.chain}, {"columns", columns}, {"rows", std::move(rows)}};
    return o;
}

Output run_verify(const std::string& which, const Flags& fl) {
    SuiteReport r;
    if (which == "paper-numbers") {
        r = reproduce_paper_numbers();
    } else {
        SuiteConfig cfg = which == "scalar"   ? SuiteConfig::scalar_defaults()
                          : which == "bounds" ? SuiteConfig::bounds_defaults()
                                              : SuiteConfig::operator_defaults();
        if (fl.seed_set) cfg.seed = fl.seed;
        if (fl.trials > 0) cfg.trials = fl.trials;
        if (fl.tol) cfg.tol = *fl.tol;
        cfg.workers = fl.workers;
        r = which == "scalar" ? run_scalar_suite(cfg) : which == "bounds" ? run_bounds_suite(cfg) : run_operator_suite(cfg);
    }
    return {suite_to_json(r, fl.timing), suite_csv(r), r.pass()};
}

void add_point_flags(CLI::App* sub, Flags& fl, bool positive) {
    if (positive) {
        sub->add_option("--a", fl.a, "first argument")->check(kPositive);
        sub->add_option("--b", fl.b, "second argument")->check(kPositive);
    } else {
        sub->add_option("--a", fl.a, "left end of the segment");
        sub->add_option("--b", fl.b, "right end of the segment");
    }
    sub->add_option("--v", fl.v, "weight in [0,1]")->check(CLI::Range(0.0, 1.0));
}

void add_common(CLI::App* sub, Flags& fl) {
    sub->add_option("--format", fl.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tol", fl.tol, "relative tolerance")->check(kPositive);
}

void add_function_flag(CLI::App* sub, Flags& fl) {
    sub->add_option("--f", fl.f, "exp | neg-log | square | quartic | xlogx")
        ->check(CLI::IsMember({"exp", "neg-log", "square", "quartic", "xlogx"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted logarithmic/identric means, Hermite-Hadamard refinements and operator means", "hhm"};
    app.require_subcommand(1);
    Flags fl;
    std::function<Output()> action;

    // means
    CLI::App* means = app.add_subcommand("means", "scalar weighted means")->require_subcommand(1);
    CLI::App* means_eval = means->add_subcommand("eval", "evaluate one mean");
    add_point_flags(means_eval, fl, true);
    add_common(means_eval, fl);
    means_eval->add_option("--mean", fl.mean, "arith | geom | log | identric")
        ->check(CLI::IsMember({"arith", "geom", "log", "identric"}));
    means_eval->callback([&] {
        action = [&] {
            const PositivePair p = pair_of(fl);
            const Weight w = weight_of(fl);
            const double value = fl.mean == "arith"  ? wgt_arith(p, w)
                                 : fl.mean == "geom" ? wgt_geom(p, w)
                                 : fl.mean == "log"  ? wgt_log_mean(p, w)
                                                     : wgt_identric(p, w);
            Output o;
            o.value = {{"mean", fl.mean}, {"a", fl.a}, {"b", fl.b}, {"v", fl.v}, {"value", value}};
            o.csv = csv_row({"mean", "a", "b", "v", "value"}) +
                    csv_row({fl.mean, format_double(fl.a), format_double(fl.b), format_double(fl.v), format_double(value)});
            return o;
        };
    });
    CLI::App* means_chain = means->add_subcommand("chain", "five-term mean chain");
    add_point_flags(means_chain, fl, true);
    add_common(means_chain, fl);
    means_chain->add_option("--chain", fl.chain, "log | identric")->check(CLI::IsMember({"log", "identric"}));
    means_chain->callback([&] {
        action = [&] {
            const double tol = fl.tol.value_or(kChainTol);
            const ChainReport r = fl.chain == "log" ? mean_chain_log(pair_of(fl), weight_of(fl), tol)
                                                    : mean_chain_identric(pair_of(fl), weight_of(fl), tol);
            return Output{chain_to_json(r), chain_csv(r), r.pass};
        };
    });

    // hh
    CLI::App* hh = app.add_subcommand("hh", "convex-function refinements")->require_subcommand(1);
    CLI::App* hh_chain = hh->add_subcommand("chain", "seven-term refinement chain");
    CLI::App* hh_c = hh->add_subcommand("c", "weighted two-piece integral average C_{f,v}");
    for (CLI::App* sub : {hh_chain, hh_c}) {
        add_point_flags(sub, fl, false);
        add_common(sub, fl);
        add_function_flag(sub, fl);
    }
    hh_chain->callback([&] {
        action = [&] {
            const ChainReport r = chain_eval(function_of(fl, true), fl.a, fl.b, weight_of(fl), {}, fl.tol.value_or(kChainTol));
            return Output{chain_to_json(r), chain_csv(r), r.pass};
        };
    });
    hh_c->callback([&] {
        action = [&] {
            const double c = c_fv(function_of(fl, true), fl.a, fl.b, weight_of(fl));
            Output o;
            o.value = {{"f", fl.f}, {"a", fl.a}, {"b", fl.b}, {"v", fl.v}, {"value", c}};
            o.csv = csv_row({"f", "a", "b", "v", "value"}) +
                    csv_row({fl.f, format_double(fl.a), format_double(fl.b), format_double(fl.v), format_double(c)});
            return o;
        };
    });

    // bounds
    CLI::App* bounds = app.add_subcommand("bounds", "derivative-based gap bounds")->require_subcommand(1);
    for (const char* name : {"thm32", "thm33"}) {
        CLI::App* sub = bounds->add_subcommand(name, std::string(name) == "thm32" ? "C-R1, R2-C against v(1-v)K(b-a)/2"
                                                                                   : "C-R1, R2-C against the m, M sandwiches");
        add_point_flags(sub, fl, false);
        add_common(sub, fl);
        add_function_flag(sub, fl);
        sub->add_option("--K", fl.K, "bound on |f'| (default: exact builtin value)");
        sub->add_option("--m", fl.m, "inf f'' (default: exact builtin value)");
        sub->add_option("--M", fl.M, "sup f'' (default: exact builtin value)");
        const bool is32 = std::string(name) == "thm32";
        sub->callback([&, is32] {
            action = [&, is32] {
                const ConvexFunction f = function_of(fl, true);
                const double tol = fl.tol.value_or(kBoundTol);
                const GapBoundPair r = is32 ? thm32_gaps(f, fl.a, fl.b, weight_of(fl), {}, tol)
                                            : thm33_gaps(f, fl.a, fl.b, weight_of(fl), {}, tol);
                return Output{gap_pair_to_json(r), gap_pair_csv(r), r.pass()};
            };
        });
    }
    using CorFn = GapBoundPair (*)(PositivePair, Weight, double);
    const std::pair<const char*, CorFn> cors[] = {
        {"cor31", &cor31_check}, {"cor32", &cor32_check}, {"cor33", &cor33_check}, {"cor34", &cor34_check}};
    for (const auto& [name, fn] : cors) {
        CLI::App* sub = bounds->add_subcommand(name, "mean-specialized bounds (needs b >= a)");
        add_point_flags(sub, fl, true);
        add_common(sub, fl);
        sub->callback([&, fn = fn] {
            action = [&, fn] {
                const GapBoundPair r = fn(pair_of(fl), weight_of(fl), fl.tol.value_or(kBoundTol));
                return Output{gap_pair_to_json(r), gap_pair_csv(r), r.pass()};
            };
        });
    }

    // op
    CLI::App* op = app.add_subcommand("op", "operator means on SPD matrices")->require_subcommand(1);
    CLI::App* op_chain_cmd = op->add_subcommand("chain", "five-term operator chain with Loewner verdicts");
    CLI::App* op_eval = op->add_subcommand("eval", "evaluate one operator mean");
    for (CLI::App* sub : {op_chain_cmd, op_eval}) {
        sub->add_option("--file", fl.file, "matrix-pair JSON {\"A\": ..., \"B\": ...}")->required();
        sub->add_option("--v", fl.v, "weight in [0,1]")->check(CLI::Range(0.0, 1.0));
        add_common(sub, fl);
    }
    op_eval->add_option("--mean", fl.mean, "arith | geom | log")->check(CLI::IsMember({"arith", "geom", "log"}));
    std::optional<std::pair<SpdMatrix, SpdMatrix>> operands;
    auto load = [&] {
        try {
            operands = read_matrix_pair_file(fl.file);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    };
    op_chain_cmd->callback([&] {
        load();
        action = [&] {
            const OperatorChainReport r = op_chain(operands->first, operands->second, weight_of(fl), fl.tol.value_or(kLoewnerTol));
            Output o{op_chain_to_json(r), "", r.pass};
            o.csv = csv_row({"inequality", "min_eig_of_difference", "tol_used", "holds"});
            for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
                o.csv += csv_row({r.labels[i] + "<=" + r.labels[i + 1], format_double(r.verdicts[i].min_eig_of_difference),
                                  format_double(r.verdicts[i].tol_used), r.verdicts[i].holds ? "1" : "0"});
            }
            return o;
        };
    });
    op_eval->callback([&] {
        load();
        action = [&] {
            const auto& [a, b] = *operands;
            const SpdMatrix m = fl.mean == "arith" ? op_weighted_arith(a, b, weight_of(fl))
                                : fl.mean == "geom" ? op_weighted_geom(a, b, weight_of(fl))
                                                    : op_weighted_log(a, b, weight_of(fl));
            Output o;
            o.value = {{"mean", fl.mean}, {"v", fl.v}, {"result", matrix_to_json(m.matrix())}};
            for (Eigen::Index i = 0; i < m.dim(); ++i) {
                std::vector<std::string> cells;
                for (Eigen::Index j = 0; j < m.dim(); ++j) cells.push_back(format_double(m.matrix()(i, j)));
                o.csv += csv_row(cells);
            }
            return o;
        };
    });

    // verify
    CLI::App* verify = app.add_subcommand("verify", "seeded verification suites")->require_subcommand(1);
    for (const char* name : {"scalar", "bounds", "operator", "paper-numbers"}) {
        CLI::App* sub = verify->add_subcommand(name, std::string("run the ") + name + " suite");
        add_common(sub, fl);
        const std::string which = name;
        if (which != "paper-numbers") {
            sub->add_option("--seed", fl.seed, "RNG seed")->each([&](const std::string&) { fl.seed_set = true; });
            sub->add_option("--trials", fl.trials, "number of trials")->check(kPositive);
            sub->add_option("--workers", fl.workers, "worker threads")->check(CLI::Range(1u, 256u));
        }
        sub->add_flag("--timing", fl.timing, "report wall_ms (otherwise null)");
        sub->callback([&, which] { action = [&, which] { return run_verify(which, fl); }; });
    }

    // scan
    CLI::App* scan = app.add_subcommand("scan", "grid scan of a mean chain (one row per grid point)");
    scan->add_option("--grid", fl.grid, "axis spec a:lo:hi:n, b:lo:hi:n or v:lo:hi:n (repeatable)");
    scan->add_option("--chain", fl.chain, "log | identric")->check(CLI::IsMember({"log", "identric"}));
    add_common(scan, fl);
    scan->callback([&] { action = [&] { return run_scan(fl); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "error: " << msg << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const Output o = action();
        if (fl.format == "csv" && !o.csv.empty()) {
            out << o.csv;
        } else {
            out << o.value.dump(2) << '\n';
        }
        return o.ok ? kExitOk : kExitFailure;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        out << json{{"error", e.what()}, {"kind", e.kind()}}.dump(2) << '\n';
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace hhm
