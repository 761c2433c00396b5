#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hhm/convex_fn.hpp"
#include "hhm/quadrature.hpp"

namespace hhm {

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

struct SuiteConfig {
    std::uint64_t seed = 42;
    /// Trials per suite (per dimension for the operator suite).
    std::size_t trials = 10000;
    Range a_range{0.1, 10.0};
    Range b_range{0.1, 10.0};
    Range v_range{0.01, 0.99};
    std::vector<Builtin> functions{kAllBuiltins.begin(), kAllBuiltins.end()};
    double tol = 1e-9;
    std::vector<int> dims{2, 3, 5, 8};
    /// Largest condition number of a generated SPD matrix.
    double cond_max = 1e4;
    /// Draws with |b - a| below this are redrawn before the convex-function checks.
    double min_gap = 1e-6;
    /// Points of the log-spaced t grid in [1e-4, 1e4] used by the operator suite.
    std::size_t grid_points = 10000;
    unsigned workers = 1;
    QuadConfig quad;

    /// Throws DomainError on empty or non-positive ranges, zero trials, or a bad v range.
    void validate() const;

    static SuiteConfig scalar_defaults();
    static SuiteConfig bounds_defaults();
    static SuiteConfig operator_defaults();
};

/// Enough to replay one check of one trial in isolation.
struct FailureRecord {
    /// Trial index, or -1 for the deterministic grids.
    std::int64_t trial = -1;
    std::string check;
    std::map<std::string, double> inputs;
    std::vector<double> slacks;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::vector<FailureRecord> failures;
    /// Smallest slack per inequality, divided by the magnitude of the compared terms.
    std::map<std::string, double> min_slacks;
    /// Inequalities that had a slack in (-tol*scale, 0): passing but numerically tight.
    std::map<std::string, std::size_t> tight;
    /// Named scalar results (used by the reference-value reproduction).
    std::map<std::string, double> values;
    double wall_ms = 0.0;

    bool pass() const noexcept { return failures.empty(); }

    /// Records one relative slack; a negative slack that still passed is counted as tight.
    void note_slack(const std::string& name, double relative_slack, bool passed);

    /// Folds another partial report into this one. Associative and order-independent:
    /// minima and counts combine, failures are kept sorted by (trial, check).
    void merge(const SuiteReport& other);
};

/// The per-trial generator: mt19937_64 seeded with splitmix64(seed ^ trial), so any
/// partition of the trials over workers reproduces the serial run.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial);

    double uniform(double lo, double hi);
    double log_uniform(double lo, double hi);
    double normal();

private:
    std::mt19937_64 engine_;
    double unit();
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Mean chains, the seven-term chain, and both Jensen-gap checks on random (a, b, v).
SuiteReport run_scalar_suite(const SuiteConfig& cfg);

/// The K and (m, M) gap sandwiches with exact builtin bounds plus the four
/// mean-specialized bounds, on oriented draws a < b.
SuiteReport run_bounds_suite(const SuiteConfig& cfg);

/// Operator chains on random SPD pairs for every configured dimension, plus the
/// representing-function chain and helper inequality on a fixed (t, v) grid.
SuiteReport run_operator_suite(const SuiteConfig& cfg);

/// p1 - p2 for f = exp, v = 1/4 at (4,1) and (8,1) against 4.35403 and -30.7996.
SuiteReport reproduce_paper_numbers();

inline constexpr double kRefDiffAt41 = 4.35403;
inline constexpr double kRefDiffAt41Tol = 5e-4;
inline constexpr double kRefDiffAt81 = -30.7996;
inline constexpr double kRefDiffAt81Tol = 5e-3;

}  // namespace hhm
