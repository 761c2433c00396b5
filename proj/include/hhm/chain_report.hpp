#pragma once

#include <string>
#include <vector>

namespace hhm {

/// Evaluated terms of an inequality chain t0 <= t1 <= ... <= tn.
///
/// slacks[i] = values[i+1] - values[i]. The chain passes when every slack is at
/// least -tol_used * scale, scale being the largest term magnitude.
struct ChainReport {
    std::vector<std::string> labels;
    std::vector<double> values;
    std::vector<double> slacks;
    double tol_used = 0.0;
    double scale = 0.0;
    bool pass = false;
    /// False when the function behind the chain failed the convexity spot check.
    bool certified = true;

    /// Smallest slack divided by scale (0 when scale is 0).
    double min_relative_slack() const;
};

/// Builds the report, filling slacks, scale and the verdict.
ChainReport make_chain_report(std::vector<std::string> labels, std::vector<double> values, double tol);

/// Default relative tolerance for chain verdicts.
inline constexpr double kChainTol = 1e-9;

}  // namespace hhm
