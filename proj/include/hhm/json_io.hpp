#pragma once

#include <string>
#include <utility>

#include "json.hpp"

#include "hhm/chain_report.hpp"
#include "hhm/operator_means.hpp"
#include "hhm/smooth_bounds.hpp"
#include "hhm/verify_harness.hpp"

namespace hhm {

using json = nlohmann::json;

/// {"dim": n, "rows": [[...], ...]}.
json matrix_to_json(const Matrix& m);

/// Parses {"dim": n, "rows": [...]}; throws DomainError on shape errors or when the
/// matrix is not symmetric positive definite.
SpdMatrix spd_from_json(const json& j);

/// {"A": {...}, "B": {...}}.
std::pair<SpdMatrix, SpdMatrix> matrix_pair_from_json(const json& j);
std::pair<SpdMatrix, SpdMatrix> read_matrix_pair_file(const std::string& path);

json chain_to_json(const ChainReport& r);
json gap_to_json(const GapBoundReport& r);
json gap_pair_to_json(const GapBoundPair& r);
json loewner_to_json(const LoewnerVerdict& v);
json op_chain_to_json(const OperatorChainReport& r);

/// Keys: suite, seed, trials, pass, failures, min_slacks, tight, values, wall_ms.
/// wall_ms is null unless include_timing is set, so reports of equal configs are
/// byte-identical.
json suite_to_json(const SuiteReport& r, bool include_timing);

/// printf("%.17g"); enough digits to round-trip any double.
std::string format_double(double x);

}  // namespace hhm
