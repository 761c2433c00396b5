#include "hhm/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace hhm {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return {{"dim", m.rows()}, {"rows", std::move(rows)}};
}

SpdMatrix spd_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rows")) {
        throw DomainError("matrix JSON needs \"dim\" and \"rows\"");
    }
    if (!j["dim"].is_number_integer() || j["dim"].get<long>() < 1) {
        throw DomainError("matrix \"dim\" must be a positive integer");
    }
    const auto n = j["dim"].get<Eigen::Index>();
    const json& rows = j["rows"];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
        throw DomainError("matrix \"rows\" must hold dim rows");
    }
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw DomainError("matrix row " + std::to_string(i) + " must hold dim entries");
        }
        for (Eigen::Index k = 0; k < n; ++k) {
            const json& x = row[static_cast<std::size_t>(k)];
            if (!x.is_number()) throw DomainError("matrix entries must be numbers");
            m(i, k) = x.get<double>();
        }
    }
    return SpdMatrix::from(m);
}

std::pair<SpdMatrix, SpdMatrix> matrix_pair_from_json(const json& j) {
    if (!j.is_object() || !j.contains("A") || !j.contains("B")) {
        throw DomainError("matrix-pair JSON needs \"A\" and \"B\"");
    }
    return {spd_from_json(j["A"]), spd_from_json(j["B"])};
}

std::pair<SpdMatrix, SpdMatrix> read_matrix_pair_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DomainError(path + ": " + e.what());
    }
    return matrix_pair_from_json(j);
}

json chain_to_json(const ChainReport& r) {
    return {{"labels", r.labels}, {"values", r.values},   {"slacks", r.slacks},      {"tol_used", r.tol_used},
            {"scale", r.scale},   {"pass", r.pass},       {"certified", r.certified}};
}

json gap_to_json(const GapBoundReport& r) {
    return {{"gap", r.gap},           {"lower_bound", r.lower_bound}, {"upper_bound", r.upper_bound},
            {"tol_used", r.tol_used}, {"scale", r.scale},             {"pass", r.pass}};
}

json gap_pair_to_json(const GapBoundPair& r) {
    return {{"first", gap_to_json(r.first)}, {"second", gap_to_json(r.second)}, {"pass", r.pass()}};
}

json loewner_to_json(const LoewnerVerdict& v) {
    return {{"min_eig_of_difference", v.min_eig_of_difference}, {"tol_used", v.tol_used}, {"holds", v.holds}};
}

json op_chain_to_json(const OperatorChainReport& r) {
    json terms = json::array();
    for (const Matrix& m : r.terms) terms.push_back(matrix_to_json(m));
    json verdicts = json::array();
    for (const LoewnerVerdict& v : r.verdicts) verdicts.push_back(loewner_to_json(v));
    return {{"labels", r.labels}, {"terms", std::move(terms)}, {"verdicts", std::move(verdicts)}, {"pass", r.pass}};
}

json suite_to_json(const SuiteReport& r, bool include_timing) {
    json failures = json::array();
    for (const FailureRecord& f : r.failures) {
        failures.push_back({{"trial", f.trial},
                            {"check", f.check},
                            {"inputs", f.inputs},
                            {"slacks", f.slacks},
                            {"detail", f.detail}});
    }
    json out = {{"suite", r.suite},
                {"seed", r.seed},
                {"trials", r.trials},
                {"pass", r.pass()},
                {"failures", std::move(failures)},
                {"min_slacks", r.min_slacks},
                {"tight", r.tight},
                {"values", r.values}};
    out["wall_ms"] = include_timing ? json(r.wall_ms) : json(nullptr);
    return out;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace hhm
