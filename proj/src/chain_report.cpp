#include "hhm/chain_report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hhm/errors.hpp"

namespace hhm {

double ChainReport::min_relative_slack() const {
    if (slacks.empty()) return 0.0;
    const double lo = *std::min_element(slacks.begin(), slacks.end());
    return scale > 0.0 ? lo / scale : lo;
}

ChainReport make_chain_report(std::vector<std::string> labels, std::vector<double> values, double tol) {
    if (labels.size() != values.size()) {
        throw DomainError("chain labels and values differ in length");
    }
    ChainReport r;
    r.labels = std::move(labels);
    r.values = std::move(values);
    r.tol_used = tol;
    for (double x : r.values) r.scale = std::max(r.scale, std::abs(x));
    r.pass = true;
    for (std::size_t i = 0; i + 1 < r.values.size(); ++i) {
        const double s = r.values[i + 1] - r.values[i];
        r.slacks.push_back(s);
        if (!(s >= -tol * r.scale)) r.pass = false;  // NaN fails
    }
    return r;
}

}  // namespace hhm
