#include "twopoint/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace twopoint {

ErrorSequence error_sequence(std::span<const double> xs, double reference_root) {
    if (!std::isfinite(reference_root)) throw std::invalid_argument("reference root must be finite");
    ErrorSequence out{reference_root, {}};
    out.errors.reserve(xs.size());
    for (double x : xs) out.errors.push_back(x - reference_root);
    return out;
}

ErrorSequence error_sequence(const Trace& trace, double reference_root) {
    std::vector<double> xs;
    xs.reserve(trace.records.size());
    for (const auto& r : trace.records) xs.push_back(r.x);
    return error_sequence(xs, reference_root);
}

int ConvergenceReport::valid_count() const {
    return static_cast<int>(std::count(valid_mask.begin(), valid_mask.end(), true));
}

ConvergenceReport ck_sequence(const ErrorSequence& seq, LogBase base) {
    const auto& e = seq.errors;
    if (e.size() < 2) throw std::invalid_argument("ck_sequence needs at least two errors");

    const double floor =
        1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(seq.reference_root));
    auto usable = [floor](double err) {
        const double a = std::fabs(err);
        return a > floor && a < 1.0;
    };
    auto lg = [base](double v) { return base == LogBase::natural ? std::log(v) : std::log10(v); };

    ConvergenceReport rep;
    rep.ck.assign(e.size() - 1, std::numeric_limits<double>::quiet_NaN());
    rep.valid_mask.assign(e.size() - 1, false);
    std::vector<double> valid;
    for (std::size_t k = 0; k + 1 < e.size(); ++k) {
        if (!usable(e[k]) || !usable(e[k + 1])) continue;
        const double c = lg(std::fabs(e[k + 1])) / lg(std::fabs(e[k]));
        if (!std::isfinite(c)) continue;
        rep.ck[k] = c;
        rep.valid_mask[k] = true;
        valid.push_back(c);
    }

    rep.tail_window = std::min<int>(kOrderTailWindow, static_cast<int>(valid.size()));
    if (static_cast<int>(valid.size()) >= kOrderMinValid) {
        std::vector<double> tail(valid.end() - rep.tail_window, valid.end());
        std::sort(tail.begin(), tail.end());
        const std::size_t m = tail.size();
        rep.estimated_order = m % 2 == 1 ? tail[m / 2] : 0.5 * (tail[m / 2 - 1] + tail[m / 2]);
    }
    return rep;
}

WeightTriple weights_from_r(int k, double r) {
    if (std::isinf(r)) return {k, r, 1.0, 0.0};
    double w_cur = 1.0 / r;
    const double w_prev = 1.0 - w_cur;
    // 1 - w_prev is exact, so this pair sums to exactly one.
    if (w_prev + w_cur != 1.0) w_cur = 1.0 - w_prev;
    return {k, r, w_prev, w_cur};
}

std::vector<WeightTriple> weight_sequence(const Trace& trace) {
    if (trace.method != Method::two_point) {
        throw std::invalid_argument("weight_sequence: trace was not produced by the two-point method");
    }
    std::vector<WeightTriple> out;
    for (const auto& rec : trace.records) {
        if (std::isnan(rec.r_weight)) continue;
        out.push_back(weights_from_r(rec.k, rec.r_weight));
    }
    return out;
}

}  // namespace twopoint
