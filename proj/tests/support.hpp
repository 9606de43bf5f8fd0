#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "twopoint/corpus.hpp"
#include "twopoint/expr.hpp"

namespace testing {

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(0x7a0f3c5eULL ^ (salt * 0x9e3779b97f4a7c15ULL)); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline double rel_diff(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::max(std::fabs(a), std::fabs(b))); }

inline double ulp_of(double v) {
    const double a = std::fabs(v);
    return std::nextafter(a, INFINITY) - a;
}

// Sample points around a problem's starts and root where f and f' evaluate.
inline std::vector<double> domain_samples(const twopoint::Problem& p, int count, std::uint64_t salt) {
    auto g = rng(salt);
    std::vector<double> centers(p.starts.begin(), p.starts.end());
    if (p.reference_root) centers.push_back(*p.reference_root);
    std::vector<double> xs;
    int attempts = 0;
    while (static_cast<int>(xs.size()) < count && attempts < count * 100) {
        ++attempts;
        const double c = centers[std::uniform_int_distribution<std::size_t>(0, centers.size() - 1)(g)];
        const double x = c + uniform(g, -1.0, 1.0);
        auto r = twopoint::eval_dual(p.expression, x);
        if (!r.ok() || !std::isfinite(r.dual().deriv)) continue;
        xs.push_back(x);
    }
    return xs;
}

}  // namespace testing

namespace testing {

// e with every x replaced by r.
inline twopoint::Expression substitute(const twopoint::Expression& e, const twopoint::Expression& r) {
    using twopoint::Expression;
    using twopoint::NodeKind;
    switch (e.kind()) {
        case NodeKind::variable: return r;
        case NodeKind::literal:
        case NodeKind::constant: return e;
        case NodeKind::negate: return Expression::negate(substitute(e.operand(), r));
        case NodeKind::call: return Expression::call(e.function_id(), substitute(e.operand(), r));
        default: return Expression::binary(e.kind(), substitute(e.lhs(), r), substitute(e.rhs(), r));
    }
}

// Unambiguous rows of one published table.
struct Row {
    const twopoint::Problem* problem;
    double start;
};

inline std::vector<Row> table_rows(int table) {
    std::vector<Row> rows;
    for (const auto& p : twopoint::builtin_problems()) {
        if (p.table != table) continue;
        for (double s : p.starts) {
            const auto* note = p.note_for(s);
            if (note && (note->start_uncertain || note->root_uncertain)) continue;
            rows.push_back({&p, s});
        }
    }
    return rows;
}

}  // namespace testing
