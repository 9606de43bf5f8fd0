#pragma once

#include <optional>
#include <vector>

#include "twopoint/solver.hpp"

namespace twopoint {

struct ErrorSequence {
    double reference_root = 0.0;
    std::vector<double> errors;  // x_k - reference_root
};

ErrorSequence error_sequence(const Trace& trace, double reference_root);
ErrorSequence error_sequence(std::span<const double> xs, double reference_root);

enum class LogBase { natural, ten };

/// Per-step rates C_k = log|E_{k+1}| / log|E_k|.
struct ConvergenceReport {
    std::vector<double> ck;       // ck[k] pairs E_k with E_{k+1}; NaN where masked
    std::vector<bool> valid_mask;
    std::optional<double> estimated_order;  // median of the valid tail
    int tail_window = 0;

    int valid_count() const;
};

/// Entries count as valid when both |E| lie in (floor, 1), floor =
/// 1e3 * eps * max(1, |root|). The order estimate is the median of the last
/// min(5, valid) valid entries and is only present with at least 3 of them.
/// Throws std::invalid_argument for fewer than two errors.
ConvergenceReport ck_sequence(const ErrorSequence& errors, LogBase base = LogBase::natural);

inline constexpr int kOrderTailWindow = 5;
inline constexpr int kOrderMinValid = 3;

struct WeightTriple {
    int k = 0;
    double r = 0.0;
    double w_prev = 0.0;  // 1 - 1/r, weight of x_{k-1}
    double w_cur = 0.0;   // 1/r, weight of x_k
};

WeightTriple weights_from_r(int k, double r);

/// Weights of every two-point record that carries an r. Throws
/// std::invalid_argument for Newton or secant traces.
std::vector<WeightTriple> weight_sequence(const Trace& trace);

}  // namespace twopoint
