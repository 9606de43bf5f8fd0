#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twopoint/expr.hpp"

namespace twopoint {

enum class Method { newton, secant, two_point };

std::string_view to_string(Method m);
std::optional<Method> method_from_name(std::string_view name);

enum class SeedStrategy { perturb, guarded_newton };

struct SolverConfig {
    double tol = 1e-15;  // |x_k - x_{k-1}| + |y_k| < tol stops the iteration
    int max_iter = 1000;
    double divergence_bound = 1e12;
    SeedStrategy seed = SeedStrategy::perturb;
    double delta_rel = 1e-4;  // perturbation seed, and the stagnation nudge
    int max_halvings = 40;    // guarded Newton seed
    double sep_epsilon = 1e-300;
    int cycle_period_max = 4;
    double cycle_tol_rel = 1e-9;
    int cycle_min_iters = 20;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;

    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct IterationRecord {
    int k = 0;
    double x = 0.0;
    double y = 0.0;
    double dy = 0.0;        // NaN for secant
    double r_weight = 0.0;  // two-point only; NaN elsewhere and at k = 0
};

struct Converged {
    double root = 0.0;
    int iterations = 0;
};
struct Diverged {
    double last_x = 0.0;
};
struct Oscillating {
    int period = 0;
};
struct DomainFailure {
    int iteration = 0;  // 1-based; iteration n evaluates x_{n-1}
    std::string detail;
};
struct DerivativeStall {
    int iteration = 0;
};
struct MaxIterationsExceeded {
    double last_x = 0.0;
};

using Outcome =
    std::variant<Converged, Diverged, Oscillating, DomainFailure, DerivativeStall, MaxIterationsExceeded>;

/// Short lowercase label: converged, diverged, oscillating, domain-failure,
/// derivative-stall, max-iterations.
std::string_view outcome_label(const Outcome& outcome);

struct Trace {
    Method method = Method::newton;
    std::vector<IterationRecord> records;
    Outcome outcome;
    SolverConfig config;

    bool converged() const { return std::holds_alternative<Converged>(outcome); }
    /// Index of the last record.
    int iterations() const { return records.empty() ? 0 : records.back().k; }
    double final_x() const { return records.back().x; }
};

enum class StepError { degenerate_slope, prev_point_is_root, coincident_points };

std::string_view to_string(StepError e);

template <class T>
using StepResult = std::variant<T, StepError>;

struct TwoPointStep {
    double x_next = 0.0;
    double r = 0.0;
};

/// x - y/dy under IEEE semantics; dy = 0 with y != 0 gives an infinity.
double newton_step(double x, double y, double dy);

StepResult<double> secant_step(double x_prev, double y_prev, double x_cur, double y_cur,
                               double sep_epsilon = SolverConfig{}.sep_epsilon);

/// The two-point update. The new iterate is the weighted sum
/// (1 - 1/r) x_prev + (1/r) x_cur with
///   r = 1 - (y_cur / y_prev) * (slope / dy_cur),  slope = (y_cur - y_prev) / (x_cur - x_prev).
/// dy_cur = 0 makes r infinite and returns x_prev; y_cur = 0 gives r = 1 and
/// returns x_cur.
StepResult<TwoPointStep> twopoint_step(double x_prev, double y_prev, double x_cur, double y_cur,
                                       double dy_cur, double sep_epsilon = SolverConfig{}.sep_epsilon);

/// The r of the two-point update without taking the step.
double twopoint_weight(double x_prev, double y_prev, double x_cur, double y_cur, double dy_cur);

class SeedingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Second starting point for the secant and two-point methods.
double seed_second_point(const Expression& expr, double x0, const SolverConfig& config);

/// Everything classify needs to decide whether a run has ended.
struct PartialTrace {
    Method method = Method::newton;
    std::span<const IterationRecord> records;
    std::optional<DomainError> failure;  // evaluation of the newest record failed
    bool degenerate_slope = false;       // secant could not form a slope at the newest record
};

/// Terminal outcome of the run so far, or nullopt to keep iterating. Checked in
/// order: stopping criterion, domain failure, divergence, zero derivative
/// (Newton) or zero secant slope, cycle detection, iteration cap.
std::optional<Outcome> classify(const PartialTrace& trace, const SolverConfig& config);

/// Runs method from x0 (plus x1 for the two-point methods, seeded when absent).
Trace solve(const Expression& expr, Method method, double x0, const SolverConfig& config = {},
            std::optional<double> x1 = std::nullopt);

}  // namespace twopoint
