#include "twopoint/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twopoint {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

double perturbed(double x0, double delta_rel) { return x0 + delta_rel * std::max(1.0, std::fabs(x0)); }

// True when x[end] repeats x[end - period] relative to the spread of the
// window between them. A window with zero spread is a fixed point, not a cycle.
bool near_repeat(std::span<const IterationRecord> r, std::size_t end, int period, double tol_rel) {
    const std::size_t begin = end - static_cast<std::size_t>(period);
    double lo = r[begin].x;
    double hi = r[begin].x;
    for (std::size_t i = begin; i <= end; ++i) {
        lo = std::min(lo, r[i].x);
        hi = std::max(hi, r[i].x);
    }
    const double spread = hi - lo;
    return spread > 0.0 && std::fabs(r[end].x - r[begin].x) <= tol_rel * spread;
}

class Runner {
public:
    Runner(const Expression& expr, Method method, const SolverConfig& config)
        : expr_(expr), config_(config) {
        trace_.method = method;
        trace_.config = config;
    }

    // Appends a record for x. Returns false when evaluation failed.
    bool push(double x) {
        IterationRecord rec{static_cast<int>(trace_.records.size()), x, kNaN, kNaN, kNaN};
        failure_.reset();
        bool ok = true;
        if (std::isfinite(x)) {
            EvalResult e = eval_dual(expr_, x);
            if (e) {
                rec.y = e.dual().value;
                rec.dy = trace_.method == Method::secant ? kNaN : e.dual().deriv;
            } else {
                failure_ = e.error();
                ok = false;
            }
        } else {
            ok = false;
        }
        if (ok && trace_.method == Method::two_point && !trace_.records.empty()) {
            const auto& prev = trace_.records.back();
            if (prev.y != 0.0 && std::fabs(x - prev.x) >= config_.sep_epsilon) {
                rec.r_weight = twopoint_weight(prev.x, prev.y, x, rec.y, rec.dy);
            }
        }
        trace_.records.push_back(rec);
        return ok;
    }

    bool finished(bool degenerate_slope = false) {
        PartialTrace pt{trace_.method, trace_.records, failure_, degenerate_slope};
        if (auto o = classify(pt, config_)) {
            trace_.outcome = std::move(*o);
            return true;
        }
        return false;
    }

    const IterationRecord& back(std::size_t from_end = 0) const {
        return trace_.records[trace_.records.size() - 1 - from_end];
    }

    Trace take() { return std::move(trace_); }

private:
    const Expression& expr_;
    const SolverConfig& config_;
    Trace trace_;
    std::optional<DomainError> failure_;
};

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::newton: return "newton";
        case Method::secant: return "secant";
        case Method::two_point: return "twopoint";
    }
    return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
    if (name == "newton") return Method::newton;
    if (name == "secant") return Method::secant;
    if (name == "twopoint") return Method::two_point;
    return std::nullopt;
}

std::string_view to_string(StepError e) {
    switch (e) {
        case StepError::degenerate_slope: return "degenerate slope";
        case StepError::prev_point_is_root: return "previous point is a root";
        case StepError::coincident_points: return "coincident points";
    }
    return "?";
}

std::string_view outcome_label(const Outcome& outcome) {
    struct {
        std::string_view operator()(const Converged&) const { return "converged"; }
        std::string_view operator()(const Diverged&) const { return "diverged"; }
        std::string_view operator()(const Oscillating&) const { return "oscillating"; }
        std::string_view operator()(const DomainFailure&) const { return "domain-failure"; }
        std::string_view operator()(const DerivativeStall&) const { return "derivative-stall"; }
        std::string_view operator()(const MaxIterationsExceeded&) const { return "max-iterations"; }
    } visitor;
    return std::visit(visitor, outcome);
}

void SolverConfig::validate() const {
    auto require = [](bool cond, const char* what) {
        if (!cond) throw std::invalid_argument(std::string("invalid solver config: ") + what);
    };
    require(positive_finite(tol), "tol must be positive and finite");
    require(max_iter >= 2, "max_iter must be at least 2");
    require(std::isfinite(divergence_bound) && divergence_bound > 1.0, "divergence_bound must exceed 1");
    require(positive_finite(delta_rel), "delta_rel must be positive and finite");
    require(max_halvings >= 0, "max_halvings must be non-negative");
    require(positive_finite(sep_epsilon), "sep_epsilon must be positive and finite");
    require(cycle_period_max >= 2, "cycle_period_max must be at least 2");
    require(positive_finite(cycle_tol_rel), "cycle_tol_rel must be positive and finite");
    require(cycle_min_iters >= 0, "cycle_min_iters must be non-negative");
}

double newton_step(double x, double y, double dy) {
    if (y == 0.0) return x;
    return x - y / dy;
}

StepResult<double> secant_step(double x_prev, double y_prev, double x_cur, double y_cur, double sep_epsilon) {
    if (std::fabs(x_cur - x_prev) < sep_epsilon) return StepError::coincident_points;
    if (y_cur == y_prev) return StepError::degenerate_slope;
    return x_cur - y_cur * (x_cur - x_prev) / (y_cur - y_prev);
}

double twopoint_weight(double x_prev, double y_prev, double x_cur, double y_cur, double dy_cur) {
    if (y_cur == 0.0) return 1.0;
    const double slope = (y_cur - y_prev) / (x_cur - x_prev);
    if (dy_cur == 0.0 && slope == 0.0) return kInf;
    return 1.0 - (y_cur / y_prev) * (slope / dy_cur);
}

StepResult<TwoPointStep> twopoint_step(double x_prev, double y_prev, double x_cur, double y_cur, double dy_cur,
                                       double sep_epsilon) {
    if (y_prev == 0.0) return StepError::prev_point_is_root;
    if (std::fabs(x_cur - x_prev) < sep_epsilon) return StepError::coincident_points;
    if (y_cur == 0.0) return TwoPointStep{x_cur, 1.0};
    const double r = twopoint_weight(x_prev, y_prev, x_cur, y_cur, dy_cur);
    return TwoPointStep{x_prev - (x_prev - x_cur) / r, r};
}

double seed_second_point(const Expression& expr, double x0, const SolverConfig& config) {
    auto usable = [&](double x1) {
        if (!std::isfinite(x1) || x1 == x0) return false;
        return eval_dual(expr, x1).ok();
    };
    const EvalResult at_x0 = eval_dual(expr, x0);
    if (!at_x0) throw SeedingError("seed: x0 is outside the domain: " + at_x0.error().describe());

    if (config.seed == SeedStrategy::guarded_newton) {
        const Dual d = at_x0.dual();
        if (d.deriv != 0.0 && std::isfinite(d.deriv) && d.value != 0.0) {
            double t = 1.0;
            for (int i = 0; i <= config.max_halvings; ++i, t *= 0.5) {
                const double x1 = x0 - t * d.value / d.deriv;
                if (usable(x1)) return x1;
            }
        }
    }
    const double x1 = perturbed(x0, config.delta_rel);
    if (usable(x1)) return x1;
    throw SeedingError("seed: no in-domain second point near x0");
}

std::optional<Outcome> classify(const PartialTrace& trace, const SolverConfig& config) {
    const auto& r = trace.records;
    if (r.empty()) return std::nullopt;
    const std::size_t n = r.size();
    const IterationRecord& last = r.back();

    if (n >= 2 && std::fabs(last.x - r[n - 2].x) + std::fabs(last.y) < config.tol) {
        return Converged{last.x, last.k};
    }
    if (trace.failure) return DomainFailure{last.k + 1, trace.failure->describe()};
    if (!std::isfinite(last.x) || std::fabs(last.x) > config.divergence_bound) return Diverged{last.x};
    if (!std::isfinite(last.y)) return DomainFailure{last.k + 1, "non-finite function value"};
    if (trace.method == Method::newton && last.dy == 0.0 && last.y != 0.0) return DerivativeStall{last.k + 1};
    if (trace.degenerate_slope) return DerivativeStall{last.k + 1};

    if (last.k >= config.cycle_min_iters) {
        for (int p = 2; p <= config.cycle_period_max; ++p) {
            if (n < static_cast<std::size_t>(p) + 2) break;
            if (near_repeat(r, n - 1, p, config.cycle_tol_rel) && near_repeat(r, n - 2, p, config.cycle_tol_rel)) {
                return Oscillating{p};
            }
        }
    }
    if (last.k >= config.max_iter) return MaxIterationsExceeded{last.x};
    return std::nullopt;
}

Trace solve(const Expression& expr, Method method, double x0, const SolverConfig& config,
            std::optional<double> x1) {
    config.validate();
    if (x1 && *x1 == x0) throw std::invalid_argument("solve: x1 must differ from x0");

    Runner run(expr, method, config);
    if (!run.push(x0) && run.finished()) return run.take();

    if (method == Method::newton) {
        while (!run.finished()) {
            const auto& cur = run.back();
            run.push(newton_step(cur.x, cur.y, cur.dy));
        }
        return run.take();
    }

    const double second = x1 ? *x1 : seed_second_point(expr, x0, config);
    if (!run.push(second) && run.finished()) return run.take();

    if (method == Method::secant) {
        bool degenerate = false;
        while (!run.finished(degenerate)) {
            const auto& prev = run.back(1);
            const auto& cur = run.back();
            auto step = secant_step(prev.x, prev.y, cur.x, cur.y, config.sep_epsilon);
            if (const double* next = std::get_if<double>(&step)) {
                run.push(*next);
            } else {
                degenerate = true;
            }
        }
        return run.take();
    }

    while (!run.finished()) {
        const IterationRecord prev = run.back(1);
        const IterationRecord cur = run.back();
        double next = 0.0;
        if (prev.y == 0.0) {
            // The older point is an exact root: return to it.
            next = prev.x;
        } else {
            auto step = twopoint_step(prev.x, prev.y, cur.x, cur.y, cur.dy, config.sep_epsilon);
            if (const auto* s = std::get_if<TwoPointStep>(&step)) {
                next = s->x_next;
            } else {
                next = newton_step(cur.x, cur.y, cur.dy);
            }
            // A zero derivative sends the iterate straight back to x_prev, which
            // would then repeat forever.
            if (next == prev.x) next = perturbed(next, config.delta_rel);
        }
        run.push(next);
    }
    return run.take();
}

}  // namespace twopoint
