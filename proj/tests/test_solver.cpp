#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "support.hpp"
#include "twopoint/solver.hpp"

using namespace twopoint;

namespace {

double value_of(const StepResult<double>& r) {
    REQUIRE(std::holds_alternative<double>(r));
    return std::get<double>(r);
}

TwoPointStep step_of(const StepResult<TwoPointStep>& r) {
    REQUIRE(std::holds_alternative<TwoPointStep>(r));
    return std::get<TwoPointStep>(r);
}

const Method kMethods[] = {Method::newton, Method::secant, Method::two_point};

}  // namespace

TEST_CASE("newton_step") {
    CHECK(newton_step(3, 5, 6) == doctest::Approx(13.0 / 6.0).epsilon(1e-15));
    CHECK(newton_step(1.25, 0, 7) == 1.25);
    CHECK(std::isinf(newton_step(1, 1, 0)));
    for (double x : {1.0, -0.3, 7.5}) {
        const Dual d = eval_dual(parse("cbrt(x)"), x).dual();
        CHECK(newton_step(x, d.value, d.deriv) == doctest::Approx(-2 * x).epsilon(1e-14));
    }
}

TEST_CASE("secant_step") {
    CHECK(value_of(secant_step(0, -6, 1, -4)) == 3);
    CHECK(value_of(secant_step(1, -1, 2, 2)) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(std::get<StepError>(secant_step(1, 2, 3, 2)) == StepError::degenerate_slope);
    CHECK(std::get<StepError>(secant_step(1, 2, 1, 3)) == StepError::coincident_points);
}

TEST_CASE("twopoint_step") {
    SUBCASE("root is a fixed point") {
        const TwoPointStep s = step_of(twopoint_step(2, 2, 1.5, 0, 3));
        CHECK(s.r == 1);
        CHECK(s.x_next == 1.5);
    }
    SUBCASE("x^2 - 2 from 2 and 1.5") {
        const TwoPointStep s = step_of(twopoint_step(2, 2, 1.5, 0.25, 3));
        const double slope = (0.25 - 2) / (1.5 - 2);
        const double r = 1 - (0.25 / 2) * (slope / 3);
        CHECK(s.r == doctest::Approx(r).epsilon(1e-15));
        CHECK(s.r == doctest::Approx(0.85416667).epsilon(1e-6));
        CHECK(s.x_next == doctest::Approx(2 - 0.5 / r).epsilon(1e-15));
        CHECK(s.x_next == doctest::Approx(1.4146341).epsilon(1e-6));
    }
    SUBCASE("3x - 9 in one step") {
        const TwoPointStep s = step_of(twopoint_step(0, -9, 1, -6, 3));
        CHECK(std::fabs(s.x_next - 3) <= 1e-12 * 3);
    }
    SUBCASE("zero derivative keeps the previous point") {
        const double h = std::numbers::pi / 2;
        const TwoPointStep s = step_of(twopoint_step(1.0, std::sin(1.0), h, 1.0, 0.0));
        CHECK(std::isinf(s.r));
        CHECK(s.x_next == 1.0);
    }
    SUBCASE("precondition failures") {
        CHECK(std::get<StepError>(twopoint_step(1, 0, 2, 1, 1)) == StepError::prev_point_is_root);
        CHECK(std::get<StepError>(twopoint_step(1, 1, 1, 2, 1)) == StepError::coincident_points);
    }
}

TEST_CASE("second-point seeding") {
    SolverConfig c;
    CHECK(seed_second_point(parse("x"), 3, c) == 3 + 1e-4 * 3);
    CHECK(seed_second_point(parse("x"), 0.5, c) == 0.5 + 1e-4);

    c.seed = SeedStrategy::guarded_newton;
    const Expression lg = parse("log10(x)");
    const Dual d0 = eval_dual(lg, 3).dual();
    const double full = 3 - d0.value / d0.deriv;
    REQUIRE(full < 0);
    const double x1 = seed_second_point(lg, 3, c);
    CHECK(x1 > 0);
    CHECK(x1 < 3);
    // One of the halved steps t = 2^-j.
    bool halved = false;
    for (int j = 1; j <= 40; ++j) halved = halved || x1 == 3 - std::ldexp(1.0, -j) * d0.value / d0.deriv;
    CHECK(halved);

    // Flat start falls back to the perturbation seed.
    CHECK(seed_second_point(parse("cos(x)"), 0, c) == 1e-4);
    CHECK_THROWS_AS(seed_second_point(parse("sqrt(x - 1) + sqrt(1 - x)"), 1, SolverConfig{}), SeedingError);
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(SolverConfig{}.validate());
    auto bad = [](auto mutate) {
        SolverConfig c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(bad([](SolverConfig& c) { c.tol = 0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SolverConfig& c) { c.max_iter = 1; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SolverConfig& c) { c.divergence_bound = 1; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad([](SolverConfig& c) { c.delta_rel = NAN; }).validate(), std::invalid_argument);
}

TEST_CASE("solve examples") {
    SUBCASE("newton on x - 3 ln x") {
        const Trace t = solve(parse("x - 3*ln(x)"), Method::newton, 2);
        REQUIRE(t.converged());
        CHECK(std::get<Converged>(t.outcome).root == doctest::Approx(1.857183860207840).epsilon(1e-14));
        CHECK(t.iterations() <= 10);
    }
    SUBCASE("newton on log10 leaves the domain at the second iteration") {
        const Trace t = solve(parse("log10(x)"), Method::newton, 3);
        REQUIRE(std::holds_alternative<DomainFailure>(t.outcome));
        CHECK(std::get<DomainFailure>(t.outcome).iteration == 2);
    }
    SUBCASE("atan") {
        const Trace tp = solve(parse("atan(x)"), Method::two_point, 3);
        REQUIRE(tp.converged());
        CHECK(std::get<Converged>(tp.outcome).root == 0);
        CHECK(tp.iterations() <= 6 + 5);
        CHECK(std::holds_alternative<Diverged>(solve(parse("atan(x)"), Method::newton, 3).outcome));
    }
    SUBCASE("newton on cbrt doubles with alternating sign and diverges") {
        const Trace t = solve(parse("cbrt(x)"), Method::newton, 1);
        REQUIRE(std::holds_alternative<Diverged>(t.outcome));
        CHECK(t.iterations() == 40);
        for (std::size_t i = 1; i < t.records.size(); ++i) {
            CHECK(t.records[i].x == doctest::Approx(-2 * t.records[i - 1].x).epsilon(1e-12));
        }
    }
    SUBCASE("newton on the quintic does not settle") {
        const Trace t = solve(parse("x^5 - x + 1"), Method::newton, 2);
        CHECK(std::holds_alternative<Oscillating>(t.outcome));
    }
    SUBCASE("exact root") {
        const Trace t = solve(parse("x - 2"), Method::newton, 2);
        REQUIRE(t.converged());
        CHECK(t.iterations() == 1);
        CHECK(t.final_x() == 2);
    }
    SUBCASE("domain failure at the start") {
        const Trace t = solve(parse("ln(x)"), Method::two_point, -1);
        REQUIRE(std::holds_alternative<DomainFailure>(t.outcome));
        CHECK(std::get<DomainFailure>(t.outcome).iteration == 1);
        CHECK(t.records.size() == 1);
    }
    SUBCASE("iteration cap") {
        SolverConfig c;
        c.max_iter = 3;
        const Trace t = solve(parse("x^2 - 2"), Method::newton, 100, c);
        CHECK(std::holds_alternative<MaxIterationsExceeded>(t.outcome));
        CHECK(t.iterations() == 3);
    }
    SUBCASE("explicit second point") {
        const Trace t = solve(parse("x^2 - 2"), Method::two_point, 2, {}, 1.5);
        REQUIRE(t.records.size() > 2);
        CHECK(t.records[1].x == 1.5);
        CHECK(t.records[2].x == step_of(twopoint_step(2, 2, 1.5, 0.25, 3)).x_next);
    }
}

TEST_CASE("classify priorities") {
    SolverConfig c;
    std::vector<IterationRecord> recs = {{0, 1.0, 0.5, 1.0, NAN}, {1, 1.0, 0.0, 1.0, NAN}};
    PartialTrace pt{Method::newton, recs, std::nullopt, false};
    auto o = classify(pt, c);
    REQUIRE(o);
    CHECK(std::holds_alternative<Converged>(*o));

    recs[1] = {1, 2e12, 1.0, 1.0, NAN};
    o = classify(pt, c);
    REQUIRE(o);
    CHECK(std::holds_alternative<Diverged>(*o));

    recs[1] = {1, 2.0, 1.0, 0.0, NAN};
    o = classify(pt, c);
    REQUIRE(o);
    CHECK(std::get<DerivativeStall>(*o).iteration == 2);

    recs[1] = {1, 2.0, 1.0, 0.5, NAN};
    CHECK_FALSE(classify(pt, c));

    pt.failure = DomainError{NodeKind::call, Function::ln, -1.0};
    o = classify(pt, c);
    REQUIRE(o);
    CHECK(std::holds_alternative<DomainFailure>(*o));
}

TEST_CASE("period-two cycle is reported as oscillating") {
    std::vector<IterationRecord> recs;
    for (int k = 0; k <= 24; ++k) recs.push_back({k, k % 2 ? 1.0 : -1.0, 1.0, 1.0, NAN});
    const auto o = classify(PartialTrace{Method::newton, recs, std::nullopt, false}, SolverConfig{});
    REQUIRE(o);
    CHECK(std::get<Oscillating>(*o).period == 2);
}

TEST_CASE("trace records reproduce the evaluator") {
    for (const auto& p : builtin_problems()) {
        for (double s : p.starts) {
            for (Method m : kMethods) {
                const Trace t = solve(p.expression, m, s);
                REQUIRE_FALSE(t.records.empty());
                for (std::size_t i = 0; i < t.records.size(); ++i) {
                    const auto& r = t.records[i];
                    CHECK(r.k == static_cast<int>(i));
                    auto ev = eval_dual(p.expression, r.x);
                    if (!ev.ok()) {
                        CHECK(i + 1 == t.records.size());
                        continue;
                    }
                    if (std::isfinite(r.y)) CHECK(r.y == ev.dual().value);
                    if (m == Method::secant) {
                        CHECK(std::isnan(r.dy));
                    } else {
                        CHECK((r.dy == ev.dual().deriv || (std::isnan(r.dy) && std::isnan(ev.dual().deriv))));
                    }
                    if (m != Method::two_point || i == 0) CHECK(std::isnan(r.r_weight));
                }
                if (t.converged()) {
                    const auto& last = t.records.back();
                    const auto& prev = t.records[t.records.size() - 2];
                    CHECK(std::fabs(last.x - prev.x) + std::fabs(last.y) < t.config.tol);
                }
            }
        }
    }
}

TEST_CASE("solve is deterministic") {
    for (const auto& p : builtin_problems()) {
        for (Method m : kMethods) {
            const Trace a = solve(p.expression, m, p.starts.front());
            const Trace b = solve(p.expression, m, p.starts.front());
            REQUIRE(a.records.size() == b.records.size());
            for (std::size_t i = 0; i < a.records.size(); ++i) {
                const auto& ra = a.records[i];
                const auto& rb = b.records[i];
                CHECK(ra.k == rb.k);
                CHECK(std::bit_cast<std::uint64_t>(ra.x) == std::bit_cast<std::uint64_t>(rb.x));
                CHECK(std::bit_cast<std::uint64_t>(ra.y) == std::bit_cast<std::uint64_t>(rb.y));
                CHECK(std::bit_cast<std::uint64_t>(ra.dy) == std::bit_cast<std::uint64_t>(rb.dy));
                CHECK(std::bit_cast<std::uint64_t>(ra.r_weight) == std::bit_cast<std::uint64_t>(rb.r_weight));
            }
        }
    }
}
