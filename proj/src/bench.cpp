#include "twopoint/bench.hpp"

#include <stdexcept>

namespace twopoint {

namespace {

constexpr Method kColumnOrder[] = {Method::secant, Method::newton, Method::two_point};

bool selected(const Problem& p, TableSelection s) {
    switch (s) {
        case TableSelection::table1: return p.table == 1;
        case TableSelection::table2: return p.table == 2;
        case TableSelection::all: return true;
    }
    return false;
}

}  // namespace

std::vector<BenchJob> bench_jobs(TableSelection selection, const std::vector<Problem>& problems) {
    std::vector<BenchJob> jobs;
    for (int table : {1, 2, 0}) {
        for (const auto& p : problems) {
            if (p.table != table || !selected(p, selection)) continue;
            for (double x0 : p.starts) {
                for (Method m : kColumnOrder) jobs.push_back({&p, x0, m});
            }
        }
    }
    return jobs;
}

std::string compare_to_expected(const ExpectedResult& expected, const Trace& trace) {
    const Outcome& o = trace.outcome;
    if (const auto* want = std::get_if<IterationCount>(&expected)) {
        const auto* got = std::get_if<Converged>(&o);
        if (!got) return "mismatch";
        const int delta = got->iterations - want->count;
        if (delta == 0) return "match";
        return "count-delta:" + std::string(delta > 0 ? "+" : "") + std::to_string(delta);
    }
    bool ok = false;
    if (std::holds_alternative<Oscillates>(expected)) {
        ok = std::holds_alternative<Oscillating>(o) || std::holds_alternative<MaxIterationsExceeded>(o);
    } else if (std::holds_alternative<Diverges>(expected)) {
        ok = std::holds_alternative<Diverged>(o);
    } else if (std::holds_alternative<Fails>(expected)) {
        ok = std::holds_alternative<DomainFailure>(o);
    }
    return ok ? "match" : "mismatch";
}

BenchRow run_job(const BenchJob& job, const SolverConfig& config) {
    if (!job.problem) throw std::invalid_argument("bench job without a problem");
    const Problem& p = *job.problem;
    BenchRow row;
    row.problem = p.name;
    row.table = p.table;
    row.start = job.start;
    row.method = job.method;
    row.expected = p.expected_for(job.method, job.start);
    try {
        const Trace t = solve(p.expression, job.method, job.start, config);
        row.outcome = std::string(outcome_label(t.outcome));
        row.iterations = t.iterations();
        row.final_x = t.final_x();
        if (row.expected) row.comparison = compare_to_expected(*row.expected, t);
    } catch (const SeedingError&) {
        row.outcome = "seeding-failure";
        row.final_x = job.start;
        if (row.expected) row.comparison = "mismatch";
    }
    return row;
}

std::vector<BenchRow> run_bench_serial(const std::vector<BenchJob>& jobs, const SolverConfig& config) {
    config.validate();
    std::vector<BenchRow> rows;
    rows.reserve(jobs.size());
    for (const auto& job : jobs) rows.push_back(run_job(job, config));
    return rows;
}

std::vector<BenchRow> run_bench_parallel(const std::vector<BenchJob>& jobs, const SolverConfig& config) {
    config.validate();
    for (const auto& job : jobs) {
        if (!job.problem) throw std::invalid_argument("bench job without a problem");
    }
    std::vector<BenchRow> rows(jobs.size());
    const auto n = static_cast<long>(jobs.size());
    // Run lengths range from a handful of steps to max_iter.
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        rows[static_cast<std::size_t>(i)] = run_job(jobs[static_cast<std::size_t>(i)], config);
    }
    return rows;
}

}  // namespace twopoint
