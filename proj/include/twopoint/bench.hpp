#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twopoint/corpus.hpp"
#include "twopoint/solver.hpp"

namespace twopoint {

enum class TableSelection { table1, table2, all };

/// One (problem, start, method) run of the benchmark.
struct BenchJob {
    const Problem* problem = nullptr;
    double start = 0.0;
    Method method = Method::newton;
};

struct BenchRow {
    std::string problem;
    int table = 0;
    double start = 0.0;
    Method method = Method::newton;
    std::string outcome;  // outcome_label
    int iterations = 0;
    double final_x = 0.0;
    std::optional<ExpectedResult> expected;
    std::string comparison;  // match | count-delta:+n | mismatch | empty without expectation

    friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

/// Jobs in (table, problem, start, method) order; methods run secant, Newton,
/// two-point as in the published column order. `all` also covers problems
/// outside the tables.
std::vector<BenchJob> bench_jobs(TableSelection selection, const std::vector<Problem>& problems = builtin_problems());

std::string compare_to_expected(const ExpectedResult& expected, const Trace& trace);

BenchRow run_job(const BenchJob& job, const SolverConfig& config);

/// Reference runner: one job after another.
std::vector<BenchRow> run_bench_serial(const std::vector<BenchJob>& jobs, const SolverConfig& config);

/// OpenMP runner. Rows come back in job order and are bit-identical to the
/// serial runner's.
std::vector<BenchRow> run_bench_parallel(const std::vector<BenchJob>& jobs, const SolverConfig& config);

}  // namespace twopoint
