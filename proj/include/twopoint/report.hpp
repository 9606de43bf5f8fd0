#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "twopoint/bench.hpp"
#include "twopoint/solver.hpp"

namespace twopoint {

/// Shortest decimal that parses back to exactly v ("nan"/"inf"/"-inf" for
/// non-finite values).
std::string format_number(double v);

/// One per-iteration row of a trace listing.
struct OutputRow {
    int k = 0;
    double x = 0.0;
    double y = 0.0;
    double dy = 0.0;
    double r_weight = 0.0;
    std::optional<double> abs_error;
    std::optional<double> ck;
};

inline constexpr std::string_view kTraceCsvHeader = "k,x,y,dy,r_weight,abs_error,ck";
inline constexpr std::string_view kBenchCsvHeader =
    "problem,table,start,method,outcome,iterations,final_x,expected,comparison";

/// abs_error and ck are filled only when reference_root is given.
std::vector<OutputRow> output_rows(const Trace& trace, std::optional<double> reference_root);

std::string csv_field(std::string_view field);

/// NaN cells are written empty.
void write_trace_csv(std::ostream& out, const std::vector<OutputRow>& rows);
void write_trace_json(std::ostream& out, const Trace& trace, const std::vector<OutputRow>& rows);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);
void write_bench_json(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace twopoint
