#include "twopoint/report.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "twopoint/analysis.hpp"

namespace twopoint {

namespace {

using json = nlohmann::json;

std::string cell(double v) { return std::isnan(v) ? std::string() : format_number(v); }
std::string cell(const std::optional<double>& v) { return v ? cell(*v) : std::string(); }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
json number_or_null(const std::optional<double>& v) { return v ? number_or_null(*v) : json(nullptr); }

json outcome_json(const Outcome& o) {
    json j;
    j["label"] = std::string(outcome_label(o));
    std::visit(
        [&j](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Converged>) {
                j["root"] = v.root;
                j["iterations"] = v.iterations;
            } else if constexpr (std::is_same_v<T, Diverged> || std::is_same_v<T, MaxIterationsExceeded>) {
                j["last_x"] = number_or_null(v.last_x);
            } else if constexpr (std::is_same_v<T, Oscillating>) {
                j["period"] = v.period;
            } else if constexpr (std::is_same_v<T, DomainFailure>) {
                j["iteration"] = v.iteration;
                j["detail"] = v.detail;
            } else if constexpr (std::is_same_v<T, DerivativeStall>) {
                j["iteration"] = v.iteration;
            }
        },
        o);
    return j;
}

}  // namespace

std::string format_number(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::vector<OutputRow> output_rows(const Trace& trace, std::optional<double> reference_root) {
    std::vector<OutputRow> rows;
    rows.reserve(trace.records.size());
    for (const auto& r : trace.records) rows.push_back({r.k, r.x, r.y, r.dy, r.r_weight, {}, {}});
    if (!reference_root) return rows;

    const ErrorSequence errs = error_sequence(trace, *reference_root);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].abs_error = std::fabs(errs.errors[i]);
    if (errs.errors.size() >= 2) {
        const ConvergenceReport rep = ck_sequence(errs);
        for (std::size_t i = 0; i < rep.ck.size(); ++i) {
            if (rep.valid_mask[i]) rows[i].ck = rep.ck[i];
        }
    }
    return rows;
}

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_trace_csv(std::ostream& out, const std::vector<OutputRow>& rows) {
    out << kTraceCsvHeader << "\r\n";
    for (const auto& r : rows) {
        out << r.k << ',' << cell(r.x) << ',' << cell(r.y) << ',' << cell(r.dy) << ',' << cell(r.r_weight) << ','
            << cell(r.abs_error) << ',' << cell(r.ck) << "\r\n";
    }
}

void write_trace_json(std::ostream& out, const Trace& trace, const std::vector<OutputRow>& rows) {
    json j;
    j["method"] = std::string(to_string(trace.method));
    j["outcome"] = outcome_json(trace.outcome);
    json list = json::array();
    for (const auto& r : rows) {
        list.push_back({{"k", r.k},
                        {"x", number_or_null(r.x)},
                        {"y", number_or_null(r.y)},
                        {"dy", number_or_null(r.dy)},
                        {"r_weight", number_or_null(r.r_weight)},
                        {"abs_error", number_or_null(r.abs_error)},
                        {"ck", number_or_null(r.ck)}});
    }
    j["rows"] = std::move(list);
    out << j.dump(2) << '\n';
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << kBenchCsvHeader << "\r\n";
    for (const auto& r : rows) {
        out << csv_field(r.problem) << ',' << r.table << ',' << format_number(r.start) << ',' << to_string(r.method)
            << ',' << r.outcome << ',' << r.iterations << ',' << cell(r.final_x) << ','
            << (r.expected ? expected_label(*r.expected) : std::string()) << ',' << r.comparison << "\r\n";
    }
}

void write_bench_json(std::ostream& out, const std::vector<BenchRow>& rows) {
    json list = json::array();
    for (const auto& r : rows) {
        json expected = nullptr;
        if (r.expected) {
            if (const auto* c = std::get_if<IterationCount>(&*r.expected)) {
                expected = c->count;
            } else {
                expected = expected_label(*r.expected);
            }
        }
        list.push_back({{"problem", r.problem},
                        {"table", r.table},
                        {"start", r.start},
                        {"method", std::string(to_string(r.method))},
                        {"outcome", r.outcome},
                        {"iterations", r.iterations},
                        {"final_x", number_or_null(r.final_x)},
                        {"expected", expected},
                        {"comparison", r.comparison.empty() ? json(nullptr) : json(r.comparison)}});
    }
    out << list.dump(2) << '\n';
}

}  // namespace twopoint
