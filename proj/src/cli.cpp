#include "twopoint/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "twopoint/bench.hpp"
#include "twopoint/corpus.hpp"
#include "twopoint/report.hpp"
#include "twopoint/solver.hpp"

namespace twopoint {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::string expr;
    std::string problem;
    std::string problems_file;
    std::string method = "twopoint";
    std::optional<double> x0;
    std::optional<double> x1;
    std::optional<double> root;
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::string seed = "perturb";
    std::optional<double> delta;
    std::string format;
    std::string out_path;
    bool verbose = false;
};

void add_config_flags(CLI::App& cmd, RunOptions& o) {
    cmd.add_option("--tol", o.tol, "stopping threshold on |x_k - x_{k-1}| + |y_k|");
    cmd.add_option("--max-iter", o.max_iter, "iteration cap");
    cmd.add_option("--seed", o.seed, "second-point seeding")->check(CLI::IsMember({"perturb", "guarded-newton"}));
    cmd.add_option("--delta", o.delta, "relative perturbation for seeding and stagnation nudges");
}

void add_selection_flags(CLI::App& cmd, RunOptions& o) {
    auto* e = cmd.add_option("--expr", o.expr, "expression in x");
    auto* p = cmd.add_option("--problem", o.problem, "built-in problem name (or expression text)");
    e->excludes(p);
    cmd.add_option("--problems", o.problems_file, "JSON problem file to look --problem up in");
    cmd.add_option("--method", o.method, "newton | secant | twopoint")
        ->check(CLI::IsMember({"newton", "secant", "twopoint"}));
    cmd.add_option("--x0", o.x0, "starting point (defaults to the problem's first start)");
    cmd.add_option("--x1", o.x1, "second point for secant / two-point");
    cmd.add_option("--root", o.root, "reference root for error columns");
    add_config_flags(cmd, o);
}

SolverConfig config_from(const RunOptions& o) {
    SolverConfig c;
    if (o.tol) c.tol = *o.tol;
    if (o.max_iter) c.max_iter = *o.max_iter;
    if (o.delta) c.delta_rel = *o.delta;
    c.seed = o.seed == "guarded-newton" ? SeedStrategy::guarded_newton : SeedStrategy::perturb;
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return c;
}

struct Selection {
    Expression expr;
    double x0 = 0.0;
    std::optional<double> root;
};

Selection select(const RunOptions& o, std::vector<Problem>& file_problems) {
    Selection s;
    const Problem* problem = nullptr;
    if (!o.problems_file.empty()) file_problems = load_problems(o.problems_file);
    if (!o.problem.empty()) {
        for (const auto& p : file_problems) {
            if (p.name == o.problem) problem = &p;
        }
        if (!problem) problem = find_builtin(o.problem);
        if (!problem) throw UsageError("unknown problem '" + o.problem + "'");
        s.expr = problem->expression;
    } else if (!o.expr.empty()) {
        s.expr = parse(o.expr);
    } else {
        throw UsageError("one of --expr or --problem is required");
    }

    if (o.x0) {
        s.x0 = *o.x0;
    } else if (problem) {
        s.x0 = problem->starts.front();
    } else {
        throw UsageError("--x0 is required with --expr");
    }
    if (o.root) {
        s.root = o.root;
    } else if (problem) {
        s.root = problem->root_for(s.x0);
    }
    return s;
}

Trace run_selected(const RunOptions& o, Selection& sel) {
    const SolverConfig config = config_from(o);
    const Method method = *method_from_name(o.method);
    if (o.x1 && *o.x1 == sel.x0) throw UsageError("--x1 must differ from --x0");
    return solve(sel.expr, method, sel.x0, config, o.x1);
}

int exit_for(const Trace& t) { return t.converged() ? kExitConverged : kExitNotConverged; }

std::string outcome_detail(const Outcome& o) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Converged>) {
                return "root " + format_number(v.root);
            } else if constexpr (std::is_same_v<T, Diverged> || std::is_same_v<T, MaxIterationsExceeded>) {
                return "last x " + format_number(v.last_x);
            } else if constexpr (std::is_same_v<T, Oscillating>) {
                return "period " + std::to_string(v.period);
            } else if constexpr (std::is_same_v<T, DomainFailure>) {
                return "iteration " + std::to_string(v.iteration) + ": " + v.detail;
            } else {
                return "iteration " + std::to_string(v.iteration);
            }
        },
        o);
}

void print_table(std::ostream& out, const Trace& t, const std::vector<OutputRow>& rows, bool verbose) {
    out << "method:     " << to_string(t.method) << '\n';
    out << "outcome:    " << outcome_label(t.outcome) << " (" << outcome_detail(t.outcome) << ")\n";
    if (const auto* c = std::get_if<Converged>(&t.outcome)) out << "root:       " << format_number(c->root) << '\n';
    out << "iterations: " << t.iterations() << '\n';
    if (!verbose) return;
    out << '\n'
        << std::setw(5) << "k" << std::setw(26) << "x" << std::setw(26) << "y" << std::setw(26) << "dy"
        << std::setw(26) << "r_weight" << '\n';
    auto cell = [](double v) { return std::isnan(v) ? std::string("-") : format_number(v); };
    for (const auto& r : rows) {
        out << std::setw(5) << r.k << std::setw(26) << cell(r.x) << std::setw(26) << cell(r.y) << std::setw(26)
            << cell(r.dy) << std::setw(26) << cell(r.r_weight) << '\n';
    }
}

int cmd_solve(const RunOptions& o, std::ostream& out) {
    std::vector<Problem> file_problems;
    Selection sel = select(o, file_problems);
    const Trace t = run_selected(o, sel);
    const auto rows = output_rows(t, sel.root);
    const std::string format = o.format.empty() ? "table" : o.format;
    if (format == "json") {
        if (o.verbose) {
            write_trace_json(out, t, rows);
        } else {
            write_trace_json(out, t, {});
        }
    } else if (format == "csv") {
        out << "method,outcome,iterations,final_x\r\n"
            << to_string(t.method) << ',' << outcome_label(t.outcome) << ',' << t.iterations() << ','
            << format_number(t.final_x()) << "\r\n";
        if (o.verbose) write_trace_csv(out, rows);
    } else {
        print_table(out, t, rows, o.verbose);
    }
    return exit_for(t);
}

// Writes through `write` to --out (or out when absent). Returns false on I/O failure.
template <class Fn>
bool emit(const std::string& path, std::ostream& out, std::ostream& err, Fn&& write) {
    if (path.empty() || path == "-") {
        write(out);
        return static_cast<bool>(out);
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "error: cannot open " << path << " for writing\n";
        return false;
    }
    write(file);
    file.flush();
    if (!file) {
        err << "error: failed writing " << path << '\n';
        return false;
    }
    return true;
}

int cmd_trace(const RunOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<Problem> file_problems;
    Selection sel = select(o, file_problems);
    const Trace t = run_selected(o, sel);
    const auto rows = output_rows(t, sel.root);
    const bool json = o.format == "json";
    if (!emit(o.out_path, out, err, [&](std::ostream& s) {
            if (json) {
                write_trace_json(s, t, rows);
            } else {
                write_trace_csv(s, rows);
            }
        })) {
        return kExitUsage;
    }
    return exit_for(t);
}

int cmd_bench(const RunOptions& o, const std::string& table, bool serial, std::ostream& out, std::ostream& err) {
    const SolverConfig config = config_from(o);
    std::vector<Problem> file_problems;
    TableSelection selection = TableSelection::all;
    if (table == "1") selection = TableSelection::table1;
    if (table == "2") selection = TableSelection::table2;

    std::vector<BenchJob> jobs;
    if (!o.problems_file.empty()) {
        file_problems = load_problems(o.problems_file);
        jobs = bench_jobs(TableSelection::all, file_problems);
    } else {
        jobs = bench_jobs(selection);
    }
    const auto rows = serial ? run_bench_serial(jobs, config) : run_bench_parallel(jobs, config);
    const bool json = o.format == "json";
    if (!emit(o.out_path, out, err, [&](std::ostream& s) {
            if (json) {
                write_bench_json(s, rows);
            } else {
                write_bench_csv(s, rows);
            }
        })) {
        return kExitUsage;
    }
    return kExitConverged;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-point Newton root finding with Newton and secant baselines", "twopoint"};
    app.require_subcommand(1);

    RunOptions solve_opts;
    auto* solve = app.add_subcommand("solve", "solve one equation and report the outcome");
    add_selection_flags(*solve, solve_opts);
    solve->add_option("--format", solve_opts.format, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    solve->add_flag("--verbose,-v", solve_opts.verbose, "include the iteration trace");

    RunOptions trace_opts;
    auto* trace = app.add_subcommand("trace", "per-iteration rows, for plotting");
    add_selection_flags(*trace, trace_opts);
    trace->add_option("--out", trace_opts.out_path, "output file (default: standard output)");
    trace->add_option("--format", trace_opts.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    RunOptions bench_opts;
    std::string table = "all";
    bool serial = false;
    auto* bench = app.add_subcommand("bench", "run all three methods over the published tables");
    bench->add_option("--table", table, "1 | 2 | all")->check(CLI::IsMember({"1", "2", "all"}));
    bench->add_option("--out", bench_opts.out_path, "output file (default: standard output)");
    bench->add_option("--format", bench_opts.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--problems", bench_opts.problems_file, "JSON problem file to run instead of the tables");
    bench->add_flag("--serial", serial, "use the single-threaded runner");
    add_config_flags(*bench, bench_opts);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitConverged;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*solve) return cmd_solve(solve_opts, out);
        if (*trace) return cmd_trace(trace_opts, out, err);
        if (*bench) return cmd_bench(bench_opts, table, serial, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
    } catch (const ProblemFileError& e) {
        err << "problem file error: " << e.what() << '\n';
    } catch (const SeedingError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNotConverged;
    }
    return kExitUsage;
}

}  // namespace twopoint
