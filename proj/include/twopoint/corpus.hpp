#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "twopoint/expr.hpp"
#include "twopoint/solver.hpp"

namespace twopoint {

struct IterationCount {
    int count = 0;
    friend bool operator==(const IterationCount&, const IterationCount&) = default;
};
struct Oscillates {
    friend bool operator==(const Oscillates&, const Oscillates&) = default;
};
struct Diverges {
    friend bool operator==(const Diverges&, const Diverges&) = default;
};
struct Fails {
    friend bool operator==(const Fails&, const Fails&) = default;
};

/// One published table cell.
using ExpectedResult = std::variant<IterationCount, Oscillates, Diverges, Fails>;

std::string expected_label(const ExpectedResult& e);

using ExpectKey = std::pair<Method, double>;

/// Per-start caveats for table rows that cannot be taken at face value.
struct StartNote {
    bool start_uncertain = false;  // the start cell itself is a reconstruction
    bool root_uncertain = false;   // the printed root is probably not the one reached
    std::optional<double> root;    // root reached from this start when it differs from reference_root
    std::string note;

    friend bool operator==(const StartNote&, const StartNote&) = default;
};

struct Problem {
    std::string name;
    std::string source;  // expression text as written
    Expression expression;
    std::optional<double> reference_root;
    std::vector<double> starts;
    std::map<ExpectKey, ExpectedResult> expected;

    int table = 0;  // 1 or 2 for the published tables, 0 otherwise
    std::map<double, StartNote> notes;

    /// Root expected from this start: the note override, else reference_root.
    std::optional<double> root_for(double start) const;
    const StartNote* note_for(double start) const;
    std::optional<ExpectedResult> expected_for(Method m, double start) const;
};

/// Equality over the fields a problem file can express (name, expression,
/// root, starts, expected), ignoring table and notes.
bool same_definition(const Problem& a, const Problem& b);

/// Deterministic, order-stable built-in set: both published tables plus the
/// sin(x) offshoot demonstration.
const std::vector<Problem>& builtin_problems();

/// Lookup by name or by expression text (compared after parsing).
const Problem* find_builtin(std::string_view name_or_expr);

class ProblemFileError : public std::runtime_error {
public:
    ProblemFileError(std::optional<std::size_t> entry, std::string field, const std::string& message);

    std::optional<std::size_t> entry() const { return entry_; }
    const std::string& field() const { return field_; }

private:
    std::optional<std::size_t> entry_;
    std::string field_;
};

/// JSON array of {name, expr, root?, starts, expected?}; expected keys are
/// "method@start" with a positive count or "oscillates" | "diverges" | "fails".
std::vector<Problem> load_problems(const std::filesystem::path& path);
std::vector<Problem> parse_problems(std::string_view json_text);

}  // namespace twopoint
