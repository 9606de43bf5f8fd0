#include "twopoint/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace twopoint {

namespace {

using json = nlohmann::json;

struct Row {
    double start;
    ExpectedResult secant;
    ExpectedResult newton;
    ExpectedResult two_point;
};

constexpr Oscillates kOsc{};
constexpr Diverges kDiv{};
constexpr Fails kFails{};
constexpr IterationCount iters(int c) { return IterationCount{c}; }

Problem make(std::string name, int table, std::string source, std::optional<double> root,
             const std::vector<Row>& rows) {
    Problem p;
    p.name = std::move(name);
    p.table = table;
    p.expression = parse(source);
    p.source = std::move(source);
    p.reference_root = root;
    for (const auto& row : rows) {
        p.starts.push_back(row.start);
        p.expected.emplace(ExpectKey{Method::secant, row.start}, row.secant);
        p.expected.emplace(ExpectKey{Method::newton, row.start}, row.newton);
        p.expected.emplace(ExpectKey{Method::two_point, row.start}, row.two_point);
    }
    return p;
}

std::vector<Problem> build_builtins() {
    std::vector<Problem> out;

    // Table 1. Columns: secant, Newton, two-point.
    {
        Problem p = make("t1-sin-squared", 1, "sin(x)^2 - x^2 + 1", -1.404491648215340,
                         {{2.0, iters(10), iters(8), iters(6)},
                          {1.0, iters(9), iters(6), iters(5)},
                          {-1.0, iters(9), iters(7), iters(5)},
                          {-3.0, iters(9), iters(7), iters(6)}});
        p.notes[2.0] = {true, false, 1.404491648215340,
                        "start cell blank in the source table; 2.0 is a placeholder"};
        p.notes[1.0] = {false, false, 1.404491648215340,
                        "even function: a positive start reaches the positive root"};
        out.push_back(std::move(p));
    }
    {
        Problem p = make("t1-multiple-root", 1, "(x - 2)*(x + 2)^4", -2.0,
                         {{-3.0, iters(168), iters(119), iters(83)}, {1.4, iters(116), iters(81), iters(60)}});
        p.notes[1.4] = {false, true, std::nullopt, "printed root -2; 1.4 lies in the basin of the simple root 2"};
        out.push_back(std::move(p));
    }
    out.push_back(make("t1-sextic", 1, "(x - 1)^6 - 1", 2.0,
                       {{1.5, iters(25), iters(17), iters(8)}, {2.5, iters(12), iters(8), iters(6)}, {3.5, iters(16), iters(11), iters(8)}}));
    out.push_back(make("t1-sin-exp-log", 1, "sin(x)*exp(x) + ln(x^2 + 1)", -0.603231971557215,
                       {{-0.8, iters(8), iters(7), iters(5)}, {-0.65, iters(8), iters(5), iters(4)}}));
    out.push_back(make("t1-exp-quadratic", 1, "exp(x^2 + 7*x - 30) - 1", 3.0,
                       {{4.0, iters(29), iters(20), iters(14)}, {4.5, iters(39), iters(28), iters(18)}}));
    out.push_back(make("t1-x-minus-3ln", 1, "x - 3*ln(x)", 1.857183860207840,
                       {{2.0, iters(8), iters(5), iters(4)}, {0.5, iters(11), iters(8), iters(5)}}));

    // Table 2.
    out.push_back(make("t2-quartic", 2, "-x^4 + 3*x^2 + 2", 1.887207676120680,
                       {{1.0, iters(11), kOsc, iters(7)}, {0.5, iters(23), kOsc, iters(6)}}));
    out.push_back(make("t2-log10", 2, "log10(x)", 1.0, {{3.0, kFails, kFails, iters(5)}}));
    out.push_back(make("t2-atan", 2, "atan(x)", 0.0, {{3.0, kDiv, kDiv, iters(6)}, {-3.0, kDiv, kDiv, iters(6)}}));
    out.push_back(make("t2-quintic", 2, "x^5 - x + 1", -1.167303978261420,
                       {{2.0, kOsc, kOsc, iters(12)}, {3.0, iters(14), kOsc, iters(15)}}));
    out.push_back(make("t2-cubic", 2, "0.5*x^3 - 6*x^2 + 21.5*x - 22", 4.0,
                       {{3.0, iters(10), kOsc, iters(7)}, {5.0, iters(8), kOsc, iters(6)}}));
    out.push_back(make("t2-cbrt", 2, "cbrt(x)", 0.0, {{1.0, kOsc, kDiv, iters(101)}, {-1.0, kOsc, kDiv, iters(101)}}));
    {
        Problem p = make("t2-gauss", 2, "10*x*exp(-x^2) - 1", 1.679630610428450,
                         {{3.0, kDiv, kDiv, iters(8)}, {-1.0, kDiv, kDiv, iters(11)}});
        p.notes[-1.0] = {false, false, 0.101025848315685, "second root, paired with this start by row order"};
        out.push_back(std::move(p));
    }

    // Offshoot demonstration: Newton from near pi/2 lands near 32 pi.
    {
        Problem p;
        p.name = "demo-sin-offshoot";
        p.source = "sin(x)";
        p.expression = parse(p.source);
        p.reference_root = 0.0;
        p.starts = {1.58079633};
        out.push_back(std::move(p));
    }
    return out;
}

double parse_start_key(std::string_view text, std::size_t entry, const std::string& key) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ProblemFileError(entry, "expected", "bad start in key '" + key + "'");
    }
    return v;
}

ExpectedResult parse_expected_value(const json& v, std::size_t entry, const std::string& key) {
    if (v.is_number_integer() || v.is_number_unsigned()) {
        const auto c = v.get<long long>();
        if (c <= 0) throw ProblemFileError(entry, "expected", "count for '" + key + "' must be positive");
        return IterationCount{static_cast<int>(c)};
    }
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "oscillates") return Oscillates{};
        if (s == "diverges") return Diverges{};
        if (s == "fails") return Fails{};
    }
    throw ProblemFileError(entry, "expected",
                           "value for '" + key + "' must be a positive integer or oscillates|diverges|fails");
}

Problem parse_entry(const json& j, std::size_t i) {
    if (!j.is_object()) throw ProblemFileError(i, "", "entry must be an object");
    for (const auto& [key, _] : j.items()) {
        if (key != "name" && key != "expr" && key != "root" && key != "starts" && key != "expected") {
            throw ProblemFileError(i, key, "unknown field");
        }
    }
    Problem p;
    if (!j.contains("name") || !j["name"].is_string()) throw ProblemFileError(i, "name", "required string");
    p.name = j["name"].get<std::string>();

    if (!j.contains("expr") || !j["expr"].is_string()) throw ProblemFileError(i, "expr", "required string");
    p.source = j["expr"].get<std::string>();
    try {
        p.expression = parse(p.source);
    } catch (const ParseError& e) {
        throw ProblemFileError(i, "expr", e.what());
    }

    if (j.contains("root")) {
        if (!j["root"].is_number()) throw ProblemFileError(i, "root", "must be a number");
        p.reference_root = j["root"].get<double>();
    }

    if (!j.contains("starts") || !j["starts"].is_array() || j["starts"].empty()) {
        throw ProblemFileError(i, "starts", "required non-empty array of numbers");
    }
    for (const auto& s : j["starts"]) {
        if (!s.is_number()) throw ProblemFileError(i, "starts", "starts must be numbers");
        const double x0 = s.get<double>();
        EvalResult e = eval_dual(p.expression, x0);
        if (!e) throw ProblemFileError(i, "starts", "start outside the domain: " + e.error().describe());
        p.starts.push_back(x0);
    }

    if (j.contains("expected")) {
        const auto& ex = j["expected"];
        if (!ex.is_object()) throw ProblemFileError(i, "expected", "must be an object");
        for (const auto& [key, value] : ex.items()) {
            const auto at = key.find('@');
            if (at == std::string::npos) throw ProblemFileError(i, "expected", "key '" + key + "' is not method@start");
            const auto method = method_from_name(std::string_view(key).substr(0, at));
            if (!method) throw ProblemFileError(i, "expected", "unknown method in key '" + key + "'");
            const double start = parse_start_key(std::string_view(key).substr(at + 1), i, key);
            if (std::find(p.starts.begin(), p.starts.end(), start) == p.starts.end()) {
                throw ProblemFileError(i, "expected", "key '" + key + "' names a start not in starts");
            }
            p.expected[{*method, start}] = parse_expected_value(value, i, key);
        }
    }
    return p;
}

}  // namespace

std::string expected_label(const ExpectedResult& e) {
    if (const auto* c = std::get_if<IterationCount>(&e)) return std::to_string(c->count);
    if (std::holds_alternative<Oscillates>(e)) return "oscillates";
    if (std::holds_alternative<Diverges>(e)) return "diverges";
    return "fails";
}

std::optional<double> Problem::root_for(double start) const {
    if (const auto* n = note_for(start); n && n->root) return n->root;
    return reference_root;
}

const StartNote* Problem::note_for(double start) const {
    auto it = notes.find(start);
    return it == notes.end() ? nullptr : &it->second;
}

std::optional<ExpectedResult> Problem::expected_for(Method m, double start) const {
    auto it = expected.find({m, start});
    if (it == expected.end()) return std::nullopt;
    return it->second;
}

bool same_definition(const Problem& a, const Problem& b) {
    return a.name == b.name && a.expression == b.expression && a.reference_root == b.reference_root &&
           a.starts == b.starts && a.expected == b.expected;
}

const std::vector<Problem>& builtin_problems() {
    static const std::vector<Problem> problems = build_builtins();
    return problems;
}

const Problem* find_builtin(std::string_view name_or_expr) {
    const auto& all = builtin_problems();
    for (const auto& p : all) {
        if (p.name == name_or_expr) return &p;
    }
    try {
        const Expression e = parse(name_or_expr);
        for (const auto& p : all) {
            if (p.expression == e) return &p;
        }
    } catch (const ParseError&) {
    }
    return nullptr;
}

ProblemFileError::ProblemFileError(std::optional<std::size_t> entry, std::string field, const std::string& message)
    : std::runtime_error((entry ? "entry " + std::to_string(*entry) : std::string("problem file")) +
                         (field.empty() ? std::string() : ", field \"" + field + "\"") + ": " + message),
      entry_(entry),
      field_(std::move(field)) {}

std::vector<Problem> parse_problems(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ProblemFileError(std::nullopt, "", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ProblemFileError(std::nullopt, "", "top level must be an array");
    std::vector<Problem> out;
    out.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(parse_entry(doc[i], i));
    return out;
}

std::vector<Problem> load_problems(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ProblemFileError(std::nullopt, "", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problems(buf.str());
}

}  // namespace twopoint
