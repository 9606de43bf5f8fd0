#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twopoint/dual.hpp"

namespace twopoint {

enum class NodeKind { literal, variable, constant, negate, add, sub, mul, div, pow, call };

enum class Constant { pi, e };

enum class Function { sin, cos, tan, exp, ln, log10, atan, sqrt, cbrt, abs };

std::string_view to_string(NodeKind kind);
std::string_view to_string(Constant c);
std::string_view to_string(Function f);
std::optional<Function> function_from_name(std::string_view name);

/// Immutable parse tree of a real function of the single variable x.
///
/// Nodes are shared, never mutated, so copies are cheap and an Expression can
/// be evaluated from any number of threads at once. Equality is structural.
class Expression {
public:
    /// The variable x.
    Expression();

    /// Non-negative finite literal. Negative values are written as negate(literal).
    static Expression literal(double value);
    static Expression variable();
    static Expression constant(Constant c);
    static Expression negate(Expression operand);
    /// kind must be one of add, sub, mul, div, pow.
    static Expression binary(NodeKind kind, Expression lhs, Expression rhs);
    static Expression call(Function f, Expression argument);

    NodeKind kind() const;
    double literal_value() const;     // literal only
    Constant constant_id() const;     // constant only
    Function function_id() const;     // call only
    const Expression& operand() const;  // negate, call
    const Expression& lhs() const;      // binary
    const Expression& rhs() const;      // binary

    std::size_t node_count() const;

    friend bool operator==(const Expression& a, const Expression& b);

private:
    struct Node;
    explicit Expression(std::shared_ptr<const Node> node);
    const Node& node() const { return *node_; }

    std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { syntax, unknown_identifier, bad_number };

    ParseError(Kind kind, std::size_t offset, std::string message, std::vector<std::string> expected);

    Kind kind() const { return kind_; }
    /// Byte offset into the input where the problem was detected.
    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    Kind kind_;
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Grammar (loosest to tightest): + -, * /, unary minus, ^ (right-associative).
/// The right operand of ^ may itself carry a unary minus, as in 2^-x.
Expression parse(std::string_view text);

/// Canonical text: minimal parentheses, binary + - * / surrounded by single
/// spaces, ^ unspaced, literals in shortest round-trip decimal form.
std::string render(const Expression& expr);

struct DomainError {
    NodeKind kind = NodeKind::literal;
    Function function = Function::sin;  // meaningful when kind == call
    double argument = 0.0;

    std::string describe() const;
};

class EvalResult {
public:
    EvalResult(Dual d) : state_(d) {}
    EvalResult(DomainError e) : state_(e) {}

    bool ok() const { return std::holds_alternative<Dual>(state_); }
    explicit operator bool() const { return ok(); }
    const Dual& dual() const { return std::get<Dual>(state_); }
    const DomainError& error() const { return std::get<DomainError>(state_); }

private:
    std::variant<Dual, DomainError> state_;
};

/// Value and derivative at x. Any non-finite or undefined *value* is a
/// DomainError; a non-finite derivative (cbrt or sqrt at 0) is returned as is.
EvalResult eval_dual(const Expression& expr, double x);

}  // namespace twopoint
