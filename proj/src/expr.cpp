#include "twopoint/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

namespace twopoint {

struct Expression::Node {
    NodeKind kind = NodeKind::variable;
    double number = 0.0;
    Constant constant = Constant::pi;
    Function function = Function::sin;
    std::optional<Expression> a;
    std::optional<Expression> b;
};

namespace {

constexpr std::array<std::pair<Function, std::string_view>, 10> kFunctionNames{{
    {Function::sin, "sin"},
    {Function::cos, "cos"},
    {Function::tan, "tan"},
    {Function::exp, "exp"},
    {Function::ln, "ln"},
    {Function::log10, "log10"},
    {Function::atan, "atan"},
    {Function::sqrt, "sqrt"},
    {Function::cbrt, "cbrt"},
    {Function::abs, "abs"},
}};

bool is_binary(NodeKind kind) {
    switch (kind) {
        case NodeKind::add:
        case NodeKind::sub:
        case NodeKind::mul:
        case NodeKind::div:
        case NodeKind::pow:
            return true;
        default:
            return false;
    }
}

}  // namespace

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::literal: return "literal";
        case NodeKind::variable: return "variable";
        case NodeKind::constant: return "constant";
        case NodeKind::negate: return "negate";
        case NodeKind::add: return "+";
        case NodeKind::sub: return "-";
        case NodeKind::mul: return "*";
        case NodeKind::div: return "/";
        case NodeKind::pow: return "^";
        case NodeKind::call: return "call";
    }
    return "?";
}

std::string_view to_string(Constant c) { return c == Constant::pi ? "pi" : "e"; }

std::string_view to_string(Function f) {
    for (const auto& [id, name] : kFunctionNames) {
        if (id == f) return name;
    }
    return "?";
}

std::optional<Function> function_from_name(std::string_view name) {
    for (const auto& [id, fname] : kFunctionNames) {
        if (fname == name) return id;
    }
    return std::nullopt;
}

Expression::Expression() : Expression(variable()) {}

Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::literal(double value) {
    if (!std::isfinite(value) || std::signbit(value)) {
        throw std::invalid_argument("expression literal must be finite and non-negative");
    }
    Node n;
    n.kind = NodeKind::literal;
    n.number = value;
    return Expression(std::make_shared<const Node>(std::move(n)));
}

Expression Expression::variable() {
    static const auto shared = [] {
        Node n;
        n.kind = NodeKind::variable;
        return std::make_shared<const Node>(std::move(n));
    }();
    return Expression(shared);
}

Expression Expression::constant(Constant c) {
    Node n;
    n.kind = NodeKind::constant;
    n.constant = c;
    return Expression(std::make_shared<const Node>(std::move(n)));
}

Expression Expression::negate(Expression operand) {
    Node n;
    n.kind = NodeKind::negate;
    n.a = std::move(operand);
    return Expression(std::make_shared<const Node>(std::move(n)));
}

Expression Expression::binary(NodeKind kind, Expression lhs, Expression rhs) {
    if (!is_binary(kind)) throw std::invalid_argument("not a binary operator kind");
    Node n;
    n.kind = kind;
    n.a = std::move(lhs);
    n.b = std::move(rhs);
    return Expression(std::make_shared<const Node>(std::move(n)));
}

Expression Expression::call(Function f, Expression argument) {
    Node n;
    n.kind = NodeKind::call;
    n.function = f;
    n.a = std::move(argument);
    return Expression(std::make_shared<const Node>(std::move(n)));
}

NodeKind Expression::kind() const { return node().kind; }
double Expression::literal_value() const { return node().number; }
Constant Expression::constant_id() const { return node().constant; }
Function Expression::function_id() const { return node().function; }

const Expression& Expression::operand() const {
    if (!node().a || is_binary(node().kind)) throw std::logic_error("node has no single operand");
    return *node().a;
}

const Expression& Expression::lhs() const {
    if (!is_binary(node().kind)) throw std::logic_error("node is not binary");
    return *node().a;
}

const Expression& Expression::rhs() const {
    if (!is_binary(node().kind)) throw std::logic_error("node is not binary");
    return *node().b;
}

std::size_t Expression::node_count() const {
    std::size_t n = 1;
    if (node().a) n += node().a->node_count();
    if (node().b) n += node().b->node_count();
    return n;
}

bool operator==(const Expression& x, const Expression& y) {
    if (x.node_ == y.node_) return true;
    const auto& a = x.node();
    const auto& b = y.node();
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::literal: return a.number == b.number;
        case NodeKind::variable: return true;
        case NodeKind::constant: return a.constant == b.constant;
        case NodeKind::negate: return *a.a == *b.a;
        case NodeKind::call: return a.function == b.function && *a.a == *b.a;
        default: return *a.a == *b.a && *a.b == *b.b;
    }
}

ParseError::ParseError(Kind kind, std::size_t offset, std::string message,
                       std::vector<std::string> expected)
    : std::runtime_error("at offset " + std::to_string(offset) + ": " + message),
      kind_(kind),
      offset_(offset),
      expected_(std::move(expected)) {}

// ---------------------------------------------------------------------------
// Rendering

namespace {

// Binding strength for parenthesization: + - < * / < unary minus < ^ < atoms.
int precedence(const Expression& e) {
    switch (e.kind()) {
        case NodeKind::add:
        case NodeKind::sub: return 1;
        case NodeKind::mul:
        case NodeKind::div: return 2;
        case NodeKind::negate: return 3;
        case NodeKind::pow: return 4;
        default: return 5;
    }
}

void format_number(double v, std::string& out) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    out.append(buf.data(), end);
}

void render_into(const Expression& e, std::string& out);

void render_child(const Expression& child, bool parens, std::string& out) {
    if (parens) out.push_back('(');
    render_into(child, out);
    if (parens) out.push_back(')');
}

void render_into(const Expression& e, std::string& out) {
    switch (e.kind()) {
        case NodeKind::literal:
            format_number(e.literal_value(), out);
            return;
        case NodeKind::variable:
            out.push_back('x');
            return;
        case NodeKind::constant:
            out.append(to_string(e.constant_id()));
            return;
        case NodeKind::negate:
            out.push_back('-');
            render_child(e.operand(), precedence(e.operand()) < 3, out);
            return;
        case NodeKind::call:
            out.append(to_string(e.function_id()));
            render_child(e.operand(), true, out);
            return;
        case NodeKind::pow:
            render_child(e.lhs(), precedence(e.lhs()) <= 4, out);
            out.push_back('^');
            // The exponent may carry its own unary minus: 2^-x.
            render_child(e.rhs(), precedence(e.rhs()) < 4 && e.rhs().kind() != NodeKind::negate, out);
            return;
        default: {
            // left-associative + - * /
            const int p = precedence(e);
            render_child(e.lhs(), precedence(e.lhs()) < p, out);
            out.push_back(' ');
            out.append(to_string(e.kind()));
            out.push_back(' ');
            render_child(e.rhs(), precedence(e.rhs()) <= p, out);
            return;
        }
    }
}

}  // namespace

std::string render(const Expression& expr) {
    std::string out;
    render_into(expr, out);
    return out;
}

std::string DomainError::describe() const {
    std::string what;
    if (kind == NodeKind::call) {
        what = std::string(to_string(function));
    } else {
        what = std::string(to_string(kind));
    }
    std::string arg;
    format_number(argument, arg);
    return "domain error in " + what + " at argument " + arg;
}

}  // namespace twopoint
