#include <cctype>
#include <charconv>
#include <system_error>

#include "twopoint/expr.hpp"

namespace twopoint {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

const std::vector<std::string> kOperandStart{"number", "identifier", "'('", "'-'"};

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expression parse_all() {
        Expression e = parse_sum();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'",
                 {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected,
                           ParseError::Kind kind = ParseError::Kind::syntax) const {
        throw ParseError(kind, pos_, message, std::move(expected));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expression parse_sum() {
        Expression lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = Expression::binary(NodeKind::add, std::move(lhs), parse_product());
            } else if (accept('-')) {
                lhs = Expression::binary(NodeKind::sub, std::move(lhs), parse_product());
            } else {
                return lhs;
            }
        }
    }

    Expression parse_product() {
        Expression lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = Expression::binary(NodeKind::mul, std::move(lhs), parse_unary());
            } else if (accept('/')) {
                lhs = Expression::binary(NodeKind::div, std::move(lhs), parse_unary());
            } else {
                return lhs;
            }
        }
    }

    Expression parse_unary() {
        if (accept('-')) return Expression::negate(parse_unary());
        return parse_power();
    }

    Expression parse_power() {
        Expression base = parse_primary();
        if (accept('^')) return Expression::binary(NodeKind::pow, std::move(base), parse_exponent());
        return base;
    }

    Expression parse_exponent() {
        if (accept('-')) return Expression::negate(parse_exponent());
        return parse_power();
    }

    Expression parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input", kOperandStart);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expression inner = parse_sum();
            if (!accept(')')) fail("missing ')'", {"')'"});
            return inner;
        }
        if (is_digit(c) || c == '.') return parse_number();
        if (is_ident_start(c)) return parse_identifier();
        fail("unexpected '" + std::string(1, c) + "'", kOperandStart);
    }

    Expression parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && is_digit(text_[pos_])) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) {
            pos_ = start;
            fail("malformed number", {"digit"}, ParseError::Kind::bad_number);
        }
        // An exponent needs at least one digit; otherwise the 'e' is left for the
        // identifier rule (and "2e" becomes a syntax error there).
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t look = pos_ + 1;
            if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
            if (look < text_.size() && is_digit(text_[look])) {
                pos_ = look;
                digits();
            }
        }
        double value = 0.0;
        const char* first = text_.data() + start;
        const char* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last) {
            pos_ = start;
            fail("numeric literal out of range", {"finite number"}, ParseError::Kind::bad_number);
        }
        return Expression::literal(value);
    }

    Expression parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x") return Expression::variable();
        if (name == "pi") return Expression::constant(Constant::pi);
        if (name == "e") return Expression::constant(Constant::e);
        if (auto f = function_from_name(name)) {
            if (!accept('(')) fail("expected '(' after " + std::string(name), {"'('"});
            Expression arg = parse_sum();
            if (!accept(')')) fail("missing ')'", {"')'"});
            return Expression::call(*f, std::move(arg));
        }
        pos_ = start;
        fail("unknown identifier '" + std::string(name) + "'",
             {"x", "pi", "e", "function name"}, ParseError::Kind::unknown_identifier);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace twopoint
