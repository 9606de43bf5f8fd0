#include <cmath>
#include <numbers>

#include "twopoint/expr.hpp"

namespace twopoint {

namespace {

DomainError domain_error(NodeKind kind, double argument) {
    DomainError e;
    e.kind = kind;
    e.argument = argument;
    return e;
}

DomainError function_error(Function f, double argument) {
    DomainError e;
    e.kind = NodeKind::call;
    e.function = f;
    e.argument = argument;
    return e;
}

bool is_integer(double v) { return std::nearbyint(v) == v; }

EvalResult apply_function(Function f, Dual a) {
    const double v = a.value;
    switch (f) {
        case Function::sin:
            return Dual{std::sin(v), chain(std::cos(v), a.deriv)};
        case Function::cos:
            return Dual{std::cos(v), chain(-std::sin(v), a.deriv)};
        case Function::tan: {
            const double t = std::tan(v);
            return Dual{t, chain(1.0 + t * t, a.deriv)};
        }
        case Function::exp: {
            const double ev = std::exp(v);
            return Dual{ev, chain(ev, a.deriv)};
        }
        case Function::ln:
            if (v <= 0.0) return function_error(f, v);
            return Dual{std::log(v), chain(1.0 / v, a.deriv)};
        case Function::log10:
            if (v <= 0.0) return function_error(f, v);
            return Dual{std::log10(v), chain(1.0 / (v * std::numbers::ln10), a.deriv)};
        case Function::atan:
            return Dual{std::atan(v), chain(1.0 / (1.0 + v * v), a.deriv)};
        case Function::sqrt: {
            if (v < 0.0) return function_error(f, v);
            const double s = std::sqrt(v);
            return Dual{s, chain(1.0 / (2.0 * s), a.deriv)};
        }
        case Function::cbrt: {
            const double c = std::cbrt(v);
            return Dual{c, chain(1.0 / (3.0 * c * c), a.deriv)};
        }
        case Function::abs: {
            const double sign = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
            return Dual{std::fabs(v), chain(sign, a.deriv)};
        }
    }
    return function_error(f, v);
}

EvalResult power(Dual base, Dual exponent) {
    const double b = base.value;
    const double p = exponent.value;
    if (b < 0.0 && !is_integer(p)) return domain_error(NodeKind::pow, b);
    const double v = std::pow(b, p);
    double d = 0.0;
    if (exponent.deriv == 0.0) {
        if (base.deriv != 0.0 && p != 0.0) d = p * std::pow(b, p - 1.0) * base.deriv;
    } else {
        // d/dx b^p = b^p (p' ln b + p b'/b) needs ln b.
        if (b <= 0.0) return domain_error(NodeKind::pow, b);
        d = v * (exponent.deriv * std::log(b) + p * base.deriv / b);
    }
    return Dual{v, d};
}

EvalResult eval_node(const Expression& e, double x) {
    switch (e.kind()) {
        case NodeKind::literal:
            return Dual::constant(e.literal_value());
        case NodeKind::variable:
            return Dual::variable(x);
        case NodeKind::constant:
            return Dual::constant(e.constant_id() == Constant::pi ? std::numbers::pi : std::numbers::e);
        case NodeKind::negate: {
            EvalResult a = eval_node(e.operand(), x);
            if (!a) return a;
            return -a.dual();
        }
        case NodeKind::call: {
            EvalResult a = eval_node(e.operand(), x);
            if (!a) return a;
            EvalResult r = apply_function(e.function_id(), a.dual());
            if (r && !std::isfinite(r.dual().value)) return function_error(e.function_id(), a.dual().value);
            return r;
        }
        default:
            break;
    }

    EvalResult lhs = eval_node(e.lhs(), x);
    if (!lhs) return lhs;
    EvalResult rhs = eval_node(e.rhs(), x);
    if (!rhs) return rhs;
    const Dual a = lhs.dual();
    const Dual b = rhs.dual();

    EvalResult out = Dual{};
    switch (e.kind()) {
        case NodeKind::add: out = a + b; break;
        case NodeKind::sub: out = a - b; break;
        case NodeKind::mul: out = a * b; break;
        case NodeKind::div:
            if (b.value == 0.0) return domain_error(NodeKind::div, b.value);
            out = a / b;
            break;
        case NodeKind::pow:
            out = power(a, b);
            if (!out) return out;
            break;
        default:
            break;
    }
    if (!std::isfinite(out.dual().value)) return domain_error(e.kind(), out.dual().value);
    return out;
}

}  // namespace

EvalResult eval_dual(const Expression& expr, double x) {
    if (!std::isfinite(x)) return domain_error(NodeKind::variable, x);
    return eval_node(expr, x);
}

}  // namespace twopoint
