#pragma once

#include <cmath>

namespace twopoint {

// Value and first derivative with respect to x, propagated through arithmetic
// (forward-mode differentiation).
struct Dual {
    double value = 0.0;
    double deriv = 0.0;

    static constexpr Dual constant(double v) { return {v, 0.0}; }
    static constexpr Dual variable(double v) { return {v, 1.0}; }

    friend constexpr bool operator==(const Dual&, const Dual&) = default;
};

constexpr Dual operator+(Dual a, Dual b) { return {a.value + b.value, a.deriv + b.deriv}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.value - b.value, a.deriv - b.deriv}; }
constexpr Dual operator-(Dual a) { return {-a.value, -a.deriv}; }
constexpr Dual operator*(Dual a, Dual b) {
    return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
}
constexpr Dual operator/(Dual a, Dual b) {
    return {a.value / b.value, (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
}

// Chain rule f(g(x))' = f'(g) * g'. A constant inner argument keeps a zero
// derivative even when f' is infinite at that point.
constexpr double chain(double outer_deriv, double inner_deriv) {
    return inner_deriv == 0.0 ? 0.0 : outer_deriv * inner_deriv;
}

}  // namespace twopoint
