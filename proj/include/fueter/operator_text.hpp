#ifndef FUETER_OPERATOR_TEXT_HPP
#define FUETER_OPERATOR_TEXT_HPP

#include <sstream>
#include <string>
#include <vector>

#include "fueter/operators.hpp"

namespace fueter {

namespace detail {

inline std::string fmt_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

/** Formats a complex multiplier in front of a symbol: "" for 1,
 * "−" for -1, "i"/"−i" for the imaginary units, "(a+bi)" otherwise. */
inline std::string fmt_coeff(const Complex& c) {
    if (c == Complex(1, 0)) return "";
    if (c == Complex(-1, 0)) return "−";
    if (c == Complex(0, 1)) return "i";
    if (c == Complex(0, -1)) return "−i";
    if (c.imag() == 0) return fmt_number(c.real());
    if (c.real() == 0) return fmt_number(c.imag()) + "i";
    std::ostringstream os;
    os << "(" << c.real() << (c.imag() >= 0 ? "+" : "") << c.imag() << "i)";
    return os.str();
}

/** Joins (coefficient, symbol) terms with signs pulled out of real
 * negative coefficients. */
inline std::string join_terms(const std::vector<std::pair<Complex, std::string>>& terms) {
    std::string out;
    bool first = true;
    for (const auto& [c, sym] : terms) {
        if (c == Complex(0, 0)) continue;
        Complex v = c;
        std::string sep;
        const bool negative_real = v.imag() == 0 && v.real() < 0;
        const bool negative_imag = v.real() == 0 && v.imag() < 0;
        if (negative_real || negative_imag) {
            sep = first ? "−" : " − ";
            v = -v;
        } else if (!first) {
            sep = " + ";
        }
        out += sep + fmt_coeff(v) + sym;
        first = false;
    }
    return out.empty() ? "0" : out;
}

} // namespace detail

/** First-order entry in x-notation, e.g. "−∂x2 − i∂x3". */
inline std::string to_string_x(const CoeffVector& cv) {
    std::vector<std::pair<Complex, std::string>> terms;
    for (int m = 0; m < 4; ++m) terms.emplace_back(cv[m], "∂x" + std::to_string(m));
    return detail::join_terms(terms);
}

/** First-order entry in z-notation when it is a signed multiple of one
 * of the four z-derivatives, otherwise falls back to x-notation. */
inline std::string to_string_z(const CoeffVector& cv) {
    static const std::pair<CoeffVector, std::string> table[] = {
        {dz0(), "∂z0"}, {dz0b(), "∂z̄0"}, {dz1(), "∂z1"}, {dz1b(), "∂z̄1"}};
    if (is_zero(cv)) return "0";
    for (const auto& [form, name] : table) {
        if (cv == form) return name;
        if (cv == negate(form)) return "−" + name;
    }
    return to_string_x(cv);
}

/** Second-order entry expanded over {Δ, Δ1, Δ2, L, L̄} when the
 * coefficients decompose exactly, otherwise a raw ∂xm∂xn sum. */
inline std::string to_string_z(const QuadForm& q) {
    if (q.is_zero()) return "0";
    // q = a1*Delta1 + a2*Delta2 + b*L + g*Lbar when it lies in the span.
    const Complex a1 = q.coeff(0, 0);
    const Complex a2 = q.coeff(2, 2);
    const Complex b = (q.coeff(0, 2) - kI * q.coeff(0, 3)) / 2.0;
    const Complex g = (q.coeff(0, 2) + kI * q.coeff(0, 3)) / 2.0;
    QuadForm probe = a1 * laplacian_z0() + a2 * laplacian_z1() + b * coupling_l() +
                     g * coupling_l().conjugated();
    if (probe == q) {
        Complex cd(0, 0), c1 = a1, c2 = a2;
        if (a1 != Complex(0, 0) && a2 != Complex(0, 0)) {
            cd = std::abs(a1) <= std::abs(a2) ? a1 : a2;
            c1 = a1 - cd;
            c2 = a2 - cd;
        }
        return detail::join_terms({{cd, "Δ"}, {c1, "Δ1"}, {c2, "Δ2"}, {b, "L"}, {g, "L̄"}});
    }
    std::vector<std::pair<Complex, std::string>> terms;
    int idx = 0;
    for (int m = 0; m < 4; ++m)
        for (int n = m; n < 4; ++n, ++idx)
            terms.emplace_back(q.c[idx], "∂x" + std::to_string(m) + "∂x" + std::to_string(n));
    return detail::join_terms(terms);
}

template <class Op>
std::string to_string_rows(const Op& op) {
    std::string out;
    for (int i = 0; i < op.rows; ++i) {
        out += "(";
        for (int j = 0; j < op.cols; ++j) {
            if (j) out += ", ";
            out += to_string_z(op.at(i, j));
        }
        out += ")\n";
    }
    return out;
}

/** First-order rows rendered in x-notation. */
inline std::string to_string_rows_x(const FirstOrderOperator& op) {
    std::string out;
    for (int i = 0; i < op.rows; ++i) {
        out += "(";
        for (int j = 0; j < op.cols; ++j) {
            if (j) out += ", ";
            out += to_string_x(op.at(i, j));
        }
        out += ")\n";
    }
    return out;
}

} // namespace fueter

#endif // FUETER_OPERATOR_TEXT_HPP
