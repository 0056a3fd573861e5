#ifndef FUETER_OPERATORS_HPP
#define FUETER_OPERATORS_HPP

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fueter/conventions.hpp"
#include "fueter/errors.hpp"

namespace fueter {

using SymbolMatrix = Eigen::MatrixXcd;
using Vec4 = Eigen::Vector4d;
using CVec4 = std::array<Complex, 4>;

/** Homogeneous degree-2 form sum_{m<=n} c_{mn} dx_m dx_n, stored as the ten
 * coefficients of the unordered monomials. Products of first-order forms
 * with Gaussian-integer coefficients stay exactly representable. */
struct QuadForm {
    std::array<Complex, 10> c{};

    static int index(int m, int n) {
        if (m > n) std::swap(m, n);
        // (0,0) (0,1) (0,2) (0,3) (1,1) (1,2) (1,3) (2,2) (2,3) (3,3)
        static constexpr int base[4] = {0, 4, 7, 9};
        return base[m] + (n - m);
    }

    Complex coeff(int m, int n) const { return c[index(m, n)]; }

    /** Accumulates the product (sum a_m dx_m)(sum b_n dx_n). */
    void add_product(const CoeffVector& a, const CoeffVector& b) {
        for (int m = 0; m < 4; ++m) {
            if (a[m] == Complex(0, 0)) continue;
            for (int n = 0; n < 4; ++n) {
                if (b[n] == Complex(0, 0)) continue;
                c[index(m, n)] += a[m] * b[n];
            }
        }
    }

    /** Value after the substitution dx_m -> w_m. */
    Complex eval(const CVec4& w) const {
        Complex v(0, 0);
        int idx = 0;
        for (int m = 0; m < 4; ++m)
            for (int n = m; n < 4; ++n, ++idx)
                if (c[idx] != Complex(0, 0)) v += c[idx] * w[m] * w[n];
        return v;
    }

    bool is_zero() const {
        for (const auto& x : c)
            if (x != Complex(0, 0)) return false;
        return true;
    }

    QuadForm conjugated() const {
        QuadForm r;
        for (int i = 0; i < 10; ++i) r.c[i] = std::conj(c[i]);
        return r;
    }

    QuadForm& operator+=(const QuadForm& o) {
        for (int i = 0; i < 10; ++i) c[i] += o.c[i];
        return *this;
    }
    QuadForm& operator-=(const QuadForm& o) {
        for (int i = 0; i < 10; ++i) c[i] -= o.c[i];
        return *this;
    }
    friend QuadForm operator+(QuadForm a, const QuadForm& b) { return a += b; }
    friend QuadForm operator-(QuadForm a, const QuadForm& b) { return a -= b; }
    friend QuadForm operator*(const Complex& s, QuadForm a) {
        for (auto& x : a.c) x *= s;
        return a;
    }
    friend bool operator==(const QuadForm& a, const QuadForm& b) { return a.c == b.c; }
};

/** Product of two first-order forms as a QuadForm. */
inline QuadForm form_product(const CoeffVector& a, const CoeffVector& b) {
    QuadForm q;
    q.add_product(a, b);
    return q;
}

// Named second-order forms: the Laplacian and its z-plane pieces.
inline QuadForm laplacian() { return form_product(dz0(), dz0b()) + form_product(dz1(), dz1b()); }
inline QuadForm laplacian_z0() { return form_product(dz0(), dz0b()); }  // dx0^2 + dx1^2
inline QuadForm laplacian_z1() { return form_product(dz1(), dz1b()); }  // dx2^2 + dx3^2
/** The off-diagonal coupling (dx0 + i dx1)(dx2 + i dx3). Both printed
 * variants of this entry in the usual references disagree in z-notation;
 * the composition D0 D0* + D1* D1 fixes it to dz0b * dz1b. */
inline QuadForm coupling_l() { return form_product(dz0b(), dz1b()); }

/** Matrix of homogeneous first-order forms. */
struct FirstOrderOperator {
    int rows = 0;
    int cols = 0;
    std::vector<CoeffVector> e;  // row-major

    FirstOrderOperator() = default;
    FirstOrderOperator(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c, zero_form()) {}

    CoeffVector& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
    const CoeffVector& at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }

    bool is_zero() const {
        for (const auto& cv : e)
            if (!fueter::is_zero(cv)) return false;
        return true;
    }

    friend bool operator==(const FirstOrderOperator& a, const FirstOrderOperator& b) {
        return a.rows == b.rows && a.cols == b.cols && a.e == b.e;
    }
};

/** Matrix of homogeneous second-order forms. */
struct SecondOrderOperator {
    int rows = 0;
    int cols = 0;
    std::vector<QuadForm> e;  // row-major

    SecondOrderOperator() = default;
    SecondOrderOperator(int r, int c) : rows(r), cols(c), e(static_cast<size_t>(r) * c) {}

    QuadForm& at(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
    const QuadForm& at(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }

    bool is_zero() const {
        for (const auto& q : e)
            if (!q.is_zero()) return false;
        return true;
    }

    friend bool operator==(const SecondOrderOperator& a, const SecondOrderOperator& b) {
        return a.rows == b.rows && a.cols == b.cols && a.e == b.e;
    }
    friend SecondOrderOperator operator+(SecondOrderOperator a, const SecondOrderOperator& b) {
        if (a.rows != b.rows || a.cols != b.cols)
            throw shape_error("SecondOrderOperator+: shape mismatch");
        for (size_t i = 0; i < a.e.size(); ++i) a.e[i] += b.e[i];
        return a;
    }
};

/** The degree-k first operator as a 2k x (k+1) matrix: row (A,j) has
 * nabla_up(A,0) in column j and nabla_up(A,1) in column j+1. */
inline FirstOrderOperator build_d0(int k) {
    if (k < 2) throw domain_error("build_d0: k must be >= 2");
    FirstOrderOperator op(2 * k, k + 1);
    for (int j = 0; j <= k - 1; ++j)
        for (int a = 0; a <= 1; ++a) {
            const int row = flat_index_psi(a, j, k);
            op.at(row, j) = nabla_up(a, 0);
            op.at(row, j + 1) = nabla_up(a, 1);
        }
    return op;
}

/** The degree-k compatibility operator as a (k-1) x 2k matrix: row j
 * carries (-dz0, -dz1b, dz1, -dz0b) in columns 2j..2j+3. */
inline FirstOrderOperator build_d1(int k) {
    if (k < 2) throw domain_error("build_d1: k must be >= 2");
    FirstOrderOperator op(k - 1, 2 * k);
    for (int j = 0; j <= k - 2; ++j) {
        op.at(j, 2 * j + 0) = negate(nabla_up(1, 0));  // -dz0
        op.at(j, 2 * j + 1) = nabla_up(0, 0);          // -dz1b
        op.at(j, 2 * j + 2) = negate(nabla_up(1, 1));  // dz1
        op.at(j, 2 * j + 3) = nabla_up(0, 1);          // -dz0b
    }
    return op;
}

/** Formal adjoint: entry (i,j) = -conj(entry (j,i)). */
inline FirstOrderOperator formal_adjoint(const FirstOrderOperator& op) {
    FirstOrderOperator adj(op.cols, op.rows);
    for (int i = 0; i < adj.rows; ++i)
        for (int j = 0; j < adj.cols; ++j) adj.at(i, j) = negate(conjugate(op.at(j, i)));
    return adj;
}

/** Plain conjugate transpose (no sign). */
inline FirstOrderOperator conj_transpose(const FirstOrderOperator& op) {
    FirstOrderOperator t(op.cols, op.rows);
    for (int i = 0; i < t.rows; ++i)
        for (int j = 0; j < t.cols; ++j) t.at(i, j) = conjugate(op.at(j, i));
    return t;
}

/** Polynomial matrix product of two first-order operators. Scalar
 * coefficients commute, so entries land in symmetric QuadForms. */
inline SecondOrderOperator compose(const FirstOrderOperator& a, const FirstOrderOperator& b) {
    if (a.cols != b.rows) throw shape_error("compose: a.cols != b.rows");
    SecondOrderOperator out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int l = 0; l < a.cols; ++l) {
            const CoeffVector& al = a.at(i, l);
            if (fueter::is_zero(al)) continue;
            for (int j = 0; j < b.cols; ++j) out.at(i, j).add_product(al, b.at(l, j));
        }
    return out;
}

/** D0* D0. For k = 2 this is -diag(Delta, 2 Delta, Delta). */
inline SecondOrderOperator box0(int k) {
    const FirstOrderOperator d0 = build_d0(k);
    return compose(formal_adjoint(d0), d0);
}

/** The associated Laplacian D0 D0* + D1* D1. */
inline SecondOrderOperator box1(int k) {
    const FirstOrderOperator d0 = build_d0(k);
    const FirstOrderOperator d1 = build_d1(k);
    return compose(d0, formal_adjoint(d0)) + compose(formal_adjoint(d1), d1);
}

/** Block-diagonal closed form of box1: leading block
 * [[Delta+Delta1, L], [Lbar, Delta+Delta2]], interior diagonal 2*Delta,
 * trailing block [[Delta+Delta2, -L], [-Lbar, Delta+Delta1]], all times -1. */
inline SecondOrderOperator box1_closed_form(int k) {
    if (k < 2) throw domain_error("box1_closed_form: k must be >= 2");
    const Complex minus(-1, 0);
    const QuadForm dl = laplacian(), d1 = laplacian_z0(), d2 = laplacian_z1();
    const QuadForm l = coupling_l(), lbar = coupling_l().conjugated();
    SecondOrderOperator out(2 * k, 2 * k);
    out.at(0, 0) = minus * (dl + d1);
    out.at(0, 1) = minus * l;
    out.at(1, 0) = minus * lbar;
    out.at(1, 1) = minus * (dl + d2);
    for (int i = 2; i < 2 * k - 2; ++i) out.at(i, i) = Complex(-2, 0) * dl;
    out.at(2 * k - 2, 2 * k - 2) = minus * (dl + d2);
    out.at(2 * k - 2, 2 * k - 1) = l;
    out.at(2 * k - 1, 2 * k - 2) = lbar;
    out.at(2 * k - 1, 2 * k - 1) = minus * (dl + d1);
    return out;
}

/** D1 D1* = -2 Delta times the identity. */
inline SecondOrderOperator box2(int k) {
    const FirstOrderOperator d1 = build_d1(k);
    return compose(d1, formal_adjoint(d1));
}

/** Substitutes dx_m -> w_m (complex) in every entry. */
inline SymbolMatrix symbol_eval(const FirstOrderOperator& op, const CVec4& w) {
    SymbolMatrix s(op.rows, op.cols);
    for (int i = 0; i < op.rows; ++i)
        for (int j = 0; j < op.cols; ++j) {
            const CoeffVector& cv = op.at(i, j);
            s(i, j) = cv[0] * w[0] + cv[1] * w[1] + cv[2] * w[2] + cv[3] * w[3];
        }
    return s;
}

inline SymbolMatrix symbol_eval(const SecondOrderOperator& op, const CVec4& w) {
    SymbolMatrix s(op.rows, op.cols);
    for (int i = 0; i < op.rows; ++i)
        for (int j = 0; j < op.cols; ++j) s(i, j) = op.at(i, j).eval(w);
    return s;
}

/** Real substitution dx_m -> v_m. */
template <class Op>
SymbolMatrix symbol_real(const Op& op, const Vec4& v) {
    return symbol_eval(op, CVec4{Complex(v[0], 0), Complex(v[1], 0), Complex(v[2], 0), Complex(v[3], 0)});
}

/** Fourier substitution dx_m -> i n_m, the action on the mode e^{i n.x}. */
template <class Op>
SymbolMatrix symbol_fourier(const Op& op, const Vec4& n) {
    return symbol_eval(op, CVec4{Complex(0, n[0]), Complex(0, n[1]), Complex(0, n[2]), Complex(0, n[3])});
}

/** Quadratic matrix pencil a0 + lambda a1 + lambda^2 a2. */
struct QuadraticPencil {
    SymbolMatrix a0, a1, a2;

    SymbolMatrix eval(const Complex& lambda) const { return a0 + lambda * a1 + lambda * lambda * a2; }
};

/** Coefficients of lambda^0, lambda^1, lambda^2 after the substitution
 * dx_m -> i xi_m + nu_m lambda in a second-order operator. */
inline QuadraticPencil symbol_line(const SecondOrderOperator& op, const Vec4& xi, const Vec4& nu) {
    QuadraticPencil p;
    p.a0 = SymbolMatrix::Zero(op.rows, op.cols);
    p.a1 = SymbolMatrix::Zero(op.rows, op.cols);
    p.a2 = SymbolMatrix::Zero(op.rows, op.cols);
    for (int i = 0; i < op.rows; ++i)
        for (int j = 0; j < op.cols; ++j) {
            const QuadForm& q = op.at(i, j);
            int idx = 0;
            for (int m = 0; m < 4; ++m)
                for (int n = m; n < 4; ++n, ++idx) {
                    const Complex c = q.c[idx];
                    if (c == Complex(0, 0)) continue;
                    const Complex ixm(0, xi[m]), ixn(0, xi[n]);
                    p.a0(i, j) += c * ixm * ixn;
                    p.a1(i, j) += c * (ixm * nu[n] + ixn * nu[m]);
                    p.a2(i, j) += c * nu[m] * nu[n];
                }
        }
    return p;
}

} // namespace fueter

#endif // FUETER_OPERATORS_HPP
