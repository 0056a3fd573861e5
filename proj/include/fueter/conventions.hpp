#ifndef FUETER_CONVENTIONS_HPP
#define FUETER_CONVENTIONS_HPP

#include <array>
#include <complex>

#include "fueter/errors.hpp"

namespace fueter {

using Complex = std::complex<double>;

/** A first-order form c0*dx0 + c1*dx1 + c2*dx2 + c3*dx3 with complex
 * coefficients, the basic building block of all operator entries. */
using CoeffVector = std::array<Complex, 4>;

/** Component counts of the three bundles in the degree-k complex:
 * (k+1)-component phi, 2k-component psi, (k-1)-component Psi. */
struct ComponentLayout {
    int k;
    int n_phi;
    int n_psi;
    int n_Psi;

    explicit ComponentLayout(int k_) : k(k_), n_phi(k_ + 1), n_psi(2 * k_), n_Psi(k_ - 1) {
        if (k < 2) throw domain_error("ComponentLayout: k must be >= 2");
    }
};

// Complex coordinates z0 = x0 + i x1, z1 = x2 + i x3. The derivative
// symbols below omit the customary factor 1/2.
inline constexpr Complex kOne{1.0, 0.0};
inline constexpr Complex kI{0.0, 1.0};

inline CoeffVector dz0()  { return {Complex(1, 0), Complex(0, -1), Complex(0, 0), Complex(0, 0)}; }
inline CoeffVector dz0b() { return {Complex(1, 0), Complex(0, 1), Complex(0, 0), Complex(0, 0)}; }
inline CoeffVector dz1()  { return {Complex(0, 0), Complex(0, 0), Complex(1, 0), Complex(0, -1)}; }
inline CoeffVector dz1b() { return {Complex(0, 0), Complex(0, 0), Complex(1, 0), Complex(0, 1)}; }

inline CoeffVector zero_form() { return {Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)}; }

inline CoeffVector negate(const CoeffVector& a) {
    return {-a[0], -a[1], -a[2], -a[3]};
}

inline CoeffVector conjugate(const CoeffVector& a) {
    return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2]), std::conj(a[3])};
}

inline bool is_zero(const CoeffVector& a) {
    return a[0] == Complex(0, 0) && a[1] == Complex(0, 0) && a[2] == Complex(0, 0) &&
           a[3] == Complex(0, 0);
}

/** Index-raised first derivatives: nabla_up(A, Ap) is the entry with
 * lower index A in {0,1} and upper primed index Ap in {0,1}.
 * Concretely: (0,0) -> -dz1b, (0,1) -> -dz0b, (1,0) -> dz0, (1,1) -> -dz1. */
inline CoeffVector nabla_up(int a, int ap) {
    if (a < 0 || a > 1 || ap < 0 || ap > 1) throw range_error("nabla_up: indices must be 0 or 1");
    if (a == 0) return ap == 0 ? negate(dz1b()) : negate(dz0b());
    return ap == 0 ? dz0() : negate(dz1());
}

/** Flat index of the psi component with unprimed index A and j primed
 * indices equal to 1', laid out as psi_{A,j} -> 2j + A. */
inline int flat_index_psi(int a, int j, int k) {
    if (k < 2) throw domain_error("flat_index_psi: k must be >= 2");
    if (a < 0 || a > 1) throw range_error("flat_index_psi: A must be 0 or 1");
    if (j < 0 || j > k - 1) throw range_error("flat_index_psi: j out of [0, k-1]");
    return 2 * j + a;
}

} // namespace fueter

#endif // FUETER_CONVENTIONS_HPP
