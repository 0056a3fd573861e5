#ifndef FUETER_POLY_HPP
#define FUETER_POLY_HPP

#include <array>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "fueter/operators.hpp"
#include "fueter/symbol_analysis.hpp"

namespace fueter {

/** Exponent 4-tuple of a monomial x0^a0 x1^a1 x2^a2 x3^a3. */
using Monomial = std::array<int, 4>;

inline int monomial_degree(const Monomial& a) { return a[0] + a[1] + a[2] + a[3]; }

/** Multi-component polynomial field: per component, a sparse map from
 * monomials to complex coefficients, all of total degree <= degree. */
struct PolyField {
    int m = 0;
    int degree = 0;
    std::vector<std::map<Monomial, Complex>> comps;

    PolyField() = default;
    PolyField(int m_, int degree_) : m(m_), degree(degree_), comps(m_) {}

    void set(int c, const Monomial& a, const Complex& v) {
        if (monomial_degree(a) > degree) throw range_error("PolyField::set: monomial exceeds degree bound");
        if (v == Complex(0, 0))
            comps[c].erase(a);
        else
            comps[c][a] = v;
    }

    Complex get(int c, const Monomial& a) const {
        auto it = comps[c].find(a);
        return it == comps[c].end() ? Complex(0, 0) : it->second;
    }

    /** l2 norm of the coefficient vector. */
    double norm() const {
        double s = 0;
        for (const auto& comp : comps)
            for (const auto& [a, v] : comp) s += std::norm(v);
        return std::sqrt(s);
    }
};

/** All monomials of exact total degree d, in lexicographic order. */
inline std::vector<Monomial> monomials_of_degree(int d) {
    std::vector<Monomial> out;
    for (int a0 = d; a0 >= 0; --a0)
        for (int a1 = d - a0; a1 >= 0; --a1)
            for (int a2 = d - a0 - a1; a2 >= 0; --a2) out.push_back({a0, a1, a2, d - a0 - a1 - a2});
    return out;
}

/** Applies a first-order operator to a polynomial field by exact
 * differentiation of monomials. */
inline PolyField apply_poly(const FirstOrderOperator& op, const PolyField& p) {
    if (op.cols != p.m) throw shape_error("apply_poly: op.cols != p.m");
    PolyField out(op.rows, p.degree > 0 ? p.degree - 1 : 0);
    for (int i = 0; i < op.rows; ++i) {
        auto& dst = out.comps[i];
        for (int j = 0; j < op.cols; ++j) {
            const CoeffVector& cv = op.at(i, j);
            if (is_zero(cv)) continue;
            for (const auto& [a, v] : p.comps[j])
                for (int m = 0; m < 4; ++m) {
                    if (cv[m] == Complex(0, 0) || a[m] == 0) continue;
                    Monomial b = a;
                    b[m] -= 1;
                    dst[b] += cv[m] * static_cast<double>(a[m]) * v;
                }
        }
    }
    for (auto& comp : out.comps)
        for (auto it = comp.begin(); it != comp.end();)
            it = (it->second == Complex(0, 0)) ? comp.erase(it) : std::next(it);
    return out;
}

/** Coefficient matrix of a first-order operator from homogeneous degree
 * d inputs to degree d-1 outputs, in the monomials_of_degree bases. */
inline Eigen::MatrixXcd degree_matrix(const FirstOrderOperator& op, int d) {
    const std::vector<Monomial> dom = monomials_of_degree(d);
    const std::vector<Monomial> cod = monomials_of_degree(d - 1);
    std::map<Monomial, int> cod_index;
    for (size_t i = 0; i < cod.size(); ++i) cod_index[cod[i]] = static_cast<int>(i);

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(op.rows) * cod.size(),
                                                static_cast<Eigen::Index>(op.cols) * dom.size());
    for (int j = 0; j < op.cols; ++j)
        for (size_t a = 0; a < dom.size(); ++a) {
            const Eigen::Index col = static_cast<Eigen::Index>(j) * dom.size() + a;
            for (int i = 0; i < op.rows; ++i) {
                const CoeffVector& cv = op.at(i, j);
                for (int x = 0; x < 4; ++x) {
                    if (cv[x] == Complex(0, 0) || dom[a][x] == 0) continue;
                    Monomial b = dom[a];
                    b[x] -= 1;
                    const Eigen::Index row =
                        static_cast<Eigen::Index>(i) * cod.size() + cod_index.at(b);
                    m(row, col) += cv[x] * static_cast<double>(dom[a][x]);
                }
            }
        }
    return m;
}

/** Solves D0 phi = psi on polynomial data, degree by degree, given the
 * compatibility condition D1 psi = 0. Each homogeneous piece is a
 * finite least-squares problem over monomial coefficients; the
 * minimum-norm solution is chosen (ker D0 is nontrivial). */
inline PolyField solve_d0_poly(int k, const PolyField& psi, double tol = 1e-10) {
    const FirstOrderOperator d0 = build_d0(k);
    const FirstOrderOperator d1 = build_d1(k);
    if (psi.m != 2 * k) throw shape_error("solve_d0_poly: psi must have 2k components");

    const double compat = apply_poly(d1, psi).norm();
    if (compat > 1e-12 * std::max(1.0, psi.norm()))
        throw compatibility_error("solve_d0_poly: D1 psi != 0", compat);

    PolyField phi(k + 1, psi.degree + 1);
    for (int d = 0; d <= psi.degree; ++d) {
        const std::vector<Monomial> cod = monomials_of_degree(d);
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(2 * k) * cod.size());
        bool any = false;
        for (int c = 0; c < 2 * k; ++c)
            for (size_t a = 0; a < cod.size(); ++a) {
                const Complex v = psi.get(c, cod[a]);
                if (v != Complex(0, 0)) {
                    rhs(static_cast<Eigen::Index>(c) * cod.size() + a) = v;
                    any = true;
                }
            }
        if (!any) continue;

        const Eigen::MatrixXcd m = degree_matrix(d0, d + 1);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod_dec(m);
        const Eigen::VectorXcd x = cod_dec.solve(rhs);

        const std::vector<Monomial> dom = monomials_of_degree(d + 1);
        for (int c = 0; c < k + 1; ++c)
            for (size_t a = 0; a < dom.size(); ++a) {
                const Complex v = x(static_cast<Eigen::Index>(c) * dom.size() + a);
                if (v != Complex(0, 0)) phi.comps[c][dom[a]] += v;
            }
    }

    // The residual must vanish: the symbol sequence is exact on
    // polynomials at every degree.
    PolyField residual = apply_poly(d0, phi);
    for (int c = 0; c < 2 * k; ++c)
        for (const auto& [a, v] : psi.comps[c]) residual.comps[c][a] -= v;
    const double res = residual.norm();
    if (res > tol * std::max(1.0, psi.norm()))
        throw exactness_error("solve_d0_poly: residual " + std::to_string(res) + " exceeds tolerance");
    return phi;
}

struct DegreeExactnessReport {
    int dim_ker_d1;  // kernel dimension of the degree-d matrix of D1
    int rank_d0;     // rank of the degree-(d+1) matrix of D0
};

/** Finite-degree exactness bookkeeping: dim ker D1 on homogeneous
 * degree-d data versus rank of D0 from degree d+1. Exactness of the
 * polynomial complex makes the two numbers equal. */
inline DegreeExactnessReport degree_exactness(int k, int d) {
    const Eigen::MatrixXcd m1 = degree_matrix(build_d1(k), d);
    const Eigen::MatrixXcd m0 = degree_matrix(build_d0(k), d + 1);
    DegreeExactnessReport rep;
    rep.rank_d0 = numeric_rank(m0);
    rep.dim_ker_d1 = static_cast<int>(m1.cols()) - numeric_rank(m1);
    return rep;
}

} // namespace fueter

#endif // FUETER_POLY_HPP
