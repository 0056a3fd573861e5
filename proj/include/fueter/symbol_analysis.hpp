#ifndef FUETER_SYMBOL_ANALYSIS_HPP
#define FUETER_SYMBOL_ANALYSIS_HPP

#include <Eigen/Dense>

#include "fueter/operators.hpp"

namespace fueter {

inline constexpr double kRankTol = 1e-10;

/** Count of singular values above tol times the largest one. */
inline int numeric_rank(const SymbolMatrix& m, double tol = kRankTol) {
    if (tol <= 0) throw domain_error("numeric_rank: tol must be positive");
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::JacobiSVD<SymbolMatrix> svd(m);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * sv(0)) ++r;
    return r;
}

/** Orthonormal basis of the column space (left singular vectors with
 * singular value above tol * sigma_max). */
inline SymbolMatrix range_basis(const SymbolMatrix& m, double tol = kRankTol) {
    Eigen::JacobiSVD<SymbolMatrix> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(0) > 0 && sv(i) > tol * sv(0)) ++r;
    return svd.matrixU().leftCols(r);
}

/** Orthonormal basis of the kernel (right singular vectors with
 * singular value at most tol * sigma_max). */
inline SymbolMatrix kernel_basis(const SymbolMatrix& m, double tol = kRankTol) {
    Eigen::JacobiSVD<SymbolMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(0) > 0 && sv(i) > tol * sv(0)) ++r;
    return svd.matrixV().rightCols(m.cols() - r);
}

struct SymbolExactnessReport {
    int k = 0;
    Vec4 xi = Vec4::Zero();
    int rank_d0 = 0;
    int rank_d1 = 0;
    double product_norm = 0;  // spectral norm of S1 * S0
    double ker_im_gap = 0;    // sine of the largest principal angle between ker S1 and im S0
};

/** Verifies pointwise exactness of the symbol sequence at a nonzero
 * frequency: ranks k+1 and k-1, vanishing product, and coincidence of
 * ker S1 with im S0 up to principal angle tol. */
inline SymbolExactnessReport check_symbol_exactness(int k, const Vec4& xi, double tol = kRankTol) {
    if (xi.norm() == 0.0) throw domain_error("check_symbol_exactness: xi must be nonzero");
    const SymbolMatrix s0 = symbol_fourier(build_d0(k), xi);
    const SymbolMatrix s1 = symbol_fourier(build_d1(k), xi);

    SymbolExactnessReport rep;
    rep.k = k;
    rep.xi = xi;
    rep.rank_d0 = numeric_rank(s0, kRankTol);
    rep.rank_d1 = numeric_rank(s1, kRankTol);

    const SymbolMatrix prod = s1 * s0;
    Eigen::JacobiSVD<SymbolMatrix> psvd(prod);
    rep.product_norm = psvd.singularValues().size() ? psvd.singularValues()(0) : 0.0;

    const SymbolMatrix ker = kernel_basis(s1);
    const SymbolMatrix im = range_basis(s0);
    if (ker.cols() == im.cols()) {
        const SymbolMatrix defect = ker - im * (im.adjoint() * ker);
        Eigen::JacobiSVD<SymbolMatrix> dsvd(defect);
        rep.ker_im_gap = dsvd.singularValues().size() ? dsvd.singularValues()(0) : 0.0;
    } else {
        rep.ker_im_gap = 1.0;
    }

    const double scale = xi.norm();
    if (rep.rank_d0 != k + 1 || rep.rank_d1 != k - 1 || rep.product_norm > tol * scale * scale ||
        rep.ker_im_gap > tol)
        throw exactness_error("check_symbol_exactness: symbol sequence failed at a nonzero frequency");
    return rep;
}

/** Orthogonal projectors onto im D0(nu) and im D1(nu)*; they are
 * complementary since the two ranges decompose C^{2k} orthogonally. */
inline std::pair<SymbolMatrix, SymbolMatrix> orthogonal_projectors(int k, const Vec4& nu) {
    const SymbolMatrix s0 = symbol_real(build_d0(k), nu);
    const SymbolMatrix s1 = symbol_real(build_d1(k), nu);
    const SymbolMatrix q0 = range_basis(s0);
    const SymbolMatrix q1 = range_basis(SymbolMatrix(s1.adjoint()));
    if (q0.cols() != k + 1 || q1.cols() != k - 1)
        throw exactness_error("orthogonal_projectors: unexpected symbol rank");
    return {q0 * q0.adjoint(), q1 * q1.adjoint()};
}

/** Smallest eigenvalue of the Hermitian symbol of -box1 at xi; positive
 * for xi != 0 and homogeneous of degree 2. */
inline double ellipticity_check(int k, const Vec4& xi) {
    if (xi.norm() == 0.0) throw domain_error("ellipticity_check: xi must be nonzero");
    const SymbolMatrix m = -symbol_real(box1(k), xi);
    Eigen::SelfAdjointEigenSolver<SymbolMatrix> es(m, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin <= 0) throw ellipticity_error("ellipticity_check: symbol not positive definite");
    return lmin;
}

struct BoundaryConditions {
    SymbolMatrix constraints;  // reduced row echelon rows of D0*(nu), (k+1) x 2k
    bool psi_dirichlet;        // D1*(nu) injective, forcing the Dirichlet condition on Psi
};

/** Reduced row echelon form with partial pivoting; rows below rank_tol
 * of the largest entry are dropped, pivots normalized to 1 and pivot
 * columns cleared. */
inline SymbolMatrix rref(SymbolMatrix m, double rank_tol = kRankTol) {
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return SymbolMatrix(0, m.cols());
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        double best = rank_tol * scale;
        for (int r = row; r < m.rows(); ++r)
            if (std::abs(m(r, col)) > best) {
                best = std::abs(m(r, col));
                piv = r;
            }
        if (piv < 0) continue;
        m.row(piv).swap(m.row(row));
        m.row(row) /= m(row, col);
        for (int r = 0; r < m.rows(); ++r)
            if (r != row && m(r, col) != Complex(0, 0)) m.row(r) -= m(r, col) * m.row(row);
        ++row;
    }
    return m.topRows(row);
}

/** Natural boundary constraints on psi at a unit normal: the row space
 * of D0*(nu) in reduced row echelon form (k+1 independent conditions),
 * plus the flag that D1*(nu) is injective (so Psi vanishes). */
inline BoundaryConditions boundary_conditions(int k, const Vec4& nu) {
    if (std::abs(nu.norm() - 1.0) > 1e-12)
        throw domain_error("boundary_conditions: nu must be a unit vector");
    const SymbolMatrix adj0 = symbol_real(formal_adjoint(build_d0(k)), nu);
    BoundaryConditions bc;
    bc.constraints = rref(adj0);
    if (bc.constraints.rows() != k + 1)
        throw exactness_error("boundary_conditions: D0*(nu) does not have rank k+1");
    const SymbolMatrix adj1 = symbol_real(formal_adjoint(build_d1(k)), nu);
    bc.psi_dirichlet = numeric_rank(adj1) == k - 1;
    return bc;
}

} // namespace fueter

#endif // FUETER_SYMBOL_ANALYSIS_HPP
