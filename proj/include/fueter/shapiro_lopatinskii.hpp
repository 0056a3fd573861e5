#ifndef FUETER_SHAPIRO_LOPATINSKII_HPP
#define FUETER_SHAPIRO_LOPATINSKII_HPP

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "fueter/operators.hpp"
#include "fueter/symbol_analysis.hpp"

namespace fueter {

/** One regularity-check instance: degree k, unit normal nu, and a
 * nonzero tangential frequency xi perpendicular to nu. */
struct SLInstance {
    int k;
    Vec4 nu;
    Vec4 xi;

    SLInstance(int k_, const Vec4& nu_, const Vec4& xi_) : k(k_), nu(nu_), xi(xi_) {
        if (k < 2) throw domain_error("SLInstance: k must be >= 2");
        if (std::abs(nu.norm() - 1.0) > 1e-12) throw domain_error("SLInstance: |nu| must be 1");
        if (xi.norm() == 0.0) throw domain_error("SLInstance: xi must be nonzero");
        if (std::abs(nu.dot(xi)) > 1e-12 * xi.norm())
            throw domain_error("SLInstance: xi must be orthogonal to nu");
    }
};

/** Tangential frame attached to nu. */
struct SLFrames {
    Vec4 mu;
    Vec4 mu_tilde;
};

/** The closed-formula frame mu = (-nu2, -nu3, nu0, nu1),
 * mu~ = (-nu3, nu2, -nu1, nu0); both unit and orthogonal to nu. */
inline SLFrames mu_frames(const Vec4& nu) {
    if (std::abs(nu.norm() - 1.0) > 1e-12) throw domain_error("mu_frames: |nu| must be 1");
    SLFrames f;
    f.mu = Vec4(-nu[2], -nu[3], nu[0], nu[1]);
    f.mu_tilde = Vec4(-nu[3], nu[2], -nu[1], nu[0]);
    return f;
}

/** Lambda = i (mu.xi) - (mu~.xi); satisfies |Lambda| <= |xi|. */
inline Complex lambda_coupling(const SLInstance& inst) {
    const SLFrames f = mu_frames(inst.nu);
    return Complex(-f.mu_tilde.dot(inst.xi), f.mu.dot(inst.xi));
}

/** The (k-1) x (k-1) tridiagonal reduction of the boundary system on
 * decaying half-line solutions: diagonal -2|xi|, subdiagonal Lambda,
 * superdiagonal conj(Lambda). */
inline SymbolMatrix sl_reduced_matrix(const SLInstance& inst) {
    const double s = inst.xi.norm();
    const Complex lam = lambda_coupling(inst);
    const int n = inst.k - 1;
    SymbolMatrix m = SymbolMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = Complex(-2 * s, 0);
        if (i + 1 < n) {
            m(i, i + 1) = std::conj(lam);
            m(i + 1, i) = lam;
        }
    }
    return m;
}

struct SLReducedReport {
    Complex det;
    std::vector<double> pivots;
    bool nonsingular;
};

/** Gaussian elimination of the reduced matrix via the pivot recursion
 * p1 = -2|xi|, p_{j+1} = -2|xi| - |Lambda|^2 / p_j. Every pivot stays
 * below -|xi| because |Lambda| <= |xi|, so the matrix is nonsingular;
 * the pivot-product determinant is cross-checked against an LU
 * determinant of the assembled matrix. */
inline SLReducedReport sl_reduced_nonsingular(const SLInstance& inst) {
    const double s = inst.xi.norm();
    const double lam2 = std::norm(lambda_coupling(inst));
    const int n = inst.k - 1;

    SLReducedReport rep;
    rep.pivots.reserve(n);
    double pivot = -2 * s;
    Complex det(1, 0);
    for (int j = 0; j < n; ++j) {
        if (j > 0) pivot = -2 * s - lam2 / pivot;
        if (!(pivot < -s))
            throw theory_violation("sl_reduced_nonsingular: elimination pivot reached -|xi|");
        rep.pivots.push_back(pivot);
        det *= pivot;
    }
    rep.det = det;

    const Complex direct = sl_reduced_matrix(inst).fullPivLu().determinant();
    if (std::abs(det - direct) > 1e-10 * std::abs(direct))
        throw solver_error("sl_reduced_nonsingular: pivot determinant disagrees with LU");
    rep.nonsingular = std::abs(det) > 0;
    return rep;
}

namespace detail {

/** Matrix sign function by scaled Newton iteration; requires no
 * eigenvalues on the imaginary axis. */
inline SymbolMatrix matrix_sign(SymbolMatrix s, int max_iter = 100, double tol = 1e-13) {
    const Eigen::Index n = s.rows();
    const SymbolMatrix id = SymbolMatrix::Identity(n, n);
    for (int it = 0; it < max_iter; ++it) {
        Eigen::PartialPivLU<SymbolMatrix> lu(s);
        const double adet = std::abs(lu.determinant());
        if (!(adet > 0) || !std::isfinite(adet))
            throw solver_error("matrix_sign: singular iterate");
        const double mu = std::pow(adet, -1.0 / static_cast<double>(n));
        const SymbolMatrix inv = lu.inverse();
        SymbolMatrix next = 0.5 * (mu * s + (1.0 / mu) * inv);
        const double delta = (next - s).norm();
        s.swap(next);
        if (delta <= tol * s.norm()) {
            if ((s * s - id).norm() > 1e-8 * std::sqrt(static_cast<double>(n)))
                throw solver_error("matrix_sign: iteration converged to a non-involution");
            return s;
        }
    }
    throw solver_error("matrix_sign: Newton iteration did not converge");
}

} // namespace detail

struct SLDirectReport {
    int decaying_dim;
    double sigma_min;
    bool regular;
};

/** Direct regularity check: forms the quadratic pencil of box1 along
 * i xi + nu d/dt, takes the stable invariant subspace of its companion
 * linearization (initial data (u(0), u'(0)) of decaying solutions), and
 * measures the smallest singular value of the boundary map
 *   u |-> (D0*(nu) u(0), D1(i xi) u(0) + D1(nu) u'(0))
 * on an orthonormal basis of that subspace. The stable eigenvalue
 * -|xi| carries Jordan chains for every instance, so the subspace is
 * extracted with the matrix sign function rather than from eigenvectors. */
inline SLDirectReport sl_direct_check(const SLInstance& inst, double tol = 1e-6) {
    const int k = inst.k;
    const int n = 2 * k;
    const QuadraticPencil pencil = symbol_line(box1(k), inst.xi, inst.nu);

    // Companion linearization acting on (u, u'): [0 I; -A2^-1 A0, -A2^-1 A1].
    Eigen::PartialPivLU<SymbolMatrix> a2lu(pencil.a2);
    SymbolMatrix comp = SymbolMatrix::Zero(2 * n, 2 * n);
    comp.topRightCorner(n, n) = SymbolMatrix::Identity(n, n);
    comp.bottomLeftCorner(n, n) = -a2lu.solve(pencil.a0);
    comp.bottomRightCorner(n, n) = -a2lu.solve(pencil.a1);

    // Spectral projector onto the stable (Re < 0) invariant subspace.
    const SymbolMatrix sgn = detail::matrix_sign(comp);
    const SymbolMatrix proj = 0.5 * (SymbolMatrix::Identity(2 * n, 2 * n) - sgn);

    SLDirectReport rep;
    rep.decaying_dim = static_cast<int>(std::lround(proj.trace().real()));
    if (std::abs(proj.trace().real() - rep.decaying_dim) > 1e-6 ||
        std::abs(proj.trace().imag()) > 1e-6)
        throw solver_error("sl_direct_check: non-integral projector trace");
    if (rep.decaying_dim != n)
        throw ellipticity_error("sl_direct_check: decaying solution space is not 2k-dimensional");

    // Nonzero singular values of an idempotent are >= 1; the leading
    // left singular vectors are an orthonormal basis of its range.
    Eigen::JacobiSVD<SymbolMatrix> psvd(proj, Eigen::ComputeThinU);
    int r = 0;
    for (Eigen::Index i = 0; i < psvd.singularValues().size(); ++i)
        if (psvd.singularValues()(i) > 0.5) ++r;
    if (r != n) throw solver_error("sl_direct_check: projector rank disagrees with its trace");
    const SymbolMatrix basis = psvd.matrixU().leftCols(r);

    const SymbolMatrix bnd_adj0 = symbol_real(formal_adjoint(build_d0(k)), inst.nu);
    const SymbolMatrix bnd_d1_xi = symbol_fourier(build_d1(k), inst.xi);
    const SymbolMatrix bnd_d1_nu = symbol_real(build_d1(k), inst.nu);

    SymbolMatrix bmap = SymbolMatrix::Zero(n, r);
    bmap.topRows(k + 1) = bnd_adj0 * basis.topRows(n);
    bmap.bottomRows(k - 1) = bnd_d1_xi * basis.topRows(n) + bnd_d1_nu * basis.bottomRows(n);

    Eigen::JacobiSVD<SymbolMatrix> bsvd(bmap);
    rep.sigma_min = bsvd.singularValues()(bsvd.singularValues().size() - 1);
    rep.regular = rep.sigma_min > tol;
    return rep;
}

} // namespace fueter

#endif // FUETER_SHAPIRO_LOPATINSKII_HPP
