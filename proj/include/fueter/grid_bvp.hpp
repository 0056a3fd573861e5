#ifndef FUETER_GRID_BVP_HPP
#define FUETER_GRID_BVP_HPP

#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "fueter/operators.hpp"

namespace fueter {

using SparseCx = Eigen::SparseMatrix<Complex>;

/** 4D box with n cells per dimension and spacing h. Level-l nodes are
 * {0..n-l}^4; forward differences shift fields one level up, so the
 * complex lives on levels 0 -> 1 -> 2. */
struct BoxGrid {
    int n = 0;
    double h = 1.0;

    BoxGrid() = default;
    BoxGrid(int n_, double h_) : n(n_), h(h_) {
        if (n < 3) throw domain_error("BoxGrid: n must be >= 3");
        if (!(h > 0)) throw domain_error("BoxGrid: h must be positive");
    }

    int points(int level) const { return n + 1 - level; }

    long sites(int level) const {
        const long p = points(level);
        return p * p * p * p;
    }

    friend bool operator==(const BoxGrid& a, const BoxGrid& b) { return a.n == b.n && a.h == b.h; }
};

/** The discrete complex: sparse forward-difference realizations
 * A0 : fields(G0, k+1) -> fields(G1, 2k) and
 * A1 : fields(G1, 2k) -> fields(G2, k-1), with A1 A0 = 0 because
 * forward differences commute exactly. Field vectors are site-major,
 * component-minor. */
struct DiscreteComplex {
    int k = 0;
    BoxGrid grid;
    SparseCx a0;
    SparseCx a1;

    long field_size(int level) const {
        const int m = level == 0 ? k + 1 : (level == 1 ? 2 * k : k - 1);
        return grid.sites(level) * m;
    }
};

namespace detail {

/** Sparse forward-difference realization of a first-order operator from
 * level `level` fields (op.cols components) to level `level+1` fields
 * (op.rows components). */
inline SparseCx assemble_difference(const FirstOrderOperator& op, const BoxGrid& g, int level) {
    const int pin = g.points(level);
    const int pout = g.points(level + 1);
    const double inv_h = 1.0 / g.h;

    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<size_t>(g.sites(level + 1)) * op.rows * 4);

    const long in_strides[4] = {static_cast<long>(pin) * pin * pin, static_cast<long>(pin) * pin,
                                pin, 1};
    long out_site = 0;
    for (int i0 = 0; i0 < pout; ++i0)
        for (int i1 = 0; i1 < pout; ++i1)
            for (int i2 = 0; i2 < pout; ++i2)
                for (int i3 = 0; i3 < pout; ++i3, ++out_site) {
                    const long in_site = i0 * in_strides[0] + i1 * in_strides[1] +
                                         i2 * in_strides[2] + i3 * in_strides[3];
                    for (int r = 0; r < op.rows; ++r) {
                        const long row = out_site * op.rows + r;
                        for (int c = 0; c < op.cols; ++c) {
                            const CoeffVector& cv = op.at(r, c);
                            for (int m = 0; m < 4; ++m) {
                                if (cv[m] == Complex(0, 0)) continue;
                                const Complex w = cv[m] * inv_h;
                                trips.emplace_back(row, (in_site + in_strides[m]) * op.cols + c, w);
                                trips.emplace_back(row, in_site * op.cols + c, -w);
                            }
                        }
                    }
                }

    SparseCx a(g.sites(level + 1) * op.rows, g.sites(level) * op.cols);
    a.setFromTriplets(trips.begin(), trips.end());
    a.makeCompressed();
    return a;
}

} // namespace detail

/** Builds the discrete complex on a box grid. */
inline DiscreteComplex assemble(int k, const BoxGrid& grid) {
    DiscreteComplex c;
    c.k = k;
    c.grid = grid;
    c.a0 = detail::assemble_difference(build_d0(k), grid, 0);
    c.a1 = detail::assemble_difference(build_d1(k), grid, 1);
    return c;
}

/** The discrete associated Laplacian A0 A0^H + A1^H A1 on level-1
 * fields; Hermitian positive semi-definite, with the plain
 * conjugate-transpose adjoints encoding the natural boundary
 * conditions discretely. */
inline SparseCx discrete_box1(const DiscreteComplex& c) {
    const SparseCx a0h = c.a0.adjoint();
    const SparseCx a1h = c.a1.adjoint();
    SparseCx box = c.a0 * a0h + a1h * c.a1;
    box.makeCompressed();
    return box;
}

/** Largest-eigenvalue estimate by power iteration from a fixed start. */
inline double lambda_max_estimate(const SparseCx& box, int iters = 120) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(box.rows());
    v.normalize();
    double lambda = 0;
    for (int i = 0; i < iters; ++i) {
        v = box * v;
        lambda = v.norm();
        if (lambda == 0) return 0;
        v /= lambda;
    }
    return lambda;
}

struct HarmonicBasis {
    Eigen::MatrixXcd vectors;  // orthonormal kernel basis, one column per element
    double lambda_max = 0;
    double largest_kept = 0;     // largest eigenvalue classified as kernel
    double smallest_dropped = 0; // smallest eigenvalue above the cut (spectral gap witness)

    int dim() const { return static_cast<int>(vectors.cols()); }
};

namespace detail {

inline HarmonicBasis harmonic_from_dense(const SparseCx& box, double tol) {
    Eigen::MatrixXcd dense(box);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
    if (es.info() != Eigen::Success) throw solver_error("harmonic_basis: dense eigensolver failed");
    const auto& vals = es.eigenvalues();
    HarmonicBasis hb;
    hb.lambda_max = std::max(vals(vals.size() - 1), 0.0);
    const double cut = tol * hb.lambda_max;
    int dim = 0;
    while (dim < vals.size() && vals(dim) < cut) ++dim;
    hb.vectors = es.eigenvectors().leftCols(dim);
    hb.largest_kept = dim > 0 ? vals(dim - 1) : 0.0;
    hb.smallest_dropped = dim < vals.size() ? vals(dim) : hb.lambda_max;
    return hb;
}

inline HarmonicBasis harmonic_from_shift_invert(const SparseCx& box, double tol) {
    const Eigen::Index n = box.rows();
    HarmonicBasis hb;
    hb.lambda_max = lambda_max_estimate(box);
    if (hb.lambda_max == 0) throw solver_error("harmonic_basis: zero operator");
    const double cut = tol * hb.lambda_max;
    const double sigma = 1e-8 * hb.lambda_max;

    SparseCx shifted = box;
    SparseCx ident(n, n);
    ident.setIdentity();
    shifted += Complex(sigma, 0) * ident;
    Eigen::SimplicialLDLT<SparseCx> ldlt(shifted);
    if (ldlt.info() != Eigen::Success)
        throw solver_error("harmonic_basis: LDLT factorization failed");

    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);

    int block = 16;
    for (;;) {
        block = std::min<int>(block, static_cast<int>(n));
        Eigen::MatrixXcd x(n, block);
        for (Eigen::Index i = 0; i < n; ++i)
            for (int j = 0; j < block; ++j) x(i, j) = Complex(gauss(rng), gauss(rng));

        Eigen::VectorXd ritz;
        for (int iter = 0; iter < 8; ++iter) {
            x = ldlt.solve(x);
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
            x = qr.householderQ() * Eigen::MatrixXcd::Identity(n, block);
            const Eigen::MatrixXcd bx = box * x;
            const Eigen::MatrixXcd h = x.adjoint() * bx;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (h + h.adjoint()));
            x = x * es.eigenvectors();
            ritz = es.eigenvalues();
            // Converged when every sub-cut Ritz pair has a small residual.
            bool done = true;
            const Eigen::MatrixXcd bx2 = box * x;
            for (int j = 0; j < block && ritz(j) < cut; ++j)
                if ((bx2.col(j) - ritz(j) * x.col(j)).norm() > 1e-10 * hb.lambda_max) done = false;
            if (done && iter >= 2) break;
        }

        int dim = 0;
        while (dim < block && ritz(dim) < cut) ++dim;
        if (dim == block && block < n) {
            block *= 2;
            continue;  // the kernel may be larger than the block
        }
        hb.vectors = x.leftCols(dim);
        hb.largest_kept = dim > 0 ? ritz(dim - 1) : 0.0;
        hb.smallest_dropped = dim < block ? ritz(dim) : hb.lambda_max;
        return hb;
    }
}

} // namespace detail

/** Orthonormal basis of ker(discrete_box1): eigenvectors with
 * eigenvalue below tol times the largest eigenvalue. Kernel vectors of
 * the sum of squares lie in the joint kernel of A0^H and A1. */
inline HarmonicBasis harmonic_basis(const DiscreteComplex& c, double tol = 1e-8) {
    if (tol <= 0) throw domain_error("harmonic_basis: tol must be positive");
    const SparseCx box = discrete_box1(c);
    HarmonicBasis hb = box.rows() <= 400 ? detail::harmonic_from_dense(box, tol)
                                         : detail::harmonic_from_shift_invert(box, tol);
    // Joint-kernel validation on every basis vector.
    for (int j = 0; j < hb.dim(); ++j) {
        const Eigen::VectorXcd v = hb.vectors.col(j);
        const double bound = std::sqrt(2.0 * tol * hb.lambda_max) * v.norm();
        if ((c.a0.adjoint() * v).norm() + (c.a1 * v).norm() > bound)
            throw solver_error("harmonic_basis: basis vector fails the joint-kernel bound");
    }
    return hb;
}

/** Reusable solve context: the assembled Laplacian, a shifted LDLT
 * factorization used as the CG preconditioner, and the harmonic basis
 * for deflation. */
class Box1Solver {
  public:
    Box1Solver(const DiscreteComplex& c, double kernel_tol = 1e-8)
        : a0_(c.a0), a1_(c.a1), box_(discrete_box1(c)) {
        harmonics_ = c.field_size(1) <= 400 ? detail::harmonic_from_dense(box_, kernel_tol)
                                            : detail::harmonic_from_shift_invert(box_, kernel_tol);
        SparseCx shifted = box_;
        SparseCx ident(box_.rows(), box_.rows());
        ident.setIdentity();
        shifted += Complex(1e-8 * harmonics_.lambda_max, 0) * ident;
        precond_.compute(shifted);
        if (precond_.info() != Eigen::Success)
            throw solver_error("Box1Solver: preconditioner factorization failed");
    }

    const HarmonicBasis& harmonics() const { return harmonics_; }
    const SparseCx& box() const { return box_; }
    const SparseCx& a0() const { return a0_; }
    const SparseCx& a1() const { return a1_; }

    /** Orthogonal projection onto the complement of the harmonic space. */
    Eigen::VectorXcd deflate(Eigen::VectorXcd v) const {
        if (harmonics_.dim() > 0) v -= harmonics_.vectors * (harmonics_.vectors.adjoint() * v);
        return v;
    }

    Eigen::VectorXcd harmonic_projection(const Eigen::VectorXcd& v) const {
        if (harmonics_.dim() == 0) return Eigen::VectorXcd::Zero(v.size());
        return harmonics_.vectors * (harmonics_.vectors.adjoint() * v);
    }

    /** Deflated preconditioned conjugate gradient for box u = deflate(f). */
    Eigen::VectorXcd solve(const Eigen::VectorXcd& f, double tol) const {
        const double fn = f.norm();
        if (fn == 0.0) return Eigen::VectorXcd::Zero(f.size());
        const Eigen::VectorXcd b = deflate(f);

        Eigen::VectorXcd x = Eigen::VectorXcd::Zero(f.size());
        Eigen::VectorXcd r = b;
        Eigen::VectorXcd z = deflate(precond_.solve(r));
        Eigen::VectorXcd p = z;
        Complex rz = r.dot(z);
        std::vector<double> history{r.norm()};

        const int max_iter = 500;
        for (int it = 0; it < max_iter; ++it) {
            if (history.back() <= tol * fn) {
                return deflate(x);
            }
            const Eigen::VectorXcd ap = box_ * p;
            const Complex alpha = rz / p.dot(ap);
            x += alpha * p;
            // True residual with re-deflation; keeps roundoff out of the kernel.
            r = deflate(b - box_ * x);
            history.push_back(r.norm());
            z = deflate(precond_.solve(r));
            const Complex rz_next = r.dot(z);
            p = z + (rz_next / rz) * p;
            rz = rz_next;
        }
        std::string msg = "Box1Solver::solve: CG stagnated; residual history:";
        for (size_t i = 0; i < history.size(); i += std::max<size_t>(1, history.size() / 16))
            msg += " " + std::to_string(history[i]);
        throw solver_error(msg);
    }

  private:
    SparseCx a0_;
    SparseCx a1_;
    SparseCx box_;
    HarmonicBasis harmonics_;
    Eigen::SimplicialLDLT<SparseCx> precond_;
};

/** Solves discrete_box1 u = f - P_K f with u orthogonal to the kernel. */
inline Eigen::VectorXcd solve_box1(const Box1Solver& solver, const Eigen::VectorXcd& f,
                                   double tol = 1e-10) {
    return solver.solve(f, tol);
}

inline Eigen::VectorXcd solve_box1(const DiscreteComplex& c, const Eigen::VectorXcd& f,
                                   double tol = 1e-10) {
    return Box1Solver(c).solve(f, tol);
}

struct GridHodgeResult {
    Eigen::VectorXcd exact;     // A0 A0^H N1 f
    Eigen::VectorXcd coexact;   // A1^H A1 N1 f
    Eigen::VectorXcd harmonic;  // P_K f
};

/** Discrete Hodge decomposition into exact, coexact, and harmonic
 * parts; pairwise orthogonal and summing to f within the solve
 * tolerance. */
inline GridHodgeResult hodge_decompose_grid(const Box1Solver& solver, const Eigen::VectorXcd& f,
                                            double tol = 1e-10) {
    const Eigen::VectorXcd u = solver.solve(f, tol);
    GridHodgeResult r;
    r.exact = solver.a0() * (solver.a0().adjoint() * u);
    r.coexact = solver.a1().adjoint() * (solver.a1() * u);
    r.harmonic = solver.harmonic_projection(f);
    return r;
}

inline GridHodgeResult hodge_decompose_grid(const DiscreteComplex& c, const Eigen::VectorXcd& f,
                                            double tol = 1e-10) {
    return hodge_decompose_grid(Box1Solver(c), f, tol);
}

struct SolveD0GridResult {
    Eigen::VectorXcd u;
    double residual = 0;         // ||A0 u - f||
    double stability_ratio = 0;  // ||u|| / ||f||
};

/** Solves A0 u = f via u = A0^H N1 f; requires the discrete
 * compatibility condition A1 f = 0 and orthogonality to the harmonic
 * space. */
inline SolveD0GridResult solve_d0_grid(const Box1Solver& solver, const Eigen::VectorXcd& f,
                                       double tol = 1e-10) {
    SolveD0GridResult out;
    const double fn = f.norm();
    if (fn == 0.0) {
        out.u = Eigen::VectorXcd::Zero(solver.a0().cols());
        return out;
    }
    const double compat = (solver.a1() * f).norm();
    if (compat > tol * fn) throw compatibility_error("solve_d0_grid: A1 f != 0", compat);
    const double harm = solver.harmonic_projection(f).norm();
    if (harm > tol * fn)
        throw orthogonality_error("solve_d0_grid: f has a harmonic component", harm);

    const Eigen::VectorXcd w = solver.solve(f, tol);
    out.u = solver.a0().adjoint() * w;
    out.residual = (solver.a0() * out.u - f).norm();
    out.stability_ratio = out.u.norm() / fn;
    return out;
}

inline SolveD0GridResult solve_d0_grid(const DiscreteComplex& c, const Eigen::VectorXcd& f,
                                       double tol = 1e-10) {
    return solve_d0_grid(Box1Solver(c), f, tol);
}

struct SolveD1GridResult {
    Eigen::VectorXcd psi;
    double residual = 0;  // ||A1 psi - Psi||; evidence for discrete surjectivity of A1
};

/** Box field with its level tag, as carried by the file formats. */
struct BoxField {
    BoxGrid grid;
    int level = 0;
    int m = 0;
    Eigen::VectorXcd data;

    BoxField() = default;
    BoxField(const BoxGrid& g, int level_, int m_)
        : grid(g), level(level_), m(m_), data(Eigen::VectorXcd::Zero(g.sites(level_) * m_)) {
        if (level < 0 || level > 2) throw domain_error("BoxField: level must be 0, 1 or 2");
    }
};

/** Solves A1 psi = Psi via psi = A1^H (A1 A1^H)^{-1} Psi. The residual
 * is reported as the per-grid surjectivity check of the discrete A1. */
inline SolveD1GridResult solve_d1_grid(const DiscreteComplex& c, const Eigen::VectorXcd& rhs,
                                       double tol = 1e-10) {
    SolveD1GridResult out;
    const double fn = rhs.norm();
    if (fn == 0.0) {
        out.psi = Eigen::VectorXcd::Zero(c.a1.cols());
        return out;
    }
    SparseCx gram = c.a1 * SparseCx(c.a1.adjoint());
    gram.makeCompressed();
    Eigen::SimplicialLDLT<SparseCx> ldlt(gram);
    if (ldlt.info() != Eigen::Success)
        throw solver_error("solve_d1_grid: Gram factorization failed (A1 not surjective?)");
    Eigen::VectorXcd y = ldlt.solve(rhs);
    // One refinement pass tightens the Gram solve.
    y += ldlt.solve(rhs - gram * y);
    out.psi = c.a1.adjoint() * y;
    out.residual = (c.a1 * out.psi - rhs).norm();
    if (out.residual > tol * fn)
        throw solver_error("solve_d1_grid: residual above tolerance; discrete A1 not surjective");
    return out;
}

} // namespace fueter

#endif // FUETER_GRID_BVP_HPP
