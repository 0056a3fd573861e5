#ifndef FUETER_TORUS_HPP
#define FUETER_TORUS_HPP

#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "fueter/operators.hpp"

namespace fueter {

/** Uniform periodic grid on the 4-torus with n points per dimension
 * (even, >= 4) and period L; mode j carries frequency 2 pi s(j) / L
 * with signed index s(j) in [-n/2, n/2). */
struct TorusGrid {
    int n = 0;
    double period = 1.0;

    TorusGrid() = default;
    TorusGrid(int n_, double period_) : n(n_), period(period_) {
        if (n < 4 || n % 2 != 0) throw domain_error("TorusGrid: n must be even and >= 4");
        if (!(period > 0)) throw domain_error("TorusGrid: period must be positive");
    }

    long sites() const { return static_cast<long>(n) * n * n * n; }

    int signed_index(int j) const { return j < n / 2 ? j : j - n; }

    double frequency(int j) const { return 2.0 * std::numbers::pi * signed_index(j) / period; }

    friend bool operator==(const TorusGrid& a, const TorusGrid& b) {
        return a.n == b.n && a.period == b.period;
    }
};

/** Multi-component complex field sampled on a torus grid; data is
 * site-major (site index runs over (i0,i1,i2,i3) row-major), component
 * minor. */
struct Field {
    TorusGrid grid;
    int m = 0;
    std::vector<Complex> data;

    Field() = default;
    Field(const TorusGrid& g, int m_) : grid(g), m(m_), data(static_cast<size_t>(g.sites()) * m_) {}

    Complex& at(long site, int c) { return data[static_cast<size_t>(site) * m + c]; }
    const Complex& at(long site, int c) const { return data[static_cast<size_t>(site) * m + c]; }

    long site_of(int i0, int i1, int i2, int i3) const {
        const long n = grid.n;
        return ((static_cast<long>(i0) * n + i1) * n + i2) * n + i3;
    }

    double norm() const {
        double s = 0;
        for (const auto& v : data) s += std::norm(v);
        return std::sqrt(s);
    }

    Field& operator+=(const Field& o) {
        for (size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
        return *this;
    }
    Field& operator-=(const Field& o) {
        for (size_t i = 0; i < data.size(); ++i) data[i] -= o.data[i];
        return *this;
    }
    Field& operator*=(const Complex& s) {
        for (auto& v : data) v *= s;
        return *this;
    }
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
};

/** Hermitian inner product sum conj(u) . v over all sites and components. */
inline Complex inner(const Field& a, const Field& b) {
    if (a.data.size() != b.data.size()) throw shape_error("inner: field size mismatch");
    Complex s(0, 0);
    for (size_t i = 0; i < a.data.size(); ++i) s += std::conj(a.data[i]) * b.data[i];
    return s;
}

namespace detail {

/** In-place 4D DFT of a single-component array of size n^4, one
 * dimension at a time. forward = unscaled sum with e^{-i...}; inverse
 * applies the 1/n factor per dimension, so inv(fwd(x)) = x. */
inline void dft4(std::vector<Complex>& a, int n, bool forward) {
    Eigen::FFT<double> fft;
    std::vector<Complex> line(static_cast<size_t>(n)), lineout(static_cast<size_t>(n));
    const long n1 = n, n2 = static_cast<long>(n) * n, n3 = n2 * n;
    const long strides[4] = {n3, n2, n1, 1};
    for (int dim = 0; dim < 4; ++dim) {
        const long stride = strides[dim];
        const long lines = n3;  // n^4 / n
        for (long l = 0; l < lines; ++l) {
            // Decompose l into the three non-transformed coordinates.
            long rest = l, base = 0;
            for (int d = 3; d >= 0; --d) {
                if (d == dim) continue;
                base += (rest % n) * strides[d];
                rest /= n;
            }
            for (int j = 0; j < n; ++j) line[j] = a[base + stride * j];
            if (forward)
                fft.fwd(lineout, line);
            else
                fft.inv(lineout, line);
            for (int j = 0; j < n; ++j) a[base + stride * j] = lineout[j];
        }
    }
}

/** Splits a field into per-component spectral arrays. */
inline std::vector<std::vector<Complex>> to_spectrum(const Field& f) {
    const long sites = f.grid.sites();
    std::vector<std::vector<Complex>> hat(f.m, std::vector<Complex>(sites));
    for (int c = 0; c < f.m; ++c) {
        for (long s = 0; s < sites; ++s) hat[c][s] = f.at(s, c);
        dft4(hat[c], f.grid.n, true);
    }
    return hat;
}

inline Field from_spectrum(const TorusGrid& grid, std::vector<std::vector<Complex>>& hat) {
    Field f(grid, static_cast<int>(hat.size()));
    const long sites = grid.sites();
    for (int c = 0; c < f.m; ++c) {
        dft4(hat[c], grid.n, false);
        for (long s = 0; s < sites; ++s) f.at(s, c) = hat[c][s];
    }
    return f;
}

/** Iterates all modes, handing the per-mode frequency vector and the
 * flat mode index to fn. */
template <class Fn>
void for_each_mode(const TorusGrid& g, Fn&& fn) {
    long s = 0;
    Vec4 w;
    for (int i0 = 0; i0 < g.n; ++i0)
        for (int i1 = 0; i1 < g.n; ++i1)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i3 = 0; i3 < g.n; ++i3, ++s) {
                    w << g.frequency(i0), g.frequency(i1), g.frequency(i2), g.frequency(i3);
                    fn(s, w);
                }
}

} // namespace detail

/** Applies a constant-coefficient operator by per-mode symbol
 * multiplication; exact for band-limited data. */
template <class Op>
Field apply_op(const Op& op, const Field& f) {
    if (op.cols != f.m) throw shape_error("apply_op: op.cols != field components");
    auto hat = detail::to_spectrum(f);
    std::vector<std::vector<Complex>> out(static_cast<size_t>(op.rows),
                                          std::vector<Complex>(f.grid.sites()));
    Eigen::VectorXcd in_mode(op.cols), out_mode(op.rows);
    detail::for_each_mode(f.grid, [&](long s, const Vec4& w) {
        const SymbolMatrix sym = symbol_fourier(op, w);
        for (int c = 0; c < op.cols; ++c) in_mode(c) = hat[c][s];
        out_mode = sym * in_mode;
        for (int c = 0; c < op.rows; ++c) out[c][s] = out_mode(c);
    });
    return detail::from_spectrum(f.grid, out);
}

/** Orthogonal splitting of a 2k-component field into the range of D0,
 * the range of D1*, and the harmonic (mean-mode) part. */
struct HodgeResult {
    Field exact;
    Field coexact;
    Field harmonic;
};

/** Per-mode Hodge decomposition: for every nonzero mode solve the
 * positive-definite system (S0 S0^H + S1^H S1) x = f and split f into
 * S0 S0^H x + S1^H S1 x; the zero mode is harmonic. */
inline HodgeResult hodge_decompose(int k, const Field& f) {
    if (f.m != 2 * k) throw shape_error("hodge_decompose: field must have 2k components");
    const FirstOrderOperator d0 = build_d0(k);
    const FirstOrderOperator d1 = build_d1(k);

    auto hat = detail::to_spectrum(f);
    const long sites = f.grid.sites();
    std::vector<std::vector<Complex>> ex(static_cast<size_t>(2 * k), std::vector<Complex>(sites)),
        co(static_cast<size_t>(2 * k), std::vector<Complex>(sites)),
        ha(static_cast<size_t>(2 * k), std::vector<Complex>(sites));

    Eigen::VectorXcd fm(2 * k);
    detail::for_each_mode(f.grid, [&](long s, const Vec4& w) {
        for (int c = 0; c < 2 * k; ++c) fm(c) = hat[c][s];
        if (w.norm() == 0.0) {
            for (int c = 0; c < 2 * k; ++c) ha[c][s] = fm(c);
            return;
        }
        const SymbolMatrix s0 = symbol_fourier(d0, w);
        const SymbolMatrix s1 = symbol_fourier(d1, w);
        const SymbolMatrix sys = s0 * s0.adjoint() + s1.adjoint() * s1;
        Eigen::LLT<SymbolMatrix> llt(sys);
        if (llt.info() != Eigen::Success)
            throw ellipticity_error("hodge_decompose: mode system not positive definite");
        const Eigen::VectorXcd x = llt.solve(fm);
        const Eigen::VectorXcd e = s0 * (s0.adjoint() * x);
        const Eigen::VectorXcd c2 = s1.adjoint() * (s1 * x);
        for (int c = 0; c < 2 * k; ++c) {
            ex[c][s] = e(c);
            co[c][s] = c2(c);
        }
    });

    HodgeResult r;
    r.exact = detail::from_spectrum(f.grid, ex);
    r.coexact = detail::from_spectrum(f.grid, co);
    r.harmonic = detail::from_spectrum(f.grid, ha);
    return r;
}

/** Mean-mode magnitude |f_hat(0)| (l2 over components, spectral scale). */
inline double mean_mode_norm(const Field& f) {
    const long sites = f.grid.sites();
    Eigen::VectorXcd mean = Eigen::VectorXcd::Zero(f.m);
    for (long s = 0; s < sites; ++s)
        for (int c = 0; c < f.m; ++c) mean(c) += f.at(s, c);
    // Match the l2 field norm scale: a constant field c has norm |c| sqrt(sites).
    return mean.norm() / std::sqrt(static_cast<double>(sites));
}

/** Solves D0 u = f on the torus via u_hat = S0^H (S0 S0^H + S1^H S1)^{-1} f_hat.
 * Requires the compatibility condition D1 f = 0 and a vanishing mean mode. */
inline Field solve_d0_torus(int k, const Field& f, double tol = 1e-10) {
    if (f.m != 2 * k) throw shape_error("solve_d0_torus: field must have 2k components");
    const FirstOrderOperator d0 = build_d0(k);
    const FirstOrderOperator d1 = build_d1(k);
    const double fn = f.norm();
    if (fn == 0.0) return Field(f.grid, k + 1);

    const double compat = apply_op(d1, f).norm();
    if (compat > tol * fn) throw compatibility_error("solve_d0_torus: D1 f != 0", compat);
    const double mm = mean_mode_norm(f);
    if (mm > tol * fn)
        throw orthogonality_error("solve_d0_torus: f has a harmonic (mean) component", mm);

    auto hat = detail::to_spectrum(f);
    std::vector<std::vector<Complex>> out(static_cast<size_t>(k + 1),
                                          std::vector<Complex>(f.grid.sites()));
    Eigen::VectorXcd fm(2 * k);
    detail::for_each_mode(f.grid, [&](long s, const Vec4& w) {
        if (w.norm() == 0.0) return;  // mean mode already checked small; drop it
        for (int c = 0; c < 2 * k; ++c) fm(c) = hat[c][s];
        const SymbolMatrix s0 = symbol_fourier(d0, w);
        const SymbolMatrix s1 = symbol_fourier(d1, w);
        const SymbolMatrix sys = s0 * s0.adjoint() + s1.adjoint() * s1;
        const Eigen::VectorXcd u = s0.adjoint() * Eigen::LLT<SymbolMatrix>(sys).solve(fm);
        for (int c = 0; c < k + 1; ++c) out[c][s] = u(c);
    });
    return detail::from_spectrum(f.grid, out);
}

/** Solves D1 psi = Psi via psi_hat = S1^H Psi_hat / (2 |w|^2), using
 * S1 S1^H = 2 |w|^2 I (the composed Laplacian of the second operator).
 * The mean mode must vanish: constants are reached only by non-periodic
 * linear fields, so the zero mode is rejected. */
inline Field solve_d1_torus(int k, const Field& psi_rhs, double tol = 1e-10) {
    if (psi_rhs.m != k - 1) throw shape_error("solve_d1_torus: field must have k-1 components");
    const FirstOrderOperator d1 = build_d1(k);
    const double fn = psi_rhs.norm();
    if (fn == 0.0) return Field(psi_rhs.grid, 2 * k);

    const double mm = mean_mode_norm(psi_rhs);
    if (mm > tol * fn) throw mean_mode_error("solve_d1_torus: nonzero mean mode", mm);

    auto hat = detail::to_spectrum(psi_rhs);
    std::vector<std::vector<Complex>> out(static_cast<size_t>(2 * k),
                                          std::vector<Complex>(psi_rhs.grid.sites()));
    Eigen::VectorXcd pm(k - 1);
    detail::for_each_mode(psi_rhs.grid, [&](long s, const Vec4& w) {
        const double w2 = w.squaredNorm();
        if (w2 == 0.0) return;
        for (int c = 0; c < k - 1; ++c) pm(c) = hat[c][s];
        const Eigen::VectorXcd u = symbol_fourier(d1, w).adjoint() * (pm / (2.0 * w2));
        for (int c = 0; c < 2 * k; ++c) out[c][s] = u(c);
    });
    return detail::from_spectrum(psi_rhs.grid, out);
}

/** Basis of the torus harmonic space {f : D1 f = 0, D0* f = 0}: the 2k
 * constant fields, normalized to unit l2 norm. */
inline std::vector<Field> harmonic_space_torus(int k, const TorusGrid& grid) {
    if (k < 2) throw domain_error("harmonic_space_torus: k must be >= 2");
    std::vector<Field> basis;
    const double v = 1.0 / std::sqrt(static_cast<double>(grid.sites()));
    for (int c = 0; c < 2 * k; ++c) {
        Field f(grid, 2 * k);
        for (long s = 0; s < grid.sites(); ++s) f.at(s, c) = v;
        basis.push_back(std::move(f));
    }
    return basis;
}

/** Solution operator of box1 on the torus: per-mode inverse of
 * (S0 S0^H + S1^H S1) on nonzero modes, zero on the mean mode. */
inline Field solve_box1_torus(int k, const Field& f) {
    if (f.m != 2 * k) throw shape_error("solve_box1_torus: field must have 2k components");
    const FirstOrderOperator d0 = build_d0(k);
    const FirstOrderOperator d1 = build_d1(k);
    auto hat = detail::to_spectrum(f);
    std::vector<std::vector<Complex>> out(static_cast<size_t>(2 * k),
                                          std::vector<Complex>(f.grid.sites()));
    Eigen::VectorXcd fm(2 * k);
    detail::for_each_mode(f.grid, [&](long s, const Vec4& w) {
        if (w.norm() == 0.0) return;
        for (int c = 0; c < 2 * k; ++c) fm(c) = hat[c][s];
        const SymbolMatrix s0 = symbol_fourier(d0, w);
        const SymbolMatrix s1 = symbol_fourier(d1, w);
        const SymbolMatrix sys = s0 * s0.adjoint() + s1.adjoint() * s1;
        const Eigen::VectorXcd u = Eigen::LLT<SymbolMatrix>(sys).solve(fm);
        for (int c = 0; c < 2 * k; ++c) out[c][s] = u(c);
    });
    return detail::from_spectrum(f.grid, out);
}

} // namespace fueter

#endif // FUETER_TORUS_HPP
