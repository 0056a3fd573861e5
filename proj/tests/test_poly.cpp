#include <catch2/catch_amalgamated.hpp>

#include "fueter/poly.hpp"
#include "fueter/sampling.hpp"
#include "fueter/serialization.hpp"

using namespace fueter;

namespace {

PolyField random_poly(Rng& rng, int m, int degree) {
    PolyField p(m, degree);
    for (int c = 0; c < m; ++c)
        for (int d = 0; d <= degree; ++d)
            for (const auto& mono : monomials_of_degree(d)) p.set(c, mono, random_complex(rng));
    return p;
}

double residual_norm(const FirstOrderOperator& op, const PolyField& phi, const PolyField& rhs) {
    PolyField r = apply_poly(op, phi);
    for (int c = 0; c < rhs.m; ++c)
        for (const auto& [a, v] : rhs.comps[c]) r.comps[c][a] -= v;
    return r.norm();
}

} // namespace

TEST_CASE("monomial bases have the right sizes") {
    CHECK(monomials_of_degree(0).size() == 1);
    CHECK(monomials_of_degree(1).size() == 4);
    CHECK(monomials_of_degree(2).size() == 10);
    CHECK(monomials_of_degree(3).size() == 20);
    CHECK(monomials_of_degree(-1).empty());
}

TEST_CASE("apply_poly differentiates one monomial by hand") {
    // phi = (x0, 0, 0): D0 phi = (0, 1, 0, 0) since dz0 x0 = 1 and the
    // first column's other entry -dz1b kills x0.
    PolyField phi(3, 1);
    phi.set(0, {1, 0, 0, 0}, Complex(1, 0));
    const PolyField psi = apply_poly(build_d0(2), phi);
    CHECK(psi.get(0, {0, 0, 0, 0}) == Complex(0, 0));
    CHECK(psi.get(1, {0, 0, 0, 0}) == Complex(1, 0));
    CHECK(psi.get(2, {0, 0, 0, 0}) == Complex(0, 0));
    CHECK(psi.get(3, {0, 0, 0, 0}) == Complex(0, 0));
    CHECK(psi.norm() == 1.0);
}

TEST_CASE("apply_poly annihilates constants") {
    Rng rng(1);
    for (int k = 2; k <= 4; ++k) {
        PolyField c(k + 1, 0);
        for (int i = 0; i <= k; ++i) c.set(i, {0, 0, 0, 0}, random_complex(rng));
        CHECK(apply_poly(build_d0(k), c).norm() == 0.0);
    }
}

TEST_CASE("apply_poly respects the complex property") {
    Rng rng(2);
    for (int k = 2; k <= 4; ++k) {
        const PolyField phi = random_poly(rng, k + 1, 3);
        const PolyField psi = apply_poly(build_d0(k), phi);
        CHECK(apply_poly(build_d1(k), psi).norm() < 1e-12 * phi.norm());
    }
    CHECK_THROWS_AS(apply_poly(build_d0(2), PolyField(5, 1)), shape_error);
}

TEST_CASE("solve_d0_poly on zero input") {
    const PolyField phi = solve_d0_poly(2, PolyField(4, 2));
    CHECK(phi.norm() == 0.0);
}

TEST_CASE("solve_d0_poly recovers a constant right-hand side") {
    PolyField psi(4, 0);
    psi.set(1, {0, 0, 0, 0}, Complex(1, 0));
    const PolyField phi = solve_d0_poly(2, psi);
    CHECK(residual_norm(build_d0(2), phi, psi) < 1e-12);
    CHECK(phi.degree <= 1);
}

TEST_CASE("solve_d0_poly round trip at degree 3") {
    Rng rng(3);
    for (int k = 2; k <= 5; ++k)
        for (int t = 0; t < (k <= 3 ? 5 : 2); ++t) {
            const PolyField phi0 = random_poly(rng, k + 1, 3);
            const PolyField psi = apply_poly(build_d0(k), phi0);
            const PolyField phi = solve_d0_poly(k, psi, 1e-10);
            CHECK(residual_norm(build_d0(k), phi, psi) < 1e-10 * std::max(1.0, psi.norm()));
        }
}

TEST_CASE("solve_d0_poly rejects incompatible data") {
    // psi with D1 psi != 0: x0 in the first slot meets -dz0 in the D1 row.
    PolyField psi(4, 1);
    psi.set(0, {1, 0, 0, 0}, Complex(1, 0));
    CHECK(apply_poly(build_d1(2), psi).norm() > 0.5);
    CHECK_THROWS_AS(solve_d0_poly(2, psi), compatibility_error);
}

TEST_CASE("kernel and image dimensions match per degree") {
    for (int k = 2; k <= 5; ++k)
        for (int d = 0; d <= 3; ++d) {
            const DegreeExactnessReport r = degree_exactness(k, d);
            INFO("k=" << k << " d=" << d << " ker=" << r.dim_ker_d1 << " rank=" << r.rank_d0);
            CHECK(r.dim_ker_d1 == r.rank_d0);
        }
}

TEST_CASE("polynomial JSON round trip") {
    Rng rng(4);
    const PolyField p = random_poly(rng, 4, 2);
    const PolyField q = poly_from_json(to_json(p));
    REQUIRE(q.m == p.m);
    CHECK(q.degree == p.degree);
    for (int c = 0; c < p.m; ++c) CHECK(q.comps[c] == p.comps[c]);
}
