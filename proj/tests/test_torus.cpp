#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <sstream>

#include "fueter/sampling.hpp"
#include "fueter/serialization.hpp"
#include "fueter/torus.hpp"

using namespace fueter;

namespace {
const TorusGrid kGrid(8, 1.0);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(TorusGrid(7, 1.0), domain_error);
    CHECK_THROWS_AS(TorusGrid(2, 1.0), domain_error);
    CHECK_THROWS_AS(TorusGrid(8, 0.0), domain_error);
    CHECK(kGrid.signed_index(3) == 3);
    CHECK(kGrid.signed_index(4) == -4);  // Nyquist
    CHECK(kGrid.signed_index(7) == -1);
}

TEST_CASE("apply_op: the complex property survives the transform") {
    Rng rng(1);
    for (int k = 2; k <= 4; ++k) {
        const Field phi = random_field(rng, kGrid, k + 1);
        const Field z = apply_op(build_d1(k), apply_op(build_d0(k), phi));
        CHECK(z.norm() < 1e-12 * phi.norm());
    }
}

TEST_CASE("apply_op kills constants") {
    Field c(kGrid, 3);
    for (auto& v : c.data) v = Complex(0.7, -0.3);
    CHECK(apply_op(build_d0(2), c).norm() < 1e-12 * c.norm());
    Field c4(kGrid, 4);
    for (auto& v : c4.data) v = Complex(1.0, 0.0);
    CHECK(apply_op(build_d1(2), c4).norm() < 1e-12 * c4.norm());
}

TEST_CASE("apply_op shape check") {
    CHECK_THROWS_AS(apply_op(build_d0(2), Field(kGrid, 4)), shape_error);
}

TEST_CASE("box1 action on a single mode") {
    // f = e^{2 pi i x0 / L} in component 0: box1 scales it by 2 (2 pi / L)^2.
    Field mode(kGrid, 4);
    const int n = kGrid.n;
    for (int i0 = 0; i0 < n; ++i0)
        for (int i1 = 0; i1 < n; ++i1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int i3 = 0; i3 < n; ++i3)
                    mode.at(mode.site_of(i0, i1, i2, i3), 0) =
                        std::exp(Complex(0, 2 * std::numbers::pi * i0 / n));
    const Field out = apply_op(box1(2), mode);
    const double expected = 2 * std::pow(2 * std::numbers::pi / kGrid.period, 2);
    for (long s = 0; s < kGrid.sites(); s += 97) {
        CHECK(std::abs(out.at(s, 0) - expected * mode.at(s, 0)) < 1e-10);
        CHECK(std::abs(out.at(s, 1)) < 1e-10);
    }
}

TEST_CASE("discrete Green identity on the torus") {
    Rng rng(2);
    for (int k = 2; k <= 4; ++k) {
        const FirstOrderOperator d0 = build_d0(k);
        const FirstOrderOperator d1 = build_d1(k);
        const Field u0 = random_field(rng, kGrid, k + 1);
        const Field v0 = random_field(rng, kGrid, 2 * k);
        const Complex lhs0 = inner(apply_op(d0, u0), v0);
        const Complex rhs0 = inner(u0, apply_op(formal_adjoint(d0), v0));
        CHECK(std::abs(lhs0 - rhs0) < 1e-12 * std::abs(lhs0));
        const Field u1 = random_field(rng, kGrid, 2 * k);
        const Field v1 = random_field(rng, kGrid, k - 1);
        const Complex lhs1 = inner(apply_op(d1, u1), v1);
        const Complex rhs1 = inner(u1, apply_op(formal_adjoint(d1), v1));
        CHECK(std::abs(lhs1 - rhs1) < 1e-12 * std::abs(lhs1));
    }
}

TEST_CASE("hodge decomposition reconstructs and is orthogonal") {
    Rng rng(3);
    for (int k = 2; k <= 4; ++k) {
        const Field f = random_field(rng, kGrid, 2 * k);
        const HodgeResult h = hodge_decompose(k, f);
        const double fn = f.norm();
        CHECK((h.exact + h.coexact + h.harmonic - f).norm() < 1e-10 * fn);
        CHECK(std::abs(inner(h.exact, h.coexact)) < 1e-10 * fn * fn);
        CHECK(std::abs(inner(h.exact, h.harmonic)) < 1e-10 * fn * fn);
        CHECK(std::abs(inner(h.coexact, h.harmonic)) < 1e-10 * fn * fn);
    }
}

TEST_CASE("hodge of an exact field has no coexact part") {
    Rng rng(4);
    for (int k = 2; k <= 3; ++k) {
        const Field g = random_field(rng, kGrid, k + 1);
        const Field f = apply_op(build_d0(k), g);
        const HodgeResult h = hodge_decompose(k, f);
        CHECK(h.coexact.norm() < 1e-10 * f.norm());
        CHECK(h.harmonic.norm() < 1e-10 * f.norm());  // mean of D0 g vanishes
        CHECK((h.exact - f).norm() < 1e-10 * f.norm());
    }
}

TEST_CASE("hodge of a constant is purely harmonic") {
    Field c(kGrid, 4);
    for (long s = 0; s < kGrid.sites(); ++s) c.at(s, 1) = Complex(2, 1);
    const HodgeResult h = hodge_decompose(2, c);
    CHECK(h.exact.norm() < 1e-12 * c.norm());
    CHECK(h.coexact.norm() < 1e-12 * c.norm());
    CHECK((h.harmonic - c).norm() < 1e-12 * c.norm());
}

TEST_CASE("solve_d0_torus round trip") {
    Rng rng(5);
    for (int k = 2; k <= 4; ++k) {
        const Field g = random_field(rng, kGrid, k + 1);
        const Field f = apply_op(build_d0(k), g);
        const Field u = solve_d0_torus(k, f, 1e-10);
        CHECK((apply_op(build_d0(k), u) - f).norm() < 1e-10 * f.norm());
    }
}

TEST_CASE("solve_d0_torus error paths") {
    Field c(kGrid, 4);
    for (auto& v : c.data) v = Complex(1, 0);
    CHECK_THROWS_AS(solve_d0_torus(2, c, 1e-10), orthogonality_error);

    const Field zero(kGrid, 4);
    CHECK(solve_d0_torus(2, zero).norm() == 0.0);

    Rng rng(6);
    const Field junk = random_field(rng, kGrid, 4);
    CHECK_THROWS_AS(solve_d0_torus(2, junk, 1e-10), compatibility_error);
}

TEST_CASE("solve_d1_torus round trip and errors") {
    Rng rng(7);
    for (int k = 2; k <= 4; ++k) {
        const Field psi0 = random_mean_zero_field(rng, kGrid, 2 * k);
        const Field rhs = apply_op(build_d1(k), psi0);
        const Field psi = solve_d1_torus(k, rhs, 1e-10);
        CHECK((apply_op(build_d1(k), psi) - rhs).norm() < 1e-10 * rhs.norm());
    }
    Field c(kGrid, 1);
    for (auto& v : c.data) v = Complex(1, 0);
    CHECK_THROWS_AS(solve_d1_torus(2, c, 1e-10), mean_mode_error);
    CHECK(solve_d1_torus(2, Field(kGrid, 1)).norm() == 0.0);
}

TEST_CASE("the second Laplacian symbol is 2|w|^2 times the identity") {
    Rng rng(8);
    for (int k = 2; k <= 5; ++k)
        for (int t = 0; t < 10; ++t) {
            const Vec4 w = 3.0 * random_unit4(rng);
            const SymbolMatrix s1 = symbol_fourier(build_d1(k), w);
            const SymbolMatrix gram = s1 * s1.adjoint();
            const SymbolMatrix expected =
                2 * w.squaredNorm() * SymbolMatrix::Identity(k - 1, k - 1);
            CHECK((gram - expected).norm() < 1e-12 * w.squaredNorm());
        }
}

TEST_CASE("torus harmonic space is the 2k constants") {
    for (int k = 2; k <= 4; ++k) {
        const std::vector<Field> basis = harmonic_space_torus(k, kGrid);
        REQUIRE(basis.size() == static_cast<size_t>(2 * k));
        for (const Field& e : basis) {
            CHECK(e.norm() == Catch::Approx(1.0).epsilon(1e-13));
            CHECK(apply_op(build_d1(k), e).norm() < 1e-13);
            CHECK(apply_op(formal_adjoint(build_d0(k)), e).norm() < 1e-13);
        }
    }
}

TEST_CASE("box1 action equals the composed first-order applications") {
    Rng rng(9);
    for (int k = 2; k <= 3; ++k) {
        const FirstOrderOperator d0 = build_d0(k);
        const FirstOrderOperator d1 = build_d1(k);
        const Field u = random_field(rng, kGrid, 2 * k);
        const Field via_box = apply_op(box1(k), u);
        const Field via_parts = apply_op(d0, apply_op(formal_adjoint(d0), u)) +
                                apply_op(formal_adjoint(d1), apply_op(d1, u));
        CHECK((via_box - via_parts).norm() < 1e-12 * via_box.norm());
    }
}

TEST_CASE("field JSON and binary round trips") {
    Rng rng(10);
    const Field f = random_field(rng, TorusGrid(4, 2.5), 3);
    const Field fj = field_from_json(to_json(f));
    REQUIRE(fj.grid == f.grid);
    REQUIRE(fj.m == f.m);
    CHECK(fj.data == f.data);  // bit-exact through JSON shortest-round-trip doubles

    std::stringstream ss;
    write_binary(ss, f);
    const Field fb = read_binary_field(ss);
    REQUIRE(fb.grid == f.grid);
    CHECK(fb.data == f.data);
}
