#include <catch2/catch_amalgamated.hpp>

#include "fueter/sampling.hpp"
#include "fueter/shapiro_lopatinskii.hpp"

using namespace fueter;

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(SLInstance(1, Vec4(1, 0, 0, 0), Vec4(0, 0, 1, 0)), domain_error);
    CHECK_THROWS_AS(SLInstance(2, Vec4(2, 0, 0, 0), Vec4(0, 0, 1, 0)), domain_error);
    CHECK_THROWS_AS(SLInstance(2, Vec4(1, 0, 0, 0), Vec4::Zero()), domain_error);
    CHECK_THROWS_AS(SLInstance(2, Vec4(1, 0, 0, 0), Vec4(1, 0, 1, 0)), domain_error);
}

TEST_CASE("mu frames at axis normals") {
    const SLFrames f0 = mu_frames(Vec4(1, 0, 0, 0));
    CHECK(f0.mu == Vec4(0, 0, 1, 0));
    CHECK(f0.mu_tilde == Vec4(0, 0, 0, 1));
    const SLFrames f1 = mu_frames(Vec4(0, 1, 0, 0));
    CHECK(f1.mu == Vec4(0, 0, 0, 1));
    CHECK(f1.mu_tilde == Vec4(0, 0, -1, 0));
}

TEST_CASE("mu frames are orthonormal to nu") {
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        const Vec4 nu = random_unit4(rng);
        const SLFrames f = mu_frames(nu);
        CHECK(std::abs(f.mu.norm() - 1.0) < 1e-14);
        CHECK(std::abs(f.mu_tilde.norm() - 1.0) < 1e-14);
        CHECK(std::abs(f.mu.dot(nu)) < 1e-14);
        CHECK(std::abs(f.mu_tilde.dot(nu)) < 1e-14);
        CHECK(std::abs(f.mu.dot(f.mu_tilde)) < 1e-14);
    }
}

TEST_CASE("lambda coupling") {
    SECTION("axis normal, tangential xi in the mu plane saturates |xi|") {
        const double a = 0.8, b = -1.3;
        const SLInstance inst(2, Vec4(1, 0, 0, 0), Vec4(0, 0, a, b));
        const Complex lam = lambda_coupling(inst);
        CHECK(lam == Complex(-b, a));  // i a - b
        CHECK(std::abs(lam) == Catch::Approx(inst.xi.norm()).epsilon(1e-14));
    }
    SECTION("linearity in xi") {
        const SLInstance one(3, Vec4(1, 0, 0, 0), Vec4(0, 0.4, 1.0, -0.2));
        const SLInstance two(3, Vec4(1, 0, 0, 0), Vec4(0, 0.8, 2.0, -0.4));
        CHECK(std::abs(lambda_coupling(two) - 2.0 * lambda_coupling(one)) < 1e-14);
    }
    SECTION("|Lambda| <= |xi| always; both ends of the ratio range occur") {
        Rng rng(4);
        double rmin = 2, rmax = 0;
        for (int t = 0; t < 500; ++t) {
            const Vec4 nu = random_unit4(rng);
            const Vec4 xi = random_tangent_unit(rng, nu);
            const SLInstance inst(2, nu, xi);
            const double ratio = std::abs(lambda_coupling(inst)) / xi.norm();
            CHECK(ratio <= 1.0 + 1e-12);
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
        }
        CHECK(rmin < 0.5);
        CHECK(rmax > 0.9);
    }
}

TEST_CASE("reduced matrix shapes and entries") {
    const SLInstance k2(2, Vec4(1, 0, 0, 0), Vec4(0, 0, 1, 0));
    const SymbolMatrix m2 = sl_reduced_matrix(k2);
    REQUIRE(m2.rows() == 1);
    CHECK(m2(0, 0) == Complex(-2, 0));

    const SLInstance k3(3, Vec4(1, 0, 0, 0), Vec4(0, 0, 1, 0));
    const SymbolMatrix m3 = sl_reduced_matrix(k3);
    const Complex lam = lambda_coupling(k3);
    REQUIRE(m3.rows() == 2);
    CHECK(m3(0, 0) == Complex(-2, 0));
    CHECK(m3(1, 1) == Complex(-2, 0));
    CHECK(m3(0, 1) == std::conj(lam));
    CHECK(m3(1, 0) == lam);
    CHECK(std::abs(m3.determinant() - Complex(4 * k3.xi.squaredNorm() - std::norm(lam), 0)) <
          1e-13);

    const SLInstance k5(5, Vec4(1, 0, 0, 0), Vec4(0, 0.6, 0.8, 0));
    const SymbolMatrix m5 = sl_reduced_matrix(k5);
    REQUIRE(m5.rows() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j)
                CHECK(m5(i, j) == Complex(-2 * k5.xi.norm(), 0));
            else if (j == i + 1)
                CHECK(m5(i, j) == std::conj(lambda_coupling(k5)));
            else if (i == j + 1)
                CHECK(m5(i, j) == lambda_coupling(k5));
            else
                CHECK(m5(i, j) == Complex(0, 0));
        }
}

TEST_CASE("pivot recursion, frozen k=3 instance with |Lambda| = |xi| = 1") {
    const SLInstance inst(3, Vec4(1, 0, 0, 0), Vec4(0, 0, 1, 0));
    REQUIRE(std::abs(lambda_coupling(inst)) == Catch::Approx(1.0));
    const SLReducedReport rep = sl_reduced_nonsingular(inst);
    REQUIRE(rep.pivots.size() == 2);
    CHECK(rep.pivots[0] == Catch::Approx(-2.0));
    CHECK(rep.pivots[1] == Catch::Approx(-1.5));
    CHECK(rep.det.real() == Catch::Approx(3.0));
    CHECK(std::abs(rep.det.imag()) < 1e-14);
    CHECK(rep.nonsingular);
}

TEST_CASE("k=2 reduced determinant is -2|xi|") {
    Rng rng(6);
    for (int t = 0; t < 20; ++t) {
        const Vec4 nu = random_unit4(rng);
        const Vec4 xi = 1.7 * random_tangent_unit(rng, nu);
        const SLReducedReport rep = sl_reduced_nonsingular(SLInstance(2, nu, xi));
        CHECK(rep.det.real() == Catch::Approx(-2 * xi.norm()).epsilon(1e-12));
        CHECK(rep.nonsingular);
    }
}

TEST_CASE("reduced check sweep: all pivots below -|xi|") {
    Rng rng(8);
    for (int k = 2; k <= 8; ++k)
        for (int t = 0; t < 60; ++t) {
            const Vec4 nu = random_unit4(rng);
            const Vec4 xi = random_tangent_unit(rng, nu);
            const SLReducedReport rep = sl_reduced_nonsingular(SLInstance(k, nu, xi));
            CHECK(rep.nonsingular);
            for (double p : rep.pivots) CHECK(p < -xi.norm());
            // |det| >= |xi|^{k-1} follows from the pivot bound.
            CHECK(std::abs(rep.det) >= std::pow(xi.norm(), k - 1) * (1 - 1e-12));
        }
}

TEST_CASE("direct check on the canonical instance") {
    const SLInstance inst(2, Vec4(1, 0, 0, 0), Vec4(0, 0, 1, 0));
    const SLDirectReport rep = sl_direct_check(inst);
    CHECK(rep.decaying_dim == 4);
    CHECK(rep.sigma_min > 1e-6);
    CHECK(rep.regular);
}

TEST_CASE("direct check sweep agrees with the reduction") {
    Rng rng(10);
    for (int k = 2; k <= 5; ++k)
        for (int t = 0; t < 12; ++t) {
            const Vec4 nu = random_unit4(rng);
            const Vec4 xi = random_tangent_unit(rng, nu);
            const SLInstance inst(k, nu, xi);
            const SLDirectReport dir = sl_direct_check(inst);
            const SLReducedReport red = sl_reduced_nonsingular(inst);
            CHECK(dir.decaying_dim == 2 * k);
            CHECK(dir.sigma_min > 1e-6);
            CHECK(dir.regular == red.nonsingular);  // both affirm
        }
}
