#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "mvop/specfun.hpp"

using namespace mvop;

namespace {
constexpr double PI = 3.14159265358979323846;
}

TEST_CASE("gamma_real") {
    CHECK(gamma_real(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_real(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_real(0.5) == doctest::Approx(std::sqrt(PI)).epsilon(1e-13));
    for (double x : {0.3, 1.7, 4.2, 7.9})
        CHECK(gamma_real(x + 1.0) == doctest::Approx(x * gamma_real(x)).epsilon(1e-12));
    CHECK(gamma_real(-0.5) == doctest::Approx(-2.0 * std::sqrt(PI)).epsilon(1e-12));
    CHECK_THROWS(gamma_real(0.0));
    CHECK_THROWS(gamma_real(-3.0));
}

TEST_CASE("bessel_j values") {
    CHECK(bessel_j(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bessel_j(0.5, PI / 2) == doctest::Approx(2.0 / PI).epsilon(1e-13));
    // small-argument leading term J_1(x) ~ x/2
    CHECK(bessel_j(1.0, 1e-4) == doctest::Approx(5e-5).epsilon(1e-8));
    // half-integer closed form J_{3/2}
    for (double x : {0.5, 2.0, 7.0}) {
        const double ref = std::sqrt(2.0 / (PI * x)) * (std::sin(x) / x - std::cos(x));
        CHECK(bessel_j(1.5, x) == doctest::Approx(ref).epsilon(1e-12));
    }
    // three-term recurrence J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu
    for (double nu : {0.5, 1.0, 2.3}) {
        for (double x : {0.7, 3.0, 11.0}) {
            const double lhs = bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x);
            const double rhs = 2.0 * nu / x * bessel_j(nu, x);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
    CHECK_THROWS(bessel_j(0.0, 61.0));
    CHECK_THROWS(bessel_j(-1.5, 1.0));
}

TEST_CASE("bessel_j_prime") {
    CHECK(bessel_j_prime(0.0, 1.0) == doctest::Approx(-bessel_j(1.0, 1.0)).epsilon(1e-13));
    // finite-difference oracle
    for (double nu : {0.7, 0.0, 1.5, -0.3}) {
        const double x = 2.0, h = 1e-5;
        const double fd = (bessel_j(nu, x + h) - bessel_j(nu, x - h)) / (2 * h);
        CHECK(std::abs(bessel_j_prime(nu, x) - fd) <= 1e-7);
    }
    // J'_{1/2} closed form sqrt(2/(pi x)) (cos x - sin x / (2x))
    const double x = PI / 2;
    const double ref = std::sqrt(2.0 / (PI * x)) * (std::cos(x) - std::sin(x) / (2 * x));
    CHECK(bessel_j_prime(0.5, x) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("krawtchouk") {
    for (int x = 0; x <= 4; ++x) CHECK(krawtchouk(0, x, 0.3, 4) == doctest::Approx(1.0));
    for (int i = 0; i <= 4; ++i) CHECK(krawtchouk(i, 0, 0.3, 4) == doctest::Approx(1.0));
    // the 2F1(-i,-x;-N;1/p) form is symmetric in (i,x)
    const double p = 0.37;
    const int N = 5;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            CHECK(std::abs(krawtchouk(i, j, p, N) - krawtchouk(j, i, p, N)) <=
                  1e-12 * std::max(1.0, std::abs(krawtchouk(j, i, p, N))));
}

TEST_CASE("phi_map") {
    CHECK(std::abs(phi_map(2.0) - (2.0 + std::sqrt(3.0))) <= 1e-14);
    CHECK(std::abs(phi_map(1e6) / 2e6 - 1.0) <= 1e-12);
    for (cplx z : {cplx(0.3, 0.8), cplx(-2.0, 0.1), cplx(1.4, -0.7)}) {
        CHECK(std::abs(phi_map(std::conj(z)) - std::conj(phi_map(z))) <= 1e-13);
        CHECK(std::abs(phi_map(z)) > 1.0);
    }
    // boundary values multiply to 1 and are conjugate on (-1,1)
    for (int i = 0; i <= 100; ++i) {
        const double x = -0.99 + 1.98 * i / 100;
        const cplx fp = phi_boundary(x, +1), fm = phi_boundary(x, -1);
        CHECK(std::abs(fp * fm - 1.0) <= 1e-14);
        CHECK(std::abs(fp - std::conj(fm)) <= 1e-14);
        CHECK(std::abs(fp - std::exp(cplx(0, arccos_stable(x)))) <= 1e-13);
    }
}

TEST_CASE("arccos_stable") {
    for (double x : {-0.999999, -0.5, 0.0, 0.5, 0.999999})
        CHECK(arccos_stable(x) == doctest::Approx(std::acos(x)).epsilon(1e-13));
    CHECK(arccos_stable(1.0) == doctest::Approx(0.0));
    CHECK(arccos_stable(-1.0) == doctest::Approx(PI));
}

TEST_CASE("branch_pow") {
    BranchSpec s{Cut::LeftOfOne, 0.5};
    CHECK(std::abs(branch_pow(5.0, s) - 2.0) <= 1e-14);
    // boundary value from above at x = 0: (x-1)^{1/2}_+ = i
    CHECK(std::abs(branch_pow_boundary(0.0, s, +1) - cplx(0, 1)) <= 1e-14);
    CHECK(std::abs(branch_pow_boundary(0.0, s, -1) - cplx(0, -1)) <= 1e-14);
    // boundary limits: approach monotonically
    double prev = 1e9;
    for (double eps : {1e-4, 1e-6, 1e-8}) {
        const double d = std::abs(branch_pow(cplx(0.0, eps), s) - branch_pow_boundary(0.0, s, +1));
        CHECK(d < prev);
        prev = d;
    }
    CHECK_THROWS(branch_pow(cplx(0.0, 0.0), s));

    BranchSpec q{Cut::RightOfMinusOne, 0.5};
    CHECK(std::abs(branch_pow(-5.0, q) - 2.0) <= 1e-14);
    CHECK_THROWS(branch_pow(cplx(3.0, 0.0), q));

    BranchSpec pr{Cut::Principal, 0.25};
    CHECK(std::abs(branch_pow(16.0, pr) - 2.0) <= 1e-13);
}

TEST_CASE("sqrt_z2m1 factor-split branch") {
    // analytic and real off [-1,1], including on (-infty,-1) and (1,infty)
    CHECK(std::abs(sqrt_z2m1(2.0) - std::sqrt(3.0)) <= 1e-14);
    CHECK(std::abs(sqrt_z2m1(-2.0) + std::sqrt(3.0)) <= 1e-14);  // phi(-2) outside disk
    // continuity across (-infty,-1)
    const cplx up = sqrt_z2m1(cplx(-3.0, 1e-9));
    const cplx dn = sqrt_z2m1(cplx(-3.0, -1e-9));
    CHECK(std::abs(up - dn) <= 1e-7);
    // pow_z2m1 with e = 1/2 agrees with sqrt_z2m1
    for (cplx z : {cplx(2.0, 0.5), cplx(-1.5, 0.2), cplx(0.1, 1.0)})
        CHECK(std::abs(pow_z2m1(z, 0.5) - sqrt_z2m1(z)) <= 1e-13 * std::abs(sqrt_z2m1(z)));
    // phi identity: z + sqrt_z2m1 has modulus > 1
    for (cplx z : {cplx(0.2, 0.3), cplx(-0.7, -0.05)})
        CHECK(std::abs(z + sqrt_z2m1(z)) > 1.0);
}
