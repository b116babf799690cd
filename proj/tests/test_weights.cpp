#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "mvop/weights.hpp"

using namespace mvop;

TEST_CASE("Jacobi ell=1 explicit 2x2 H") {
    // p = k (alpha+1-k)/(alpha+1)... at alpha=1, k=1: p = 1
    WeightFamily fam = jacobi_family(1.0, 2.0, 1.0, 1);
    CHECK(fam.r == 2);
    CHECK(fam.p == doctest::Approx(1.0));
    CMatrix H0 = fam.H(0.0);
    CHECK(std::abs(H0(0, 0) - 6.0 / 4.0) <= 1e-13);
    CHECK(std::abs(H0(0, 1) - 2.0 / 4.0) <= 1e-13);
    CHECK(std::abs(H0(1, 0) - 2.0 / 4.0) <= 1e-13);
    CHECK(std::abs(H0(1, 1) - 1.0 / 4.0) <= 1e-13);
    // H(x) = (1/4) [[4+2p+2px, 2(1-x)], [2(1-x), (1-x)^2]] on a grid
    const double p = fam.p;
    for (int i = 0; i <= 10; ++i) {
        const double x = -0.9 + 0.18 * i;
        CMatrix H = fam.H(x);
        CHECK(std::abs(H(0, 0) - 0.25 * (4 + 2 * p + 2 * p * x)) <= 1e-13);
        CHECK(std::abs(H(0, 1) - 0.25 * 2 * (1 - x)) <= 1e-13);
        CHECK(std::abs(H(1, 1) - 0.25 * (1 - x) * (1 - x)) <= 1e-13);
    }
    // H(1) = (1/4) diag(4+4p, 0): singular at the right endpoint
    CMatrix H1 = fam.H(1.0);
    CHECK(std::abs(H1(0, 0) - 0.25 * (4 + 4 * p)) <= 1e-13);
    CHECK(std::abs(det(H1)) <= 1e-13);
}

TEST_CASE("Jacobi ell=2 is Hermitian with real polynomial entries") {
    WeightFamily fam = jacobi_family(2.0, 1.0, 1.5, 2);
    CHECK(fam.r == 3);
    for (double x : {-0.8, -0.2, 0.4, 0.95}) {
        CMatrix H = fam.H(x);
        CHECK((H - H.adjoint()).fro() <= 1e-12 * H.fro());
        HermEig e = herm_eig(H);
        CHECK(e.lam[0] > 0.0);  // positive definite inside (-1,1)
    }
}

TEST_CASE("Gegenbauer block2 explicit H") {
    const double nu = 0.75;
    WeightFamily fam = gegenbauer_block2(nu);
    CHECK(fam.alpha == doctest::Approx(nu - 0.5));
    CHECK(fam.beta == doctest::Approx(nu - 0.5));
    CMatrix H0 = fam.H(0.0);
    CHECK(std::abs(H0(0, 0) - 2 * nu) <= 1e-13);
    CHECK(std::abs(H0(1, 1) - (nu + 1)) <= 1e-13);
    CHECK(std::abs(H0(0, 1)) <= 1e-15);
    // H(1) has rank 1
    CHECK(std::abs(det(fam.H(1.0))) <= 1e-12);
    CHECK(std::abs(fam.H(1.0)(0, 0) - (4 * nu + 2)) <= 1e-12);
}

TEST_CASE("Gegenbauer Y reduction") {
    for (int two_ell : {1, 2, 3, 4}) {
        CMatrix Y = gegenbauer_Y(two_ell);
        const int r = two_ell + 1;
        CHECK((Y * Y.transpose() - CMatrix::identity(r)).fro() <= 1e-14 * r);
    }
    // Y W Y^T block-diagonal for two_ell = 2; upper 2x2 block proportional to
    // the block2 family H (scalar (2nu+1)/(2+nu) dropped there)
    const double nu = 0.5;
    WeightFamily full = gegenbauer_family(nu, 2);
    WeightFamily blk = gegenbauer_block2(nu);
    CMatrix Y = gegenbauer_Y(2);
    for (int i = 0; i <= 10; ++i) {
        const double x = -0.95 + 0.19 * i;
        CMatrix G = Y * full.H(x) * Y.transpose();
        // off-diagonal coupling between the 2x2 block and the scalar vanishes
        CHECK(std::abs(G(0, 2)) <= 1e-12);
        CHECK(std::abs(G(1, 2)) <= 1e-12);
        CMatrix B(2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) B(a, b) = G(a, b);
        const double s = (2 + nu) / (2 * nu + 1);  // block2 drops (2nu+1)/(2+nu)
        CMatrix ref = blk.H(x);
        CHECK((B - s * ref).fro() <= 1e-12 * B.fro());
    }
}

TEST_CASE("custom family") {
    WeightFamily id = custom_family(0.3, 0.7, {CMatrix::identity(2)});
    CHECK(id.r == 2);
    CHECK((id.H(0.5) - CMatrix::identity(2)).fro() <= 1e-15);
    CMatrix W = id.W(0.5);
    CHECK(std::abs(W(0, 0) - std::pow(0.5, 0.3) * std::pow(1.5, 0.7)) <= 1e-14);

    // diag(1, (1-x)^2): endpoint orders (0,2) at +1
    CMatrix c0 = CMatrix::identity(2), c1(2), c2(2);
    c0(1, 1) = 1.0;
    c1(1, 1) = -2.0;
    c2(1, 1) = 1.0;
    WeightFamily dg = custom_family(0.5, 0.0, {c0, c1, c2});
    EndpointSpectralData ep = endpoint_data(dg, +1);
    REQUIRE(ep.orders.size() == 2);
    // numeric path lists branches by ascending eigenvalue near the endpoint
    CHECK(std::min(ep.orders[0], ep.orders[1]) == 0);
    CHECK(std::max(ep.orders[0], ep.orders[1]) == 2);
    for (size_t j = 0; j < 2; ++j)
        CHECK(ep.exponents[j] == doctest::Approx(0.5 + ep.orders[j]).epsilon(1e-6));

    // non-Hermitian coefficient rejected, error names a grid point
    CMatrix bad(2);
    bad(0, 1) = 1.0;
    CHECK_THROWS(custom_family(0.0, 0.0, {CMatrix::identity(2), bad}));
}

TEST_CASE("custom re-entry of the Jacobi H matches the built-in on a grid") {
    WeightFamily jac = jacobi_family(1.0, 2.0, 1.0, 1);
    const double p = jac.p;
    CMatrix c0(2), c1(2), c2(2);
    c0(0, 0) = 0.25 * (4 + 2 * p);
    c0(0, 1) = c0(1, 0) = 0.5;
    c0(1, 1) = 0.25;
    c1(0, 0) = 0.5 * p;
    c1(0, 1) = c1(1, 0) = -0.5;
    c1(1, 1) = -0.5;
    c2(1, 1) = 0.25;
    WeightFamily cus = custom_family(1.0, 2.0, {c0, c1, c2});
    for (double x : {-0.9, -0.3, 0.0, 0.6, 0.99})
        CHECK((cus.H(x) - jac.H(x)).fro() <= 1e-13);
}

TEST_CASE("eig_path continuity and reconstruction") {
    WeightFamily fam = jacobi_family(1.0, 2.0, 1.0, 1);
    std::vector<double> grid;
    for (int i = 0; i <= 200; ++i) grid.push_back(-0.99 + 1.98 * i / 200);
    auto path = eig_path(fam, grid);
    REQUIRE(path.size() == grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        const auto& pt = path[i];
        CMatrix R = pt.Q * diag_matrix(pt.lam) * pt.Q.adjoint();
        CHECK((R - fam.H(grid[i])).fro() <= 1e-11);
        if (i > 0) {
            // labeled branches move continuously
            CHECK(std::abs(pt.lam[0] - path[i - 1].lam[0]) <= 0.1);
            CHECK(std::abs(pt.lam[1] - path[i - 1].lam[1]) <= 0.1);
        }
    }
}

TEST_CASE("eig2_analytic matches eig_path branches on the real line") {
    for (const WeightFamily& fam :
         {jacobi_family(1.0, 2.0, 1.0, 1), gegenbauer_block2(0.5)}) {
        for (double x : {-0.6, 0.1, 0.7}) {
            cplx lam[2];
            CMatrix Q(2);
            eig2_analytic(fam, cplx(x, 0.0), lam, Q);
            // eigen-equation residual
            for (int j = 0; j < 2; ++j) {
                CMatrix H = fam.H(x);
                cplx v0 = Q(0, j), v1 = Q(1, j);
                const cplx r0 = H(0, 0) * v0 + H(0, 1) * v1 - lam[j] * v0;
                const cplx r1 = H(1, 0) * v0 + H(1, 1) * v1 - lam[j] * v1;
                CHECK(std::abs(r0) + std::abs(r1) <= 1e-11);
            }
        }
    }
}

TEST_CASE("endpoint_data for the built-in 2x2 families") {
    const double alpha = 1.0, beta = 2.0, k = 1.0;
    WeightFamily jac = jacobi_family(alpha, beta, k, 1);
    const double p = jac.p;
    EndpointSpectralData ep = endpoint_data(jac, +1);
    REQUIRE(ep.orders.size() == 2);
    CHECK(ep.orders[0] == 0);
    CHECK(ep.orders[1] == 2);
    CHECK(ep.exponents[0] == doctest::Approx(alpha));
    CHECK(ep.exponents[1] == doctest::Approx(alpha + 2));
    // Mehler-Heine constants c_1 = 2^{beta-alpha}(1+p), c_2 = 2^{beta-alpha-4} p/(1+p)
    REQUIRE(ep.constants.size() == 2);
    CHECK(ep.constants[0] ==
          doctest::Approx(std::pow(2.0, beta - alpha) * (1 + p)).epsilon(1e-10));
    CHECK(ep.constants[1] ==
          doctest::Approx(std::pow(2.0, beta - alpha - 4) * p / (1 + p)).epsilon(1e-10));

    EndpointSpectralData em = endpoint_data(jac, -1);
    CHECK(em.orders[0] == 0);
    CHECK(em.orders[1] == 1);

    const double nu = 0.75;
    WeightFamily blk = gegenbauer_block2(nu);
    EndpointSpectralData eb = endpoint_data(blk, +1);
    CHECK(eb.orders[0] == 0);
    CHECK(eb.orders[1] == 2);
    CHECK(eb.exponents[0] == doctest::Approx(nu - 0.5));
    CHECK(eb.exponents[1] == doctest::Approx(nu + 1.5));
    CHECK(eb.constants[0] == doctest::Approx(3 * (1 + 2 * nu)).epsilon(1e-10));
    CHECK(eb.constants[1] ==
          doctest::Approx(2 * nu * (1 + nu) / (3 * (1 + 2 * nu))).epsilon(1e-10));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(jacobi_family(-1.5, 0.0, 0.5, 1));
    CHECK_THROWS(jacobi_family(1.0, 2.0, 3.0, 1));  // k < alpha+1 violated
    CHECK_THROWS(gegenbauer_block2(0.0));
    CHECK_THROWS(gegenbauer_family(0.5, 0));
}
