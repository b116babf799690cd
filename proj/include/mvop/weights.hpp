#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mvop/matcore.hpp"

namespace mvop {

enum class FamilyKind { Jacobi, Gegenbauer, GegenbauerBlock2, Custom };

// Weight W(x) = (1-x)^alpha (1+x)^beta H(x), H analytic Hermitian,
// positive definite on (-1,1), not identically zero at +-1.
struct WeightFamily {
    FamilyKind kind = FamilyKind::Custom;
    int r = 0;
    double alpha = 0.0, beta = 0.0;
    int degH = 0;
    std::string label;
    std::string scalar_note;  // record of any dropped inessential scalar factor
    double dropped_scalar = 1.0;

    // family parameters (meaningful per kind)
    double k = 0.0, p = 0.0, nu = 0.0;
    int two_ell = 0;

    // factor matrices (real): Jacobi upper-triangular R; Gegenbauer K, T(diag), R
    CMatrix R, K, T;
    double jac_scale = 1.0;  // scale applied to the factorized Jacobi H

    std::vector<CMatrix> coef;  // custom: H(x) = sum coef[d] x^d

    CMatrix H(double x) const;
    CMatrix W(double x) const;  // (1-x)^alpha (1+x)^beta H(x)
};

// Jacobi-type family, r = ell+1, parameters alpha, beta > -1, 0 < k < alpha+1.
// H built from the triangular factorization; at ell = 1 normalized to the
// explicit 2x2 form (dropped scalar k/p recorded).
WeightFamily jacobi_family(double alpha, double beta, double k, int ell);

// Gegenbauer-type family, r = two_ell+1 (two_ell = 2*ell, ell half-integer),
// alpha = beta = nu - 1/2.
WeightFamily gegenbauer_family(double nu, int two_ell);

// The irreducible 2x2 Gegenbauer block, alpha = beta = nu - 1/2,
// H = [[2(nu+1)x^2+2nu, (2nu+1)sqrt2 x], [(2nu+1)sqrt2 x, nu x^2+nu+1]].
WeightFamily gegenbauer_block2(double nu);

// User-supplied polynomial H given by real/complex coefficient matrices.
WeightFamily custom_family(double alpha, double beta, std::vector<CMatrix> coef);

// Orthogonal reduction matrix for the Gegenbauer family (Y Y^T = I exactly).
CMatrix gegenbauer_Y(int two_ell);

struct EigPathPoint {
    std::vector<double> lam;
    CMatrix Q;
};

// Eigen-decomposition along an ascending grid with labels and column phases
// matched by overlap with the previous point (first point: ascending order,
// largest-modulus component made real positive).
std::vector<EigPathPoint> eig_path(const WeightFamily& fam, const std::vector<double>& grid);

struct EndpointSpectralData {
    int endpoint = 1;                // +1 or -1
    std::vector<int> orders;         // n_j (at +1) or m_j (at -1)
    std::vector<double> exponents;   // alpha + n_j or beta + m_j
    std::vector<double> constants;   // c_j (at +1 only; empty at -1)
};

// Vanishing orders / exponents / Mehler-Heine constants. Built-in 2x2
// families use analytic values; otherwise log-log slope estimation with
// Richardson-extrapolated constants.
EndpointSpectralData endpoint_data(const WeightFamily& fam, int endpoint);

// Eigenvalues/eigenvectors of the 2x2 built-in H at complex z, labeled by the
// explicit rho-formulas (lam[0] is the branch with lam[0](1) = lambda_1(1)).
// Columns of Q: Jacobi (1,-rho_j)/sqrt(1+rho_j^2); Gegenbauer block
// (rho_j,1)/sqrt(1+rho_j^2). Custom r=2: quadratic-formula branch.
void eig2_analytic(const WeightFamily& fam, cplx z, cplx lam[2], CMatrix& Q);

}  // namespace mvop
