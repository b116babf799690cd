#pragma once

#include <vector>

#include "mvop/exact.hpp"
#include "mvop/matcore.hpp"
#include "mvop/szego.hpp"
#include "mvop/weights.hpp"

namespace mvop {

// Everything the asymptotic evaluators need, built once per family.
struct AsymContext {
    WeightFamily fam;
    SzegoData szego;
    EndpointSpectralData ep1;    // at +1: orders n_j, exponents alpha_j, constants c_j
    EndpointSpectralData epm1;   // at -1: orders m_j, exponents beta_j
    EndpointUnitaries U;
};

AsymContext make_context(const WeightFamily& fam);

// Outer asymptotics for 2^n P_n(z)/phi(z)^n; order 0 or 1 (Pi_1 correction).
CMatrix outer_eval(const AsymContext& ctx, int n, cplx z, int order);

// Pi_1(z) = -U1 diag(4a_j^2-1) U1^* / (8(phi-1)) + U_{-1} diag(4b_j^2-1) U_{-1}^* / (8(phi+1)).
CMatrix pi1_eval(const AsymContext& ctx, cplx z);

// Interior oscillatory asymptotics for 2^n P_n(x), |x| <= 0.99.
CMatrix inner_eval(const AsymContext& ctx, int n, double x);

// Endpoint Bessel regime near +1: approximates P_n(x) sqrt(W(x)), i.e. the
// 2^{-n} is already applied; compare against 2^{-n} * mvop_eval_scaled * sqrt(W).
CMatrix endpoint_eval(const AsymContext& ctx, int n, double x);

// Mehler-Heine limit D(inf) U1 diag(theta^{-a_j} J_{a_j}(theta)) and the
// finite-n left side built from an exact table.
CMatrix mehler_heine(const AsymContext& ctx, double theta);
CMatrix mh_lhs(const AsymContext& ctx, const RecurrenceTable& tab, int n, double theta);

// Recurrence-coefficient asymptotics: B_n ~ B2/n^2, C_n ~ I/4.
CMatrix asym_B2(const AsymContext& ctx);
void asym_recurrence(const AsymContext& ctx, int n, CMatrix& B_approx, CMatrix& C_approx);

// Literal closed forms for the two 2x2 example families (Jacobi ell=1 and
// the Gegenbauer block); mutual oracles for outer_eval/inner_eval.
CMatrix closed_form_outer(const WeightFamily& fam, cplx z);
CMatrix closed_form_inner(const WeightFamily& fam, int n, double x);

// Zero predictors: Jacobi two interlacing cosine groups; Gegenbauer double
// zeros (returned in group1, group2 empty). predicted_det: Gegenbauer
// determinant envelope (<= 0 everywhere).
void predicted_zeros(const WeightFamily& fam, int n, std::vector<double>& group1,
                     std::vector<double>& group2);
double predicted_det(const WeightFamily& fam, int n, double x);

// Closed-form recurrence coefficients quoted for the example families.
CMatrix jacobi_Cn_closed(double alpha, double beta, double k, int n);
CMatrix jacobi_B2_closed(double alpha, double beta, double k);
CMatrix geg_Btilde(double nu, int n);   // 3x3
CMatrix geg_Ctilde(double nu, int n);   // 3x3
CMatrix geg_block_B2_closed(double nu);
CMatrix geg_block_Bn_closed(double nu, int n);  // B2 / ((n+nu+1)(n+nu+2))

// Closed-form Mehler-Heine limits for the example families.
CMatrix jacobi_mh_closed(double alpha, double beta, double k, double theta);
CMatrix geg_block_mh_closed(double nu, double theta);

}  // namespace mvop
