#pragma once

#include <string>
#include <vector>

#include "mvop/matcore.hpp"
#include "mvop/weights.hpp"

namespace mvop {

// Monic three-term recurrence data x P_n = P_{n+1} + B_n P_n + C_n P_{n-1},
// Gamma_n = <P_n, P_n> Hermitian positive definite. Tables are immutable
// after construction; evaluation is pure.
struct RecurrenceTable {
    WeightFamily fam;
    int nmax = 0;
    int quad_nodes = 0;
    std::vector<CMatrix> B;      // n = 0..nmax-1
    std::vector<CMatrix> C;      // n = 1..nmax-1 (C[0] present but zero)
    std::vector<CMatrix> Gamma;  // n = 0..nmax-1
};

// Matrix Stieltjes procedure on quadrature node values (no coefficient
// basis). m = 0 selects the default node count; MVOP_QUAD_NODES is applied
// by the harness, not here. Throws naming n if Gamma_n loses positive
// definiteness.
RecurrenceTable stieltjes(const WeightFamily& fam, int nmax, int m = 0);

// 2^n P_n(x) via the doubled recurrence (no underflow on [-1,1]).
CMatrix mvop_eval_scaled(const RecurrenceTable& tab, int n, double x);

// 2^n P_n(z) / phi(z)^n via the bounded ratio recurrence; requires
// dist(z, [-1,1]) >= 1e-3.
CMatrix mvop_eval_outer(const RecurrenceTable& tab, int n, cplx z);

// Ascending zeros of det P_n in (-1,1): Chebyshev-grid sign scan with
// bisection, plus golden-section refinement of near-double minima.
std::vector<double> det_zeros(const RecurrenceTable& tab, int n);

// JSON export {family, nmax, quad_nodes, B, C, Gamma} with entries as
// nested [re, im] pairs.
std::string table_to_json(const RecurrenceTable& tab);

}  // namespace mvop
