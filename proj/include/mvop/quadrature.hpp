#pragma once

#include <functional>
#include <vector>

#include "mvop/matcore.hpp"
#include "mvop/weights.hpp"

namespace mvop {

// Gauss-Jacobi rule for (1-x)^a (1+x)^b on [-1,1]; nodes ascending.
struct QuadRule {
    double a = 0.0, b = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Golub-Welsch: symmetric tridiagonal eigenproblem from the monic Jacobi
// recurrence, implicit QL with Wilkinson shifts.
QuadRule gauss_jacobi(int m, double a, double b);

// Total mass 2^{a+b+1} B(a+1, b+1).
double jacobi_mass(double a, double b);

// sum_k w_k P(x_k) H(x_k) Q(x_k)^* on the family's (alpha,beta) rule.
CMatrix matrix_inner(const std::function<CMatrix(double)>& P,
                     const std::function<CMatrix(double)>& Q,
                     const WeightFamily& fam, int m);

// Node count so that polynomials through degree nmax (plus H) integrate
// exactly, with safety margin.
int default_nodes(const WeightFamily& fam, int nmax);

}  // namespace mvop
