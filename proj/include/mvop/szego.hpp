#pragma once

#include <functional>

#include "mvop/matcore.hpp"
#include "mvop/weights.hpp"

namespace mvop {

// Matrix Szego data: D analytic and invertible off [-1,1], boundary
// factorization D_+ D_+^* = D_- D_-^* = W, invertible limit D(inf).
struct SzegoData {
    std::function<CMatrix(cplx)> D;
    std::function<CMatrix(double)> Dplus;
    std::function<CMatrix(double)> Dminus;
    CMatrix Dinf;
};

// Per-family explicit Szego functions (Jacobi any ell, Gegenbauer any 2l,
// Gegenbauer 2x2 block). Custom families have none (throws).
SzegoData make_szego(const WeightFamily& fam);

// Third factorization, available for 2x2 families with analytic
// eigen-evaluators. V: cut (-inf,1]; Vhat: cut [-1,inf).
CMatrix V_eval(const WeightFamily& fam, cplx z);
CMatrix Vhat_eval(const WeightFamily& fam, cplx z);
CMatrix V_boundary(const WeightFamily& fam, double x, int side);

// A(z) = ((z+1)^{1/2} + (z-1)^{1/2})/sqrt2 * D(z)^{-1} V(z), near z = 1.
CMatrix A_eval(const WeightFamily& fam, cplx z);
CMatrix A_boundary(const WeightFamily& fam, double x, int side);

struct EndpointUnitaries {
    CMatrix U1, Um1;
    bool closed_form = false;
};

// U_1 = lim_{z->1} D^{-1} V, U_{-1} = lim_{z->-1} D^{-1} Vhat.
// Closed forms for the built-in 2x2 families; Richardson extrapolation
// otherwise.
EndpointUnitaries endpoint_unitaries(const WeightFamily& fam);
EndpointUnitaries endpoint_unitaries_extrapolated(const WeightFamily& fam);

}  // namespace mvop
