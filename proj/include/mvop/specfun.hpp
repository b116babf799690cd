#pragma once

#include <complex>
#include <stdexcept>

namespace mvop {

using cplx = std::complex<double>;

// Gamma function for real x (Lanczos g=7, 9 terms; reflection for x < 0.5).
double gamma_real(double x);

// Bessel J_nu(x) for nu > -1, 0 <= x <= 60, by the ascending series with
// compensated summation. The cutoff is enforced, not silently degraded.
double bessel_j(double nu, double x);

// J_nu'(x): J_{nu-1} - (nu/x) J_nu for nu >= 0; differentiated series for
// -1 < nu < 0.
double bessel_j_prime(double nu, double x);

// Krawtchouk polynomial K_i(x; p, N), normalized so K_i(0) = 1
// (terminating 2F1(-i, -x; -N; 1/p) sum).
double krawtchouk(int i, int x, double p, int N);

// theta(x) = arccos x via atan2 for accuracy near the endpoints.
double arccos_stable(double x);

// Conformal map phi(z) = z + (z-1)^{1/2}(z+1)^{1/2}, cut [-1,1], |phi| > 1.
cplx phi_map(cplx z);

// Boundary values phi_{+-}(x) = e^{+- i arccos x} on (-1,1).
cplx phi_boundary(double x, int side);

enum class Cut {
    LeftOfOne,        // (z-1)^e, analytic off (-infty, 1], positive for z > 1
    RightOfMinusOne,  // (-1-z)^e, analytic off [-1, infty), positive for z < -1
    Principal         // z^e, principal branch, cut (-infty, 0]
};

struct BranchSpec {
    Cut cut;
    double exponent;
};

// Fractional power with the declared cut; throws if z lies on the cut.
cplx branch_pow(cplx z, const BranchSpec& spec);

// One-sided limit on the cut: side = +1 (from above) or -1 (from below).
cplx branch_pow_boundary(double x, const BranchSpec& spec, int side);

// Factor-split helpers with cut exactly [-1,1]:
// (z^2-1)^{1/2} = (z-1)^{1/2}(z+1)^{1/2} and
// (z^2-1)^e = exp(e (Log(z-1) + Log(z+1))).
cplx sqrt_z2m1(cplx z);
cplx pow_z2m1(cplx z, double e);

}  // namespace mvop
