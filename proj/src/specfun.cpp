#include "mvop/specfun.hpp"

#include <cmath>

namespace mvop {

double gamma_real(double x) {
    if (x > 170.7 || x < -170.0) throw std::domain_error("gamma_real: |x| too large");
    if (x <= 0.0 && x == std::floor(x)) throw std::domain_error("gamma_real: pole at nonpositive integer");
    if (x < 0.5) {
        // reflection
        return M_PI / (std::sin(M_PI * x) * gamma_real(1.0 - x));
    }
    static const double g = 7.0;
    static const double c[9] = {
        0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
        771.32342877765313,    -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};
    const double z = x - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
    const double t = z + g + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double bessel_j(double nu, double x) {
    if (nu <= -1.0) throw std::domain_error("bessel_j: order must be > -1");
    if (x < 0.0) throw std::domain_error("bessel_j: argument must be >= 0");
    if (x > 60.0) throw std::domain_error("bessel_j: argument above series accuracy cutoff 60");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double h = 0.5 * x;
    double term = std::pow(h, nu) / gamma_real(nu + 1.0);
    double sum = term, comp = 0.0;
    for (int k = 1; k < 400; ++k) {
        term *= -(h * h) / (k * (k + nu));
        // Kahan step
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double bessel_j_prime(double nu, double x) {
    if (nu <= -1.0) throw std::domain_error("bessel_j_prime: order must be > -1");
    if (x <= 0.0) {
        if (nu >= 1.0 && x == 0.0) return nu == 1.0 ? 0.5 : 0.0;
        throw std::domain_error("bessel_j_prime: argument must be > 0");
    }
    if (x > 60.0) throw std::domain_error("bessel_j_prime: argument above series accuracy cutoff 60");
    // downward form keeps both orders > -1 (nu - 1 would hit -1 at nu = 0)
    if (nu >= 0.0) return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
    // -1 < nu < 0: term-wise differentiated series,
    // d/dx sum (-1)^k (x/2)^{2k+nu} / (k! G(k+nu+1))
    const double h = 0.5 * x;
    double term = 0.5 * nu * std::pow(h, nu - 1.0) / gamma_real(nu + 1.0);
    double base = std::pow(h, nu - 1.0) / gamma_real(nu + 1.0);  // carries (x/2)^{2k+nu-1}/(k!G(k+nu+1))
    double sum = term, comp = 0.0;
    for (int k = 1; k < 400; ++k) {
        base *= -(h * h) / (k * (k + nu));
        term = 0.5 * (2 * k + nu) * base;
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double krawtchouk(int i, int x, double p, int N) {
    if (i < 0 || x < 0 || N < 0) throw std::domain_error("krawtchouk: negative argument");
    if (i > N) throw std::domain_error("krawtchouk: i > N");
    if (p <= 0.0 || p >= 1.0) throw std::domain_error("krawtchouk: p must be in (0,1)");
    // terminating 2F1(-i,-x;-N;1/p): sum_k (-i)_k (-x)_k / ((-N)_k k!) p^{-k}
    double sum = 1.0, t = 1.0;
    for (int k = 0; k < i; ++k) {
        if (k >= x) return sum;  // (-x)_k vanished
        t *= static_cast<double>(-i + k) * static_cast<double>(-x + k) /
             (static_cast<double>(-N + k) * (k + 1)) / p;
        sum += t;
    }
    return sum;
}

double arccos_stable(double x) { return std::atan2(std::sqrt(std::max(0.0, 1.0 - x * x)), x); }

cplx sqrt_z2m1(cplx z) { return std::sqrt(z - 1.0) * std::sqrt(z + 1.0); }

cplx pow_z2m1(cplx z, double e) { return std::exp(e * (std::log(z - 1.0) + std::log(z + 1.0))); }

cplx phi_map(cplx z) {
    if (z.imag() == 0.0 && z.real() >= -1.0 && z.real() <= 1.0)
        throw std::domain_error("phi_map: z on [-1,1]; use phi_boundary");
    return z + sqrt_z2m1(z);
}

cplx phi_boundary(double x, int side) {
    if (x <= -1.0 || x >= 1.0) throw std::domain_error("phi_boundary: x must be in (-1,1)");
    const double th = arccos_stable(x);
    return std::polar(1.0, side >= 0 ? th : -th);
}

cplx branch_pow(cplx z, const BranchSpec& spec) {
    const double e = spec.exponent;
    switch (spec.cut) {
        case Cut::LeftOfOne:
            if (z.imag() == 0.0 && z.real() <= 1.0)
                throw std::domain_error("branch_pow: z on cut (-inf,1]; use branch_pow_boundary");
            return std::pow(z - 1.0, e);
        case Cut::RightOfMinusOne:
            if (z.imag() == 0.0 && z.real() >= -1.0)
                throw std::domain_error("branch_pow: z on cut [-1,inf); use branch_pow_boundary");
            return std::pow(-(z + 1.0), e);
        case Cut::Principal:
            if (z.imag() == 0.0 && z.real() <= 0.0)
                throw std::domain_error("branch_pow: z on cut (-inf,0]; use branch_pow_boundary");
            return std::pow(z, e);
    }
    throw std::logic_error("branch_pow: bad cut");
}

cplx branch_pow_boundary(double x, const BranchSpec& spec, int side) {
    const double e = spec.exponent;
    const double s = side >= 0 ? 1.0 : -1.0;
    switch (spec.cut) {
        case Cut::LeftOfOne:
            // (x-1)^e_{+-} = e^{+- i pi e} (1-x)^e for x < 1
            if (x > 1.0) return std::pow(x - 1.0, e);
            return std::polar(std::pow(1.0 - x, e), s * M_PI * e);
        case Cut::RightOfMinusOne:
            // (-1-x)^e_{+-} = e^{-+ i pi e} (1+x)^e for x > -1
            if (x < -1.0) return std::pow(-1.0 - x, e);
            return std::polar(std::pow(1.0 + x, e), -s * M_PI * e);
        case Cut::Principal:
            if (x > 0.0) return std::pow(x, e);
            return std::polar(std::pow(-x, e), s * M_PI * e);
    }
    throw std::logic_error("branch_pow_boundary: bad cut");
}

}  // namespace mvop
