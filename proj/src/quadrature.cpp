#include "mvop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "mvop/specfun.hpp"

namespace mvop {

double jacobi_mass(double a, double b) {
    return std::pow(2.0, a + b + 1.0) * gamma_real(a + 1.0) * gamma_real(b + 1.0) /
           gamma_real(a + b + 2.0);
}

QuadRule gauss_jacobi(int m, double a, double b) {
    if (m < 1) throw std::domain_error("gauss_jacobi: m must be >= 1");
    if (a <= -1.0 || b <= -1.0) throw std::domain_error("gauss_jacobi: a,b must be > -1");

    // symmetric tridiagonal from the monic Jacobi recurrence
    std::vector<double> d(m), e(m > 1 ? m - 1 : 0);
    d[0] = (b - a) / (a + b + 2.0);
    for (int kk = 1; kk < m; ++kk) {
        const double s = 2.0 * kk + a + b;
        d[kk] = (b * b - a * a) / (s * (s + 2.0));
    }
    for (int kk = 1; kk < m; ++kk) {
        double bk;
        if (kk == 1) {
            bk = 4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
        } else {
            const double s = 2.0 * kk + a + b;
            bk = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (s * s * (s + 1.0) * (s - 1.0));
        }
        e[kk - 1] = std::sqrt(bk);
    }

    // implicit QL with Wilkinson shifts, tracking the first row of the
    // accumulated rotations (all a Golub-Welsch weight needs)
    std::vector<double> z(m, 0.0);
    z[0] = 1.0;
    std::vector<double> ee(m, 0.0);
    for (int i = 0; i + 1 < m; ++i) ee[i] = e[i];
    const double eps = 2.22e-16;
    for (int l = 0; l < m; ++l) {
        int iter = 0;
        for (;;) {
            int mm = l;
            for (; mm < m - 1; ++mm)
                if (std::abs(ee[mm]) <= eps * (std::abs(d[mm]) + std::abs(d[mm + 1]))) break;
            if (mm == l) break;
            if (++iter > 60) throw std::runtime_error("gauss_jacobi: QL iteration did not converge");
            double g = (d[l + 1] - d[l]) / (2.0 * ee[l]);
            double r = std::hypot(g, 1.0);
            g = d[mm] - d[l] + ee[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = mm - 1; i >= l; --i) {
                double f = s * ee[i];
                const double bb = c * ee[i];
                r = std::hypot(f, g);
                ee[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    ee[mm] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] -= p;
            ee[l] = g;
            ee[mm] = 0.0;
        }
    }

    const double mu0 = jacobi_mass(a, b);
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });
    QuadRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < m; ++i) {
        rule.nodes[i] = d[idx[i]];
        rule.weights[i] = mu0 * z[idx[i]] * z[idx[i]];
    }
    return rule;
}

CMatrix matrix_inner(const std::function<CMatrix(double)>& P,
                     const std::function<CMatrix(double)>& Q,
                     const WeightFamily& fam, int m) {
    QuadRule rule = gauss_jacobi(m, fam.alpha, fam.beta);
    CMatrix acc(fam.r);
    for (int i = 0; i < m; ++i) {
        const double x = rule.nodes[i];
        acc += rule.weights[i] * (P(x) * fam.H(x) * Q(x).adjoint());
    }
    return acc;
}

int default_nodes(const WeightFamily& fam, int nmax) {
    if (const char* env = std::getenv("MVOP_QUAD_NODES")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return nmax + 2 + (fam.degH + 1) / 2 + 8;
}

}  // namespace mvop
