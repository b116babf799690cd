#include "mvop/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mvop {

HermEig herm_eig(const CMatrix& A) {
    const int r = A.dim();
    const double anorm = A.fro();
    // symmetrize (input is required Hermitian up to roundoff)
    CMatrix B(r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) B(i, j) = 0.5 * (A(i, j) + std::conj(A(j, i)));
    double herm_dev = (A - B).fro();
    if (anorm > 0 && herm_dev > 1e-10 * anorm)
        throw std::invalid_argument("herm_eig: input not Hermitian within tolerance");

    CMatrix Q = CMatrix::identity(r);
    const double tol = 1e-14 * std::max(anorm, 1e-300);
    const int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) off += std::norm(B(i, j));
        off = std::sqrt(2 * off);
        if (off <= tol) break;
        for (int p = 0; p < r; ++p)
            for (int q = p + 1; q < r; ++q) {
                const cplx h = B(p, q);
                const double ah = std::abs(h);
                if (ah <= tol / (r * r)) continue;
                const double a = B(p, p).real();
                const double b = B(q, q).real();
                const cplx u = h / ah;  // phase
                double t;
                if (a == b) {
                    t = 1.0;
                } else {
                    const double tau = (b - a) / (2 * ah);
                    t = ((tau >= 0) ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1 + t * t);
                const double s = t * c;
                // apply R on the right of B and Q, R^H on the left of B;
                // R = I except R_pp=c, R_pq=s*u, R_qp=-s*conj(u), R_qq=c
                for (int i = 0; i < r; ++i) {
                    const cplx bip = B(i, p), biq = B(i, q);
                    B(i, p) = c * bip - s * std::conj(u) * biq;
                    B(i, q) = s * u * bip + c * biq;
                }
                for (int j = 0; j < r; ++j) {
                    const cplx bpj = B(p, j), bqj = B(q, j);
                    B(p, j) = c * bpj - s * u * bqj;
                    B(q, j) = s * std::conj(u) * bpj + c * bqj;
                }
                for (int i = 0; i < r; ++i) {
                    const cplx qip = Q(i, p), qiq = Q(i, q);
                    Q(i, p) = c * qip - s * std::conj(u) * qiq;
                    Q(i, q) = s * u * qip + c * qiq;
                }
            }
    }
    if (sweep == max_sweeps)
        throw std::runtime_error("herm_eig: no convergence after 100 sweeps");

    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<double> d(r);
    for (int i = 0; i < r; ++i) d[i] = B(i, i).real();
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });

    HermEig out;
    out.lam.resize(r);
    out.Q = CMatrix(r);
    for (int j = 0; j < r; ++j) {
        out.lam[j] = d[idx[j]];
        for (int i = 0; i < r; ++i) out.Q(i, j) = Q(i, idx[j]);
    }
    return out;
}

CMatrix sqrt_psd(const CMatrix& A) {
    const int r = A.dim();
    HermEig e = herm_eig(A);
    const double anorm = A.fro();
    std::vector<double> s(r);
    for (int j = 0; j < r; ++j) {
        double l = e.lam[j];
        if (l < -1e-12 * std::max(anorm, 1.0))
            throw std::invalid_argument("sqrt_psd: not positive semidefinite");
        s[j] = std::sqrt(std::max(l, 0.0));
    }
    return e.Q * diag_matrix(s) * e.Q.adjoint();
}

CMatrix inv(const CMatrix& A) {
    const int r = A.dim();
    // augmented [A | I], partial pivoting
    std::vector<std::vector<cplx>> m(r, std::vector<cplx>(2 * r));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) m[i][j] = A(i, j);
        m[i][r + i] = 1.0;
    }
    for (int col = 0; col < r; ++col) {
        int piv = col;
        for (int i = col + 1; i < r; ++i)
            if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
        if (std::abs(m[piv][col]) < 1e-300)
            throw std::runtime_error("inv: singular matrix, pivot " + std::to_string(std::abs(m[piv][col])));
        std::swap(m[col], m[piv]);
        const cplx d = m[col][col];
        for (int j = col; j < 2 * r; ++j) m[col][j] /= d;
        for (int i = 0; i < r; ++i) {
            if (i == col) continue;
            const cplx f = m[i][col];
            if (f == cplx(0.0)) continue;
            for (int j = col; j < 2 * r; ++j) m[i][j] -= f * m[col][j];
        }
    }
    CMatrix out(r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) out(i, j) = m[i][r + j];
    return out;
}

cplx det(const CMatrix& A) {
    const int r = A.dim();
    std::vector<std::vector<cplx>> m(r, std::vector<cplx>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m[i][j] = A(i, j);
    cplx d = 1.0;
    for (int col = 0; col < r; ++col) {
        int piv = col;
        for (int i = col + 1; i < r; ++i)
            if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
        if (std::abs(m[piv][col]) == 0.0) return 0.0;
        if (piv != col) {
            std::swap(m[col], m[piv]);
            d = -d;
        }
        d *= m[col][col];
        for (int i = col + 1; i < r; ++i) {
            const cplx f = m[i][col] / m[col][col];
            for (int j = col; j < r; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return d;
}

}  // namespace mvop
