#include "mvop/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mvop/specfun.hpp"

namespace mvop {

namespace {

double binom_real(double a, int kk) {
    double out = 1.0;
    for (int i = 0; i < kk; ++i) out *= (a - i) / (i + 1);
    return out;
}

double poch(double a, int n) {
    double out = 1.0;
    for (int i = 0; i < n; ++i) out *= a + i;
    return out;
}

CMatrix jacobi_H_eval(const WeightFamily& f, double x) {
    const int ell = f.two_ell / 2;
    const int dim = ell + 1;
    std::vector<cplx> d1(dim), d2(dim);
    for (int j = 0; j < dim; ++j) {
        d1[j] = std::pow(1.0 - x, j);
        d2[j] = std::pow(1.0 + x, ell - j);
    }
    CMatrix H = diag_matrix(d1) * f.R * diag_matrix(d2) * f.R.transpose() * diag_matrix(d1);
    return f.jac_scale * H;
}

CMatrix geg_H_eval(const WeightFamily& f, double x) {
    const int N = f.two_ell;
    const int dim = N + 1;
    const double sm = std::sqrt(std::max(0.0, 1.0 - x));
    const double sp = std::sqrt(std::max(0.0, 1.0 + x));
    std::vector<cplx> ups(dim);
    const cplx iunit(0.0, 1.0);
    for (int j = 0; j < dim; ++j)
        ups[j] = std::pow(iunit, j) * binom_real(N, j) * std::pow(sm, j) * std::pow(sp, N - j);
    CMatrix Psi = f.K * diag_matrix(ups) * f.K;
    CMatrix H = Psi * f.T * Psi.adjoint();
    return H.real_part();
}

CMatrix custom_H_eval(const WeightFamily& f, double x) {
    CMatrix H = f.coef.back();
    for (int d = static_cast<int>(f.coef.size()) - 2; d >= 0; --d) H = cplx(x) * H + f.coef[d];
    return H;
}

}  // namespace

CMatrix WeightFamily::H(double x) const {
    switch (kind) {
        case FamilyKind::Jacobi: return jacobi_H_eval(*this, x);
        case FamilyKind::Gegenbauer: return geg_H_eval(*this, x);
        case FamilyKind::GegenbauerBlock2:
        case FamilyKind::Custom: return custom_H_eval(*this, x);
    }
    throw std::logic_error("WeightFamily::H: bad kind");
}

CMatrix WeightFamily::W(double x) const {
    return std::pow(1.0 - x, alpha) * std::pow(1.0 + x, beta) * H(x);
}

WeightFamily jacobi_family(double alpha, double beta, double k, int ell) {
    if (alpha <= -1.0 || beta <= -1.0) throw std::domain_error("jacobi_family: alpha,beta must be > -1");
    if (k <= 0.0 || k >= alpha + 1.0) throw std::domain_error("jacobi_family: k must be in (0, alpha+1)");
    if (ell < 0) throw std::domain_error("jacobi_family: ell must be >= 0");
    WeightFamily f;
    f.kind = FamilyKind::Jacobi;
    f.r = ell + 1;
    f.alpha = alpha;
    f.beta = beta;
    f.k = k;
    f.p = k / (alpha + 1.0 - k);
    f.two_ell = 2 * ell;
    const int dim = ell + 1;
    std::vector<double> T(dim);
    for (int j = 0; j < dim; ++j) {
        T[j] = binom_real(ell + k - 1.0 - j, ell - j) * binom_real(alpha - k + j, j);
        if (T[j] <= 0.0) throw std::domain_error("jacobi_family: nonpositive T entry");
    }
    f.R = CMatrix(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
            f.R(i, j) = binom_real(j, i) * std::pow(2.0, -(ell - j) / 2.0 - i) * std::sqrt(T[j]);
    f.degH = 2 * ell;
    if (ell == 1) {
        // normalize to the explicit 2x2 form; factor k/p dropped
        f.jac_scale = f.p / f.k;
        f.dropped_scalar = f.k / f.p;
        f.scalar_note = "H rescaled by p/k to the explicit 2x2 form (dropped scalar k/p)";
    }
    std::ostringstream lb;
    lb << "jacobi(alpha=" << alpha << ",beta=" << beta << ",k=" << k << ",ell=" << ell << ")";
    f.label = lb.str();
    return f;
}

WeightFamily gegenbauer_family(double nu, int two_ell) {
    if (nu <= 0.0) throw std::domain_error("gegenbauer_family: nu must be > 0");
    if (two_ell < 1) throw std::domain_error("gegenbauer_family: 2*ell must be >= 1");
    WeightFamily f;
    f.kind = FamilyKind::Gegenbauer;
    const int N = two_ell;
    const int dim = N + 1;
    f.r = dim;
    f.nu = nu;
    f.alpha = f.beta = nu - 0.5;
    f.two_ell = N;
    f.degH = N;
    f.K = CMatrix(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) f.K(i, j) = krawtchouk(i, j, 0.5, N);
    const double Ts = std::pow(2.0, -3.0 * N - 1.0) * poch(2 * nu + N, N + 1) / poch(nu + 0.5, N);
    f.T = CMatrix(dim);
    for (int j = 0; j < dim; ++j)
        f.T(j, j) = Ts * binom_real(N, j) * poch(nu, j) / poch(nu + N - j, j);
    // R = diag((-1)^j binom(N,j)) K T^{1/2}
    std::vector<cplx> sg(dim);
    for (int j = 0; j < dim; ++j) sg[j] = (j % 2 ? -1.0 : 1.0) * binom_real(N, j);
    CMatrix Th(dim);
    for (int j = 0; j < dim; ++j) Th(j, j) = std::sqrt(f.T(j, j).real());
    f.R = diag_matrix(sg) * f.K * Th;
    std::ostringstream lb;
    lb << "gegenbauer(nu=" << nu << ",2ell=" << N << ")";
    f.label = lb.str();
    return f;
}

WeightFamily gegenbauer_block2(double nu) {
    if (nu <= 0.0) throw std::domain_error("gegenbauer_block2: nu must be > 0");
    WeightFamily f;
    f.kind = FamilyKind::GegenbauerBlock2;
    f.r = 2;
    f.nu = nu;
    f.alpha = f.beta = nu - 0.5;
    f.degH = 2;
    const double s2 = std::sqrt(2.0);
    CMatrix c0(2), c1(2), c2(2);
    c0(0, 0) = 2 * nu;
    c0(1, 1) = nu + 1;
    c1(0, 1) = c1(1, 0) = (2 * nu + 1) * s2;
    c2(0, 0) = 2 * (nu + 1);
    c2(1, 1) = nu;
    f.coef = {c0, c1, c2};
    f.dropped_scalar = (2 * nu + 1) / (2 + nu);
    f.scalar_note = "2x2 block of the reduced (2l+1)-size weight up to the scalar (2nu+1)/(2+nu)";
    std::ostringstream lb;
    lb << "gegenbauer_block(nu=" << nu << ")";
    f.label = lb.str();
    return f;
}

WeightFamily custom_family(double alpha, double beta, std::vector<CMatrix> coef) {
    if (alpha <= -1.0 || beta <= -1.0) throw std::domain_error("custom_family: alpha,beta must be > -1");
    if (coef.empty()) throw std::domain_error("custom_family: empty coefficient list");
    WeightFamily f;
    f.kind = FamilyKind::Custom;
    f.r = coef[0].dim();
    f.alpha = alpha;
    f.beta = beta;
    f.coef = std::move(coef);
    f.degH = static_cast<int>(f.coef.size()) - 1;
    f.label = "custom";
    // Chebyshev-spaced validation grid (clusters near the endpoints)
    for (int i = 0; i <= 200; ++i) {
        const double x = std::cos(M_PI * (200 - i) / 200.0);
        CMatrix H = f.H(x);
        double hn = H.fro();
        if ((H - H.adjoint()).fro() > 1e-12 * std::max(hn, 1e-300)) {
            std::ostringstream os;
            os << "custom_family: H not Hermitian at x=" << x;
            throw std::invalid_argument(os.str());
        }
        if (std::abs(x) < 0.99) {
            HermEig e = herm_eig(0.5 * (H + H.adjoint()));
            if (e.lam.front() <= 0.0) {
                std::ostringstream os;
                os << "custom_family: H not positive definite at x=" << x;
                throw std::invalid_argument(os.str());
            }
        }
    }
    if (f.H(1.0).fro() <= 1e-12 || f.H(-1.0).fro() <= 1e-12)
        throw std::invalid_argument("custom_family: H vanishes identically at an endpoint");
    return f;
}

CMatrix gegenbauer_Y(int two_ell) {
    const int dim = two_ell + 1;
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix Y(dim);
    if (dim % 2 == 0) {
        const int m = dim / 2;
        for (int i = 0; i < m; ++i) {
            Y(i, i) = s;
            Y(i, dim - 1 - i) = s;
            Y(m + i, m + i) = s;
            Y(m + i, dim - 1 - (m + i)) = -s;
        }
    } else {
        const int m = dim / 2;
        for (int i = 0; i < m; ++i) {
            Y(i, i) = s;
            Y(i, dim - 1 - i) = s;
            Y(m + 1 + i, m + 1 + i) = s;
            Y(m + 1 + i, dim - 1 - (m + 1 + i)) = -s;
        }
        Y(m, m) = 1.0;
    }
    return Y;
}

std::vector<EigPathPoint> eig_path(const WeightFamily& fam, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("eig_path: empty grid");
    for (size_t i = 1; i < grid.size(); ++i)
        if (grid[i] - grid[i - 1] > 0.02 + 1e-12 || grid[i] <= grid[i - 1])
            throw std::invalid_argument("eig_path: grid must ascend with spacing <= 0.02");
    const int r = fam.r;
    std::vector<EigPathPoint> out;
    out.reserve(grid.size());
    for (double x : grid) {
        HermEig e = herm_eig(fam.H(x));
        EigPathPoint pt{e.lam, e.Q};
        if (out.empty()) {
            // phase: largest-modulus component real positive
            for (int j = 0; j < r; ++j) {
                int imax = 0;
                for (int i = 1; i < r; ++i)
                    if (std::abs(pt.Q(i, j)) > std::abs(pt.Q(imax, j))) imax = i;
                cplx ph = pt.Q(imax, j) / std::abs(pt.Q(imax, j));
                for (int i = 0; i < r; ++i) pt.Q(i, j) /= ph;
            }
        } else {
            const EigPathPoint& prev = out.back();
            EigPathPoint matched;
            matched.lam.resize(r);
            matched.Q = CMatrix(r);
            std::vector<bool> used(r, false);
            for (int lab = 0; lab < r; ++lab) {
                // overlap of previous column lab with current columns
                int best = -1;
                double b1 = -1.0, b2 = -1.0;
                for (int j = 0; j < r; ++j) {
                    if (used[j]) continue;
                    cplx ov = 0.0;
                    for (int i = 0; i < r; ++i) ov += std::conj(prev.Q(i, lab)) * pt.Q(i, j);
                    const double m = std::abs(ov);
                    if (m > b1) {
                        b2 = b1;
                        b1 = m;
                        best = j;
                    } else if (m > b2) {
                        b2 = m;
                    }
                }
                if (b2 >= 0.0 && b1 - b2 < 1e-3)
                    throw std::runtime_error("eig_path: overlap ambiguity; refine grid near x=" + std::to_string(x));
                used[best] = true;
                matched.lam[lab] = pt.lam[best];
                cplx ov = 0.0;
                for (int i = 0; i < r; ++i) ov += std::conj(prev.Q(i, lab)) * pt.Q(i, best);
                cplx ph = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0);
                for (int i = 0; i < r; ++i) matched.Q(i, lab) = pt.Q(i, best) / ph;
            }
            pt = matched;
        }
        out.push_back(std::move(pt));
    }
    return out;
}

namespace {

// numeric orders/constants from the eigenvalue paths near an endpoint
EndpointSpectralData endpoint_data_numeric(const WeightFamily& fam, int endpoint) {
    const int r = fam.r;
    const double ts[3] = {1e-2, 1e-3, 1e-4};
    std::vector<double> grid;
    for (int i = 0; i < 3; ++i) grid.push_back(endpoint > 0 ? 1.0 - ts[i] : -1.0 + ts[2 - i]);
    if (endpoint > 0) std::sort(grid.begin(), grid.end());
    auto path = eig_path(fam, grid);
    // label eigenvalues so samples line up with [t=1e-2, 1e-3, 1e-4]
    auto lam_at = [&](int j, int it) {
        // ascending grid: at +1, grid[i] = 1 - ts[i]; at -1, grid[i] = -1 + ts[2-i]
        int idx = endpoint > 0 ? it : (2 - it);
        return path[static_cast<size_t>(idx)].lam[j];
    };
    EndpointSpectralData out;
    out.endpoint = endpoint;
    const double ab = endpoint > 0 ? fam.alpha : fam.beta;
    for (int j = 0; j < r; ++j) {
        // least-squares slope of log lam vs log t over three points
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int it = 0; it < 3; ++it) {
            const double lx = std::log(ts[it]);
            const double ly = std::log(std::max(lam_at(j, it), 1e-300));
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        }
        const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
        const int n = static_cast<int>(std::lround(slope));
        if (std::abs(slope - n) > 0.2 || n < 0)
            throw std::runtime_error("endpoint_data: ambiguous vanishing order (slope " +
                                     std::to_string(slope) + "); supply orders explicitly");
        out.orders.push_back(n);
        out.exponents.push_back(ab + n);
        if (endpoint > 0) {
            // c_j = 2^{-alpha_j+beta} lim lam_j/(1-x)^{n_j}, linear Richardson in t
            const double f1 = lam_at(j, 1) / std::pow(ts[1], n);
            const double f2 = lam_at(j, 2) / std::pow(ts[2], n);
            const double lim = (ts[1] * f2 - ts[2] * f1) / (ts[1] - ts[2]);
            out.constants.push_back(std::pow(2.0, -(ab + n) + fam.beta) * lim);
        }
    }
    int mn = out.orders[0];
    for (int v : out.orders) mn = std::min(mn, v);
    if (mn != 0) throw std::runtime_error("endpoint_data: min vanishing order != 0");
    return out;
}

}  // namespace

EndpointSpectralData endpoint_data(const WeightFamily& fam, int endpoint) {
    if (endpoint != 1 && endpoint != -1) throw std::domain_error("endpoint_data: endpoint must be +-1");
    EndpointSpectralData out;
    out.endpoint = endpoint;
    if (fam.kind == FamilyKind::Jacobi) {
        const int ell = fam.two_ell / 2;
        for (int j = 0; j <= ell; ++j) {
            const int n = endpoint > 0 ? 2 * j : j;
            out.orders.push_back(n);
            out.exponents.push_back((endpoint > 0 ? fam.alpha : fam.beta) + n);
        }
        if (endpoint > 0) {
            if (ell == 1) {
                out.constants = {std::pow(2.0, -fam.alpha + fam.beta) * (1.0 + fam.p),
                                 std::pow(2.0, -fam.alpha - 4.0 + fam.beta) * fam.p / (1.0 + fam.p)};
            } else {
                // numeric constants, matched to the analytic order list by the
                // estimated vanishing order (orders 0,2,...,2l are distinct)
                EndpointSpectralData num = endpoint_data_numeric(fam, endpoint);
                out.constants.assign(out.orders.size(), 0.0);
                for (size_t j = 0; j < out.orders.size(); ++j) {
                    bool found = false;
                    for (size_t i = 0; i < num.orders.size(); ++i)
                        if (num.orders[i] == out.orders[j]) {
                            out.constants[j] = num.constants[i];
                            found = true;
                            break;
                        }
                    if (!found) throw std::runtime_error("endpoint_data: order pattern mismatch");
                }
            }
        }
        return out;
    }
    if (fam.kind == FamilyKind::GegenbauerBlock2) {
        out.orders = {0, 2};
        out.exponents = {fam.nu - 0.5, fam.nu + 1.5};
        if (endpoint > 0) {
            out.constants = {3.0 * (1.0 + 2.0 * fam.nu),
                             2.0 * fam.nu * (1.0 + fam.nu) / (3.0 * (1.0 + 2.0 * fam.nu))};
        }
        return out;
    }
    return endpoint_data_numeric(fam, endpoint);
}

void eig2_analytic(const WeightFamily& fam, cplx z, cplx lam[2], CMatrix& Q) {
    if (fam.r != 2) throw std::domain_error("eig2_analytic: needs a 2x2 family");
    cplx H11, H12, H22;
    if (fam.kind == FamilyKind::Jacobi) {
        const double p = fam.p;
        H11 = (4.0 + 2.0 * p + 2.0 * p * z) / 4.0;
        H12 = (1.0 - z) / 2.0;
        H22 = (1.0 - z) * (1.0 - z) / 4.0;
    } else {
        // Gegenbauer block and custom 2x2: evaluate H analytically
        if (fam.coef.empty()) throw std::domain_error("eig2_analytic: family has no analytic H");
        CMatrix H = fam.coef.back();
        for (int d = static_cast<int>(fam.coef.size()) - 2; d >= 0; --d) H = z * H + fam.coef[d];
        H11 = H(0, 0);
        H12 = H(0, 1);
        H22 = H(1, 1);
    }
    const cplx tr = H11 + H22;
    const cplx dt = H11 * H22 - H12 * H12;
    const cplx l1 = (tr + std::sqrt(tr * tr - 4.0 * dt)) / 2.0;
    const cplx l2 = dt / l1;  // avoids cancellation
    lam[0] = l1;
    lam[1] = l2;
    Q = CMatrix(2);
    for (int j = 0; j < 2; ++j) {
        if (fam.kind == FamilyKind::Jacobi) {
            const cplx rho = (2.0 * lam[j] - 2.0 - fam.p - fam.p * z) / (z - 1.0);
            const cplx nrm = std::sqrt(1.0 + rho * rho);
            Q(0, j) = 1.0 / nrm;
            Q(1, j) = -rho / nrm;
        } else if (fam.kind == FamilyKind::GegenbauerBlock2) {
            const cplx rho = (lam[j] - H22) / H12;
            const cplx nrm = std::sqrt(1.0 + rho * rho);
            Q(0, j) = rho / nrm;
            Q(1, j) = 1.0 / nrm;
        } else {
            const cplx v0 = H12, v1 = lam[j] - H11;
            const cplx nrm = std::sqrt(v0 * v0 + v1 * v1);
            Q(0, j) = v0 / nrm;
            Q(1, j) = v1 / nrm;
        }
    }
}

}  // namespace mvop
