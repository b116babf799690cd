#include "mvop/szego.hpp"

#include <cmath>

#include "mvop/specfun.hpp"

namespace mvop {

namespace {

SzegoData szego_jacobi(const WeightFamily& fam) {
    const int ell = fam.two_ell / 2;
    const int dim = ell + 1;
    const double al = fam.alpha, be = fam.beta;
    const double sc = std::sqrt(fam.jac_scale);
    const CMatrix R = fam.R;
    SzegoData out;
    out.D = [=](cplx z) {
        const cplx f = phi_map(z);
        std::vector<cplx> d1(dim), d2(dim);
        for (int j = 0; j < dim; ++j) {
            d1[j] = std::pow(1.0 - z, j);
            d2[j] = std::pow(z + 1.0, (ell - j) / 2.0) * std::exp(-(ell + j) / 2.0 * std::log(f));
        }
        const cplx pref = sc * std::pow(z - 1.0, al / 2.0) * std::pow(z + 1.0, be / 2.0) *
                          std::exp(-(al + be) / 2.0 * std::log(f));
        return pref * (diag_matrix(d1) * R * diag_matrix(d2));
    };
    auto boundary = [=](double x, int side) {
        const double th = arccos_stable(x);
        const double s = side >= 0 ? 1.0 : -1.0;
        const cplx f = std::polar(1.0, s * th);
        std::vector<cplx> d1(dim), d2(dim);
        for (int j = 0; j < dim; ++j) {
            d1[j] = std::pow(1.0 - x, j);
            d2[j] = std::pow(1.0 + x, (ell - j) / 2.0) * std::pow(f, cplx(-(ell + j) / 2.0));
        }
        const cplx pref = sc * std::polar(std::pow(1.0 - x, al / 2.0), s * al * M_PI / 2.0) *
                          std::pow(1.0 + x, be / 2.0) * std::pow(f, cplx(-(al + be) / 2.0));
        return pref * (diag_matrix(d1) * R * diag_matrix(d2));
    };
    out.Dplus = [=](double x) { return boundary(x, +1); };
    out.Dminus = [=](double x) { return boundary(x, -1); };
    out.Dinf = CMatrix(dim);
    for (int j = 0; j < dim; ++j)
        out.Dinf(j, j) = sc * std::pow(2.0, -(al + be) / 2.0) * (j % 2 ? -1.0 : 1.0) *
                         std::pow(2.0, -(ell + j) / 2.0) * R(j, j);
    return out;
}

SzegoData szego_gegenbauer_full(const WeightFamily& fam) {
    const int N = fam.two_ell;
    const int dim = N + 1;
    const double ell = N / 2.0;
    const double nu = fam.nu;
    const CMatrix K = fam.K, R = fam.R;
    SzegoData out;
    out.D = [=](cplx z) {
        const cplx f = phi_map(z);
        const cplx lf = std::log(f);
        const cplx pref = std::exp((nu / 2.0 - 0.25) * (std::log(z - 1.0) + std::log(z + 1.0)) -
                                   (nu - 0.5) * lf) *
                          std::pow(z + 1.0, ell) * std::exp(-ell * lf);
        const cplx xi = (z - 1.0) / (z + 1.0);
        std::vector<cplx> d(dim);
        for (int j = 0; j < dim; ++j) d[j] = std::pow(xi, j / 2.0);
        return pref * (K * diag_matrix(d) * R);
    };
    auto boundary = [=](double x, int side) {
        const double th = arccos_stable(x);
        const double s = side >= 0 ? 1.0 : -1.0;
        const cplx pref =
            std::exp(cplx((nu / 2.0 - 0.25) * (std::log(1.0 - x) + std::log(1.0 + x)),
                          s * ((nu / 2.0 - 0.25) * M_PI - (nu - 0.5) * th - ell * th))) *
            std::pow(1.0 + x, ell);
        const double u = (1.0 - x) / (1.0 + x);
        std::vector<cplx> d(dim);
        for (int j = 0; j < dim; ++j) d[j] = std::polar(std::pow(u, j / 2.0), s * j * M_PI / 2.0);
        return pref * (K * diag_matrix(d) * R);
    };
    out.Dplus = [=](double x) { return boundary(x, +1); };
    out.Dminus = [=](double x) { return boundary(x, -1); };
    out.Dinf = std::pow(2.0, 0.5 - nu - ell) * (K * R);
    return out;
}

SzegoData szego_gegenbauer_block(const WeightFamily& fam) {
    const double nu = fam.nu;
    SzegoData out;
    out.D = [=](cplx z) {
        const cplx f = phi_map(z);
        const cplx pref =
            std::exp((nu / 2.0 - 0.25) * (std::log(z - 1.0) + std::log(z + 1.0)) -
                     (nu - 0.5) * std::log(f)) / f;
        CMatrix M(2);
        M(0, 0) = std::sqrt(2.0 * (nu + 1.0)) * z;
        M(0, 1) = std::sqrt(2.0 * nu);
        M(1, 0) = std::sqrt(nu + 1.0);
        M(1, 1) = std::sqrt(nu) * z;
        return pref * M;
    };
    auto boundary = [=](double x, int side) {
        const double th = arccos_stable(x);
        const double s = side >= 0 ? 1.0 : -1.0;
        const cplx pref = std::exp(cplx((nu / 2.0 - 0.25) * (std::log(1.0 - x) + std::log(1.0 + x)),
                                        s * ((nu / 2.0 - 0.25) * M_PI - (nu - 0.5) * th - th)));
        CMatrix M(2);
        M(0, 0) = std::sqrt(2.0 * (nu + 1.0)) * x;
        M(0, 1) = std::sqrt(2.0 * nu);
        M(1, 0) = std::sqrt(nu + 1.0);
        M(1, 1) = std::sqrt(nu) * x;
        return pref * M;
    };
    out.Dplus = [=](double x) { return boundary(x, +1); };
    out.Dminus = [=](double x) { return boundary(x, -1); };
    out.Dinf = CMatrix(2);
    out.Dinf(0, 0) = std::pow(2.0, -nu - 0.5) * std::sqrt(2.0 * (nu + 1.0));
    out.Dinf(1, 1) = std::pow(2.0, -nu - 0.5) * std::sqrt(nu);
    return out;
}

}  // namespace

SzegoData make_szego(const WeightFamily& fam) {
    switch (fam.kind) {
        case FamilyKind::Jacobi: return szego_jacobi(fam);
        case FamilyKind::Gegenbauer: return szego_gegenbauer_full(fam);
        case FamilyKind::GegenbauerBlock2: return szego_gegenbauer_block(fam);
        case FamilyKind::Custom:
            throw std::domain_error("make_szego: no Szego function for custom families");
    }
    throw std::logic_error("make_szego: bad kind");
}

namespace {

std::vector<int> v_orders(const WeightFamily& fam, int endpoint) {
    return endpoint_data(fam, endpoint).orders;
}

}  // namespace

CMatrix V_eval(const WeightFamily& fam, cplx z) {
    if (fam.r != 2) throw std::domain_error("V_eval: only 2x2 families supported");
    if (z.imag() == 0.0 && z.real() <= 1.0)
        throw std::domain_error("V_eval: z on the cut (-inf,1]; use V_boundary");
    cplx lam[2];
    CMatrix Q(2);
    eig2_analytic(fam, z, lam, Q);
    const std::vector<int> n = v_orders(fam, +1);
    std::vector<cplx> lt(2);
    for (int j = 0; j < 2; ++j) {
        if (n[j] % 2) throw std::domain_error("V_eval: odd vanishing order at +1 unsupported");
        const cplx w = std::pow(z - 1.0, n[j] / 2);
        lt[j] = w * std::sqrt(lam[j] / (w * w));
    }
    const cplx pref = std::pow(z - 1.0, fam.alpha / 2.0) * std::pow(z + 1.0, fam.beta / 2.0);
    return pref * (Q * diag_matrix(lt));
}

CMatrix Vhat_eval(const WeightFamily& fam, cplx z) {
    if (fam.r != 2) throw std::domain_error("Vhat_eval: only 2x2 families supported");
    if (z.imag() == 0.0 && z.real() >= -1.0)
        throw std::domain_error("Vhat_eval: z on the cut [-1,inf)");
    cplx lam[2];
    CMatrix Q(2);
    eig2_analytic(fam, z, lam, Q);
    const std::vector<int> m = v_orders(fam, -1);
    const cplx w1 = -(z + 1.0);  // positive for z < -1
    std::vector<cplx> lt(2);
    for (int j = 0; j < 2; ++j) {
        const cplx lhat = (m[j] % 2 ? -lam[j] : lam[j]);
        const cplx w = std::pow(w1, m[j] / 2.0);
        lt[j] = (m[j] == 0 ? 1.0 : -1.0) * w * std::sqrt(lhat / (w * w));
    }
    const cplx pref = std::pow(1.0 - z, fam.alpha / 2.0) * std::pow(w1, fam.beta / 2.0);
    return pref * (Q * diag_matrix(lt));
}

CMatrix V_boundary(const WeightFamily& fam, double x, int side) {
    if (fam.r != 2) throw std::domain_error("V_boundary: only 2x2 families supported");
    if (x <= -1.0 || x >= 1.0) throw std::domain_error("V_boundary: x must be in (-1,1)");
    cplx lam[2];
    CMatrix Q(2);
    eig2_analytic(fam, cplx(x, 0.0), lam, Q);
    const std::vector<int> n = v_orders(fam, +1);
    std::vector<cplx> lt(2);
    for (int j = 0; j < 2; ++j) {
        if (n[j] % 2) throw std::domain_error("V_boundary: odd vanishing order at +1 unsupported");
        lt[j] = ((n[j] / 2) % 2 ? -1.0 : 1.0) * std::sqrt(std::max(0.0, lam[j].real()));
    }
    const double s = side >= 0 ? 1.0 : -1.0;
    const cplx pref = std::polar(std::pow(1.0 - x, fam.alpha / 2.0), s * fam.alpha * M_PI / 2.0) *
                      std::pow(1.0 + x, fam.beta / 2.0);
    return pref * (Q * diag_matrix(lt));
}

CMatrix A_eval(const WeightFamily& fam, cplx z) {
    const cplx pref = (std::sqrt(z + 1.0) + std::sqrt(z - 1.0)) / std::sqrt(2.0);
    SzegoData sz = make_szego(fam);
    return pref * (inv(sz.D(z)) * V_eval(fam, z));
}

CMatrix A_boundary(const WeightFamily& fam, double x, int side) {
    const double s = side >= 0 ? 1.0 : -1.0;
    const cplx pref =
        (std::sqrt(1.0 + x) + cplx(0.0, s) * std::sqrt(1.0 - x)) / std::sqrt(2.0);  // e^{+- i theta/2}
    SzegoData sz = make_szego(fam);
    const CMatrix Ds = side >= 0 ? sz.Dplus(x) : sz.Dminus(x);
    return pref * (inv(Ds) * V_boundary(fam, x, side));
}

EndpointUnitaries endpoint_unitaries(const WeightFamily& fam) {
    EndpointUnitaries out;
    if (fam.kind == FamilyKind::Jacobi && fam.r == 2) {
        const double p = fam.p;
        const double c = 1.0 / std::sqrt(1.0 + p);
        out.U1 = CMatrix(2);
        out.U1(0, 0) = c * std::sqrt(p);
        out.U1(0, 1) = c;
        out.U1(1, 0) = c;
        out.U1(1, 1) = -c * std::sqrt(p);
        out.Um1 = CMatrix(2);
        out.Um1(0, 1) = -1.0;
        out.Um1(1, 0) = -1.0;
        out.closed_form = true;
        return out;
    }
    if (fam.kind == FamilyKind::GegenbauerBlock2) {
        const double nu = fam.nu;
        const double c = 1.0 / std::sqrt(1.0 + 2.0 * nu);
        out.U1 = CMatrix(2);
        out.U1(0, 0) = c * std::sqrt(nu + 1.0);
        out.U1(0, 1) = -c * std::sqrt(nu);
        out.U1(1, 0) = c * std::sqrt(nu);
        out.U1(1, 1) = c * std::sqrt(nu + 1.0);
        out.Um1 = CMatrix(2);
        out.Um1(0, 0) = -c * std::sqrt(nu + 1.0);
        out.Um1(0, 1) = -c * std::sqrt(nu);
        out.Um1(1, 0) = c * std::sqrt(nu);
        out.Um1(1, 1) = -c * std::sqrt(nu + 1.0);
        out.closed_form = true;
        return out;
    }
    return endpoint_unitaries_extrapolated(fam);
}

EndpointUnitaries endpoint_unitaries_extrapolated(const WeightFamily& fam) {
    SzegoData sz = make_szego(fam);
    const int r = fam.r;
    const double q = std::sqrt(2.0);
    // 10 levels: deeper tables amplify the u ~ 1e-3 evaluation noise past 1e-6
    const int levels = 10;
    auto richardson = [&](const std::function<CMatrix(double)>& f) {
        // error series in u = sqrt(t); Neville table with ratio sqrt(2)
        std::vector<CMatrix> col;  // col[j]: latest value in extrapolation column j
        for (int kk = 0; kk < levels; ++kk) {
            const double u = 0.5 * std::pow(q, -kk);
            CMatrix cur = f(u);
            for (int j = 1; j <= kk; ++j) {
                const double qj = std::pow(q, j);
                CMatrix nxt = (1.0 / (qj - 1.0)) * (qj * cur - col[j - 1]);
                col[j - 1] = cur;
                cur = nxt;
            }
            col.push_back(cur);
        }
        return col.back();
    };
    EndpointUnitaries out;
    out.closed_form = false;
    out.U1 = richardson([&](double u) {
        const cplx z(1.0 + u * u, 0.0);
        return inv(sz.D(z)) * V_eval(fam, z);
    });
    out.Um1 = richardson([&](double u) {
        const cplx z(-1.0 - u * u, 0.0);
        return inv(sz.D(z)) * Vhat_eval(fam, z);
    });
    for (const CMatrix* U : {&out.U1, &out.Um1}) {
        if ((U->adjoint() * (*U) - CMatrix::identity(r)).fro() > 1e-6)
            throw std::runtime_error("endpoint_unitaries: extrapolated limit fails unitarity at 1e-6");
    }
    return out;
}

}  // namespace mvop
