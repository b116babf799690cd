#include "mvop/asym.hpp"

#include <algorithm>
#include <cmath>

#include "mvop/specfun.hpp"

namespace mvop {

namespace {

double seg_dist(cplx z) {
    const double dx = std::max(std::abs(z.real()) - 1.0, 0.0);
    return std::hypot(dx, z.imag());
}

void require_szego(const AsymContext& ctx, const char* who) {
    if (!ctx.szego.D) throw std::domain_error(std::string(who) + ": missing Szego data");
}

void require_unitaries(const AsymContext& ctx, const char* who) {
    if (ctx.U.U1.dim() == 0)
        throw std::domain_error(std::string(who) + ": missing endpoint unitaries");
}

}  // namespace

AsymContext make_context(const WeightFamily& fam) {
    AsymContext ctx;
    ctx.fam = fam;
    ctx.szego = make_szego(fam);
    ctx.ep1 = endpoint_data(fam, +1);
    ctx.epm1 = endpoint_data(fam, -1);
    if (fam.r == 2) ctx.U = endpoint_unitaries(fam);
    return ctx;
}

CMatrix pi1_eval(const AsymContext& ctx, cplx z) {
    require_unitaries(ctx, "pi1_eval");
    const cplx f = phi_map(z);
    const int r = ctx.fam.r;
    std::vector<cplx> da(r), db(r);
    for (int j = 0; j < r; ++j) {
        const double a = ctx.ep1.exponents[j], b = ctx.epm1.exponents[j];
        da[j] = 4.0 * a * a - 1.0;
        db[j] = 4.0 * b * b - 1.0;
    }
    return (-1.0 / (8.0 * (f - 1.0))) * (ctx.U.U1 * diag_matrix(da) * inv(ctx.U.U1)) +
           (1.0 / (8.0 * (f + 1.0))) * (ctx.U.Um1 * diag_matrix(db) * inv(ctx.U.Um1));
}

CMatrix outer_eval(const AsymContext& ctx, int n, cplx z, int order) {
    require_szego(ctx, "outer_eval");
    if (order != 0 && order != 1) throw std::invalid_argument("outer_eval: order must be 0 or 1");
    if (seg_dist(z) < 0.05) throw std::domain_error("outer_eval: z within 0.05 of [-1,1]");
    // (z^2-1)^{1/4} must be the factor-split branch (cut exactly [-1,1])
    const cplx lead = std::sqrt(phi_map(z)) / (std::sqrt(2.0) * pow_z2m1(z, 0.25));
    CMatrix mid = CMatrix::identity(ctx.fam.r);
    if (order == 1) mid += (1.0 / n) * pi1_eval(ctx, z);
    return lead * (ctx.szego.Dinf * mid * inv(ctx.szego.D(z)));
}

CMatrix inner_eval(const AsymContext& ctx, int n, double x) {
    require_szego(ctx, "inner_eval");
    if (std::abs(x) > 0.99)
        throw std::domain_error("inner_eval: |x| > 0.99 (compact-subset guard)");
    const double th = arccos_stable(x);
    const cplx eg = std::polar(1.0, (n + 0.5) * th - M_PI / 4.0);
    const CMatrix sum = eg * inv(ctx.szego.Dplus(x)) + std::conj(eg) * inv(ctx.szego.Dminus(x));
    const double pref = 1.0 / (std::sqrt(2.0) * std::pow(1.0 - x * x, 0.25));
    return pref * (ctx.szego.Dinf * sum);
}

CMatrix endpoint_eval(const AsymContext& ctx, int n, double x) {
    require_szego(ctx, "endpoint_eval");
    if (!(0.9 < x && x < 1.0)) throw std::domain_error("endpoint_eval: need x in (0.9, 1)");
    if (ctx.fam.r != 2) throw std::domain_error("endpoint_eval: only 2x2 families supported");
    if (ctx.ep1.exponents.empty()) throw std::domain_error("endpoint_eval: missing endpoint data");
    const double th = arccos_stable(x);
    const CMatrix Ap = A_boundary(ctx.fam, x, +1);
    const CMatrix Am = A_boundary(ctx.fam, x, -1);
    const CMatrix AR = 0.5 * (Ap + Am);
    const CMatrix AI = (1.0 / cplx(0.0, 2.0)) * (Ap - Am);
    cplx lam[2];
    CMatrix Q(2);
    eig2_analytic(ctx.fam, cplx(x, 0.0), lam, Q);
    std::vector<cplx> Jv(2), Jd(2);
    for (int j = 0; j < 2; ++j) {
        const double a = ctx.ep1.exponents[j];
        Jv[j] = bessel_j(a, n * th);
        Jd[j] = bessel_j_prime(a, n * th);
    }
    const double pref =
        std::ldexp(1.0, -n) * std::sqrt(M_PI * n * th) / std::pow(1.0 - x * x, 0.25);
    return pref * (ctx.szego.Dinf * (AR * diag_matrix(Jv) + AI * diag_matrix(Jd)) * Q.adjoint());
}

CMatrix mehler_heine(const AsymContext& ctx, double theta) {
    require_szego(ctx, "mehler_heine");
    require_unitaries(ctx, "mehler_heine");
    if (!(theta > 0.0 && theta <= 40.0))
        throw std::domain_error("mehler_heine: need 0 < theta <= 40");
    const int r = ctx.fam.r;
    std::vector<cplx> d(r);
    for (int j = 0; j < r; ++j) {
        const double a = ctx.ep1.exponents[j];
        d[j] = std::pow(theta, -a) * bessel_j(a, theta);
    }
    return ctx.szego.Dinf * ctx.U.U1 * diag_matrix(d);
}

CMatrix mh_lhs(const AsymContext& ctx, const RecurrenceTable& tab, int n, double theta) {
    if (ctx.ep1.constants.empty()) throw std::domain_error("mh_lhs: missing c_j constants");
    if (!(theta > 0.0 && theta < n)) throw std::domain_error("mh_lhs: need 0 < theta < n");
    if (ctx.fam.r != 2) throw std::domain_error("mh_lhs: only 2x2 families supported");
    const double x = std::cos(theta / n);
    CMatrix P = mvop_eval_scaled(tab, n, x);
    cplx lam[2];
    CMatrix Q(2);
    eig2_analytic(ctx.fam, cplx(x, 0.0), lam, Q);
    std::vector<cplx> d(2);
    for (int j = 0; j < 2; ++j) {
        // column-sign convention of the rho-eigenvectors vs the limit matrix
        const double sg = (ctx.fam.kind == FamilyKind::Jacobi && j == 1) ? -1.0 : 1.0;
        d[j] = sg * std::sqrt(ctx.ep1.constants[j]) * std::pow(double(n), -ctx.ep1.exponents[j]);
    }
    return (1.0 / std::sqrt(M_PI * n)) * (P * Q.real_part() * diag_matrix(d));
}

CMatrix asym_B2(const AsymContext& ctx) {
    require_szego(ctx, "asym_B2");
    require_unitaries(ctx, "asym_B2");
    const int r = ctx.fam.r;
    std::vector<cplx> da(r), db(r);
    for (int j = 0; j < r; ++j) {
        const double a = ctx.ep1.exponents[j], b = ctx.epm1.exponents[j];
        da[j] = 4.0 * a * a - 1.0;
        db[j] = 4.0 * b * b - 1.0;
    }
    const CMatrix Di = ctx.szego.Dinf, DiI = inv(Di);
    return (-1.0 / 16.0) * (Di * ctx.U.U1 * diag_matrix(da) * inv(ctx.U.U1) * DiI) +
           (1.0 / 16.0) * (Di * ctx.U.Um1 * diag_matrix(db) * inv(ctx.U.Um1) * DiI);
}

void asym_recurrence(const AsymContext& ctx, int n, CMatrix& B_approx, CMatrix& C_approx) {
    B_approx = (1.0 / double(n) / double(n)) * asym_B2(ctx);
    C_approx = 0.25 * CMatrix::identity(ctx.fam.r);
}

CMatrix closed_form_outer(const WeightFamily& fam, cplx z) {
    if (fam.kind == FamilyKind::Jacobi && fam.r == 2) {
        const double al = fam.alpha, be = fam.beta;
        const cplx f = phi_map(z);
        const cplx pref = std::pow(f / 2.0, (al + be + 1.0) / 2.0) /
                          (2.0 * std::pow(z - 1.0, (2.0 * al + 3.0) / 4.0) *
                           std::pow(z + 1.0, (2.0 * be + 3.0) / 4.0) * (f - 1.0));
        CMatrix M(2);
        M(0, 0) = (f - 1.0) * (f - 1.0);
        M(0, 1) = 4.0 * f;
        M(1, 1) = f * (f + 1.0);
        return pref * M;
    }
    if (fam.kind == FamilyKind::GegenbauerBlock2) {
        const double nu = fam.nu;
        const cplx f = phi_map(z);
        // (z^2-1)^{nu/2+1} read with cut exactly [-1,1] (factor-split), as for
        // the outer quartic root
        const cplx pref = std::pow(f, nu + 1.0) /
                          (std::pow(2.0, nu + 2.0) * pow_z2m1(z, nu / 2.0 + 1.0));
        CMatrix M(2);
        M(0, 0) = 2.0 * z;
        M(0, 1) = -2.0 * std::sqrt(2.0);
        M(1, 0) = -std::sqrt(2.0);
        M(1, 1) = 2.0 * z;
        return pref * M;
    }
    throw std::domain_error("closed_form_outer: unsupported family");
}

CMatrix closed_form_inner(const WeightFamily& fam, int n, double x) {
    const double th = arccos_stable(x);
    if (fam.kind == FamilyKind::Jacobi && fam.r == 2) {
        const double al = fam.alpha, be = fam.beta;
        const double g = (n + 1.0 + (al + be) / 2.0) * th - al * M_PI / 2.0 - M_PI / 4.0;
        const double pref = std::pow(2.0, -(al + be) / 2.0) /
                            (std::pow(1.0 - x, (2.0 * al + 5.0) / 4.0) *
                             std::pow(1.0 + x, (2.0 * be + 3.0) / 4.0));
        CMatrix M(2);
        M(0, 0) = (1.0 - x) * std::cos(g);
        M(0, 1) = -2.0 * std::cos(g);
        M(1, 1) = -std::sqrt(1.0 + x) / std::sqrt(2.0) * std::cos(g + th / 2.0);
        return pref * M;
    }
    if (fam.kind == FamilyKind::GegenbauerBlock2) {
        const double nu = fam.nu;
        const double pref = -std::pow(2.0, -nu - 1.0) / std::pow(1.0 - x * x, nu / 2.0 + 1.0) *
                            std::cos((n + nu + 1.0) * th - nu * M_PI / 2.0);
        CMatrix M(2);
        M(0, 0) = 2.0 * x;
        M(0, 1) = -2.0 * std::sqrt(2.0);
        M(1, 0) = -std::sqrt(2.0);
        M(1, 1) = 2.0 * x;
        return pref * M;
    }
    throw std::domain_error("closed_form_inner: unsupported family");
}

namespace {

// all x = cos(t), t = (off + k*pi)/den in (0, pi), ascending in x
std::vector<double> cosine_solutions(double off, double den, int n_hint) {
    std::vector<double> out;
    for (int k = -2; k <= 2 * n_hint + 2; ++k) {
        const double t = (off + k * M_PI) / den;
        if (t > 0.0 && t < M_PI) out.push_back(std::cos(t));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

void predicted_zeros(const WeightFamily& fam, int n, std::vector<double>& group1,
                     std::vector<double>& group2) {
    group1.clear();
    group2.clear();
    if (fam.kind == FamilyKind::Jacobi && fam.r == 2) {
        const double al = fam.alpha, be = fam.beta;
        const double off = al * M_PI / 2.0 + 3.0 * M_PI / 4.0;
        group1 = cosine_solutions(off, n + 1.0 + (al + be) / 2.0, n);
        group2 = cosine_solutions(off, n + 1.5 + (al + be) / 2.0, n);
        return;
    }
    if (fam.kind == FamilyKind::GegenbauerBlock2) {
        const double nu = fam.nu;
        group1 = cosine_solutions(nu * M_PI / 2.0 + M_PI / 2.0, n + nu + 1.0, n);
        return;
    }
    throw std::domain_error("predicted_zeros: unsupported family");
}

double predicted_det(const WeightFamily& fam, int n, double x) {
    if (fam.kind != FamilyKind::GegenbauerBlock2)
        throw std::domain_error("predicted_det: unsupported family");
    const double nu = fam.nu;
    const double c = std::cos((n + nu + 1.0) * arccos_stable(x) - nu * M_PI / 2.0);
    return -std::pow(2.0, -2.0 * nu) * std::pow(1.0 - x * x, -nu - 1.0) * c * c;
}

CMatrix jacobi_Cn_closed(double a, double b, double k, int n) {
    const double f = 4.0 * n * (a + n + 1.0) /
                     ((k + n) * (a + b + 2.0 * n + 1.0) * (a + b + 2.0 * n + 2.0));
    CMatrix L1 = CMatrix::identity(2), L2 = CMatrix::identity(2), M(2);
    L1(1, 0) = (a - k + 1.0) / (a + n + b - k + 2.0);
    L2(1, 0) = -(a - k + 1.0) / (a + n + 1.0 + b - k);
    M(0, 0) = (a + b + n + 1.0) * (a + b + n - k + 2.0) * (b + n) * (k + n - 1.0) /
              ((a + b + 2.0 * n + 1.0) * (a + b + 2.0 * n) * (a + b + n + 1.0 - k));
    M(0, 1) = -k / (k + n);
    M(1, 1) = (a + b + n + 2.0) * (a + b + n + 1.0 - k) * (b + n + 1.0) * (k + n + 1.0) /
              ((a + b + n - k + 2.0) * (a + b + 2.0 * n + 2.0) * (a + b + 2.0 * n + 3.0));
    return f * (L1 * M * L2);
}

CMatrix jacobi_B2_closed(double a, double b, double k) {
    const double p = k / (a + 1.0 - k);
    CMatrix M(2);
    M(0, 0) = 0.25 * ((b + 1.0) * (b + 1.0) - a * a) - (a + 1.0) / (1.0 + p);
    M(0, 1) = -(a + 1.0) / (1.0 + p) * 2.0 * p;
    M(1, 0) = -(a + 1.0) / (1.0 + p) * 0.5;
    M(1, 1) = 0.25 * (b * b - (a + 2.0) * (a + 2.0)) + (a + 1.0) / (1.0 + p);
    return M;
}

CMatrix geg_Btilde(double nu, int n) {
    CMatrix M(3);
    M(0, 1) = (nu + 1.0) / ((n + nu + 1.0) * (n + nu + 2.0));
    M(2, 1) = M(0, 1);
    M(1, 0) = nu / (2.0 * (n + nu) * (n + nu + 1.0));
    M(1, 2) = M(1, 0);
    return M;
}

CMatrix geg_Ctilde(double nu, int n) {
    const double f = n * (n + 2.0 * nu + 1.0) / (4.0 * (n + nu) * (n + nu + 1.0));
    CMatrix M(3);
    M(0, 0) = f;
    M(1, 1) = f * (n + nu - 1.0) * (n + nu + 2.0) / ((n + nu) * (n + nu + 1.0));
    M(2, 2) = f;
    return M;
}

CMatrix geg_block_B2_closed(double nu) {
    CMatrix M(2);
    M(0, 1) = std::sqrt(2.0) * (1.0 + nu);
    M(1, 0) = nu / std::sqrt(2.0);
    return M;
}

CMatrix geg_block_Bn_closed(double nu, int n) {
    // entrywise denominators (the (2,1) entry carries (n+nu)(n+nu+1))
    CMatrix M(2);
    M(0, 1) = std::sqrt(2.0) * (1.0 + nu) / ((n + nu + 1.0) * (n + nu + 2.0));
    M(1, 0) = nu / std::sqrt(2.0) / ((n + nu) * (n + nu + 1.0));
    return M;
}

CMatrix jacobi_mh_closed(double a, double b, double k, double theta) {
    const double p = k / (a + 1.0 - k);
    CMatrix M(2);
    M(0, 0) = 2.0 * p;
    M(0, 1) = 2.0 * std::sqrt(p);
    M(1, 0) = -1.0;
    M(1, 1) = std::sqrt(p);
    std::vector<cplx> d = {std::pow(theta, -a) * bessel_j(a, theta),
                           std::pow(theta, -a - 2.0) * bessel_j(a + 2.0, theta)};
    return (std::pow(2.0, -(a + b) / 2.0 - 2.0) / std::sqrt(1.0 + p)) * (M * diag_matrix(d));
}

CMatrix geg_block_mh_closed(double nu, double theta) {
    CMatrix M(2);
    M(0, 0) = std::sqrt(2.0) * (nu + 1.0);
    M(0, 1) = -std::sqrt(2.0 * nu * (nu + 1.0));
    M(1, 0) = nu;
    M(1, 1) = std::sqrt(nu * (nu + 1.0));
    std::vector<cplx> d = {std::pow(theta, -nu + 0.5) * bessel_j(nu - 0.5, theta),
                           std::pow(theta, -nu - 1.5) * bessel_j(nu + 1.5, theta)};
    return (std::pow(2.0, -nu - 0.5) / std::sqrt(1.0 + 2.0 * nu)) * (M * diag_matrix(d));
}

}  // namespace mvop
