#include "mvop/exact.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "mvop/quadrature.hpp"
#include "mvop/specfun.hpp"

namespace mvop {

namespace {

// sum_i w_i F_i (H_i G_i^*), with optional extra factor x_i
CMatrix node_inner(const std::vector<double>& w, const std::vector<double>& x,
                   const std::vector<CMatrix>& F, const std::vector<CMatrix>& HGs,
                   bool times_x) {
    const int r = F[0].dim();
    CMatrix acc(r);
    for (size_t i = 0; i < w.size(); ++i) {
        CMatrix term = F[i] * HGs[i];
        term *= cplx(times_x ? w[i] * x[i] : w[i]);
        acc += term;
    }
    return acc;
}

double seg_dist(cplx z) {
    const double dx = std::max(std::abs(z.real()) - 1.0, 0.0);
    return std::hypot(dx, z.imag());
}

}  // namespace

RecurrenceTable stieltjes(const WeightFamily& fam, int nmax, int m) {
    if (nmax < 1) throw std::invalid_argument("stieltjes: nmax must be >= 1");
    if (m == 0) m = default_nodes(fam, nmax);
    const int r = fam.r;
    QuadRule rule = gauss_jacobi(m, fam.alpha, fam.beta);
    const auto& x = rule.nodes;
    const auto& w = rule.weights;

    std::vector<CMatrix> Hv(m);
    for (int i = 0; i < m; ++i) Hv[i] = fam.H(x[i]);

    RecurrenceTable tab;
    tab.fam = fam;
    tab.nmax = nmax;
    tab.quad_nodes = m;
    tab.B.reserve(nmax);
    tab.C.assign(1, CMatrix::zero(r));
    tab.Gamma.reserve(nmax);

    std::vector<CMatrix> Pprev(m, CMatrix::zero(r)), Pcur(m, CMatrix::identity(r));
    std::vector<CMatrix> HPs(m), HPps(m);
    for (int n = 0; n < nmax; ++n) {
        for (int i = 0; i < m; ++i) {
            HPs[i] = Hv[i] * Pcur[i].adjoint();
            if (n > 0) HPps[i] = Hv[i] * Pprev[i].adjoint();
        }
        CMatrix G = node_inner(w, x, Pcur, HPs, false);
        G = 0.5 * (G + G.adjoint());
        HermEig eg = herm_eig(G);
        if (eg.lam.front() <= 0.0)
            throw std::runtime_error("stieltjes: Gamma_" + std::to_string(n) +
                                     " not positive definite (min eig " +
                                     std::to_string(eg.lam.front()) + ")");
        tab.Gamma.push_back(G);
        const CMatrix Ginv = inv(G);
        tab.B.push_back(node_inner(w, x, Pcur, HPs, true) * Ginv);
        if (n > 0) tab.C.push_back(node_inner(w, x, Pcur, HPps, true) * inv(tab.Gamma[n - 1]));

        const CMatrix& Bn = tab.B[n];
        const CMatrix& Cn = tab.C[n];
        for (int i = 0; i < m; ++i) {
            CMatrix next = Pcur[i];
            next *= cplx(x[i]);
            next -= Bn * Pcur[i];
            if (n > 0) next -= Cn * Pprev[i];
            Pprev[i] = Pcur[i];
            Pcur[i] = next;
        }
    }
    return tab;
}

CMatrix mvop_eval_scaled(const RecurrenceTable& tab, int n, double x) {
    if (n > tab.nmax) throw std::invalid_argument("mvop_eval_scaled: n > nmax");
    const int r = tab.fam.r;
    CMatrix prev = CMatrix::zero(r), cur = CMatrix::identity(r);
    for (int j = 0; j < n; ++j) {
        CMatrix mid = cur;
        mid *= cplx(2.0 * x);
        mid -= 2.0 * (tab.B[j] * cur);
        if (j > 0) mid -= 4.0 * (tab.C[j] * prev);
        prev = cur;
        cur = mid;
    }
    return cur;
}

CMatrix mvop_eval_outer(const RecurrenceTable& tab, int n, cplx z) {
    if (n > tab.nmax) throw std::invalid_argument("mvop_eval_outer: n > nmax");
    if (seg_dist(z) < 1e-3)
        throw std::domain_error("mvop_eval_outer: z within 1e-3 of [-1,1]");
    const int r = tab.fam.r;
    const cplx f = phi_map(z);
    CMatrix prev = CMatrix::zero(r), cur = CMatrix::identity(r);
    for (int j = 0; j < n; ++j) {
        CMatrix mid = cur;
        mid *= 2.0 * z / f;
        mid -= (2.0 / f) * (tab.B[j] * cur);
        if (j > 0) mid -= (4.0 / (f * f)) * (tab.C[j] * prev);
        prev = cur;
        cur = mid;
    }
    return cur;
}

namespace {

double bisect_zero(const std::function<double(double)>& f, double a, double b, double fa) {
    while (b - a > 1e-12) {
        const double c = 0.5 * (a + b);
        const double fc = f(c);
        if (fc == 0.0) return c;
        if ((fa < 0) != (fc < 0)) b = c;
        else a = c, fa = fc;
    }
    return 0.5 * (a + b);
}

double golden_min(const std::function<double(double)>& f, double a, double b) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d, d = c, fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<double> det_zeros(const RecurrenceTable& tab, int n) {
    if (n > tab.nmax) throw std::invalid_argument("det_zeros: n > nmax");
    const int r = tab.fam.r;
    auto fdet = [&](double x) { return det(mvop_eval_scaled(tab, n, x)).real(); };
    auto fabsd = [&](double x) { return std::abs(fdet(x)); };

    const int M = 20 * r * n;
    std::vector<double> grid(M), fv(M);
    for (int k = 0; k < M; ++k) grid[k] = -std::cos(M_PI * (k + 0.5) / M);  // ascending
    for (int k = 0; k < M; ++k) fv[k] = fdet(grid[k]);

    std::vector<double> zeros;
    for (int k = 0; k + 1 < M; ++k)
        if ((fv[k] < 0) != (fv[k + 1] < 0))
            zeros.push_back(bisect_zero(fdet, grid[k], grid[k + 1], fv[k]));

    // near-double zeros: interior |det| minima well below the local scale
    for (int k = 1; k + 1 < M; ++k) {
        const double av = std::abs(fv[k]);
        if (av >= std::abs(fv[k - 1]) || av >= std::abs(fv[k + 1])) continue;
        double scale = 0.0;
        for (int j = std::max(0, k - 10); j <= std::min(M - 1, k + 10); ++j)
            scale = std::max(scale, std::abs(fv[j]));
        if (av >= 1e-8 * scale) continue;
        const double xz = golden_min(fabsd, grid[k - 1], grid[k + 1]);
        bool dup = false;
        for (double z0 : zeros) dup = dup || std::abs(z0 - xz) < 1e-8;
        if (!dup) zeros.push_back(xz);
    }

    std::sort(zeros.begin(), zeros.end());
    if (static_cast<int>(zeros.size()) > r * n)
        throw std::logic_error("det_zeros: found more than r*n zeros");
    return zeros;
}

std::string table_to_json(const RecurrenceTable& tab) {
    using nlohmann::json;
    auto mat_json = [](const CMatrix& A) {
        json rows = json::array();
        for (int i = 0; i < A.dim(); ++i) {
            json row = json::array();
            for (int j = 0; j < A.dim(); ++j)
                row.push_back(json::array({A(i, j).real(), A(i, j).imag()}));
            rows.push_back(row);
        }
        return rows;
    };
    json doc;
    doc["family"] = {{"label", tab.fam.label},
                     {"r", tab.fam.r},
                     {"alpha", tab.fam.alpha},
                     {"beta", tab.fam.beta}};
    if (!tab.fam.scalar_note.empty()) doc["family"]["scalar_note"] = tab.fam.scalar_note;
    doc["nmax"] = tab.nmax;
    doc["quad_nodes"] = tab.quad_nodes;
    json B = json::array(), C = json::array(), G = json::array();
    for (const auto& M : tab.B) B.push_back(mat_json(M));
    for (size_t i = 1; i < tab.C.size(); ++i) C.push_back(mat_json(tab.C[i]));
    for (const auto& M : tab.Gamma) G.push_back(mat_json(M));
    doc["B"] = std::move(B);
    doc["C"] = std::move(C);
    doc["Gamma"] = std::move(G);
    return doc.dump(2);
}

}  // namespace mvop
