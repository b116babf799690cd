#include "mvop/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <type_traits>

#include "json.hpp"
#include "mvop/asym.hpp"
#include "mvop/exact.hpp"
#include "mvop/quadrature.hpp"
#include "mvop/specfun.hpp"
#include "mvop/szego.hpp"

namespace mvop {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json mat_json(const CMatrix& A) {
    json rows = json::array();
    for (int i = 0; i < A.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < A.dim(); ++j)
            row.push_back(json::array({A(i, j).real(), A(i, j).imag()}));
        rows.push_back(row);
    }
    return rows;
}

void write_artifact(const RunConfig& cfg, const std::string& default_name,
                    const std::string& text) {
    if (cfg.to_stdout) {
        std::cout << text;
        return;
    }
    const std::string path = cfg.out.empty() ? default_name : cfg.out;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << text;
    std::cerr << "wrote " << path << "\n";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << text;
    std::cerr << "wrote " << path << "\n";
}

double fit_exponent(const std::vector<int>& ns, const std::vector<double>& errs) {
    // least-squares slope of log E vs log n (returned as the decay exponent)
    const size_t m = ns.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        const double lx = std::log(double(ns[i])), ly = std::log(errs[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

struct CompareRow {
    int n;
    double max_err;
    std::string argmax;
};

std::string report_text(const RunConfig& cfg, const std::string& regime,
                        const std::vector<CompareRow>& rows, double exponent, bool pass) {
    if (cfg.format == "json") {
        json doc;
        doc["regime"] = regime;
        doc["rows"] = json::array();
        for (const auto& r : rows)
            doc["rows"].push_back({{"n", r.n}, {"max_error", r.max_err}, {"argmax", r.argmax}});
        if (rows.size() >= 3) doc["exponent"] = exponent;
        doc["pass"] = pass;
        return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "n,max_error,argmax\n";
    for (const auto& r : rows) os << r.n << "," << fmt17(r.max_err) << "," << r.argmax << "\n";
    if (rows.size() >= 3) os << "exponent," << fmt17(exponent) << "\n";
    os << "pass," << (pass ? 1 : 0) << "\n";
    return os.str();
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
    json doc = json::parse(text);
    RunConfig c;
    auto get = [&](const char* key, auto& dst) {
        if (doc.contains(key)) dst = doc[key].get<std::decay_t<decltype(dst)>>();
    };
    get("family", c.family);
    get("alpha", c.alpha);
    get("beta", c.beta);
    get("k", c.k);
    get("nu", c.nu);
    get("ell", c.ell);
    get("two_ell", c.two_ell);
    get("nmax", c.nmax);
    get("nodes", c.nodes);
    get("n", c.n);
    get("out", c.out);
    get("format", c.format);
    get("stdout", c.to_stdout);
    get("op", c.op);
    get("x", c.x);
    get("z_re", c.z_re);
    get("z_im", c.z_im);
    get("theta", c.theta);
    get("order", c.order);
    if (c.format != "csv" && c.format != "json")
        throw std::invalid_argument("config: format must be csv or json");
    return c;
}

std::string config_to_json(const RunConfig& c) {
    json doc;
    doc["family"] = c.family;
    doc["alpha"] = c.alpha;
    doc["beta"] = c.beta;
    doc["k"] = c.k;
    doc["nu"] = c.nu;
    doc["ell"] = c.ell;
    doc["two_ell"] = c.two_ell;
    doc["nmax"] = c.nmax;
    doc["nodes"] = c.nodes;
    doc["n"] = c.n;
    doc["out"] = c.out;
    doc["format"] = c.format;
    doc["stdout"] = c.to_stdout;
    doc["op"] = c.op;
    doc["x"] = c.x;
    doc["z_re"] = c.z_re;
    doc["z_im"] = c.z_im;
    doc["theta"] = c.theta;
    doc["order"] = c.order;
    return doc.dump(2);
}

WeightFamily family_from_config(const RunConfig& cfg) {
    if (cfg.family == "jacobi") return jacobi_family(cfg.alpha, cfg.beta, cfg.k, cfg.ell);
    if (cfg.family == "gegenbauer") return gegenbauer_family(cfg.nu, cfg.two_ell);
    if (cfg.family == "gegenbauer_block") return gegenbauer_block2(cfg.nu);
    if (cfg.family == "legendre") {
        WeightFamily f = custom_family(0.0, 0.0, {CMatrix::identity(1)});
        f.label = "legendre";
        return f;
    }
    throw std::invalid_argument("config: unknown family " + cfg.family);
}

int resolve_nodes(const RunConfig& cfg) {
    if (cfg.nodes > 0) return cfg.nodes;
    if (const char* env = std::getenv("MVOP_QUAD_NODES")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;
}

namespace {

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return EXIT_CONFIG;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return EXIT_CONFIG;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return EXIT_NUMERICAL;
    }
}

}  // namespace

int cmd_recurrence(const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        WeightFamily fam = family_from_config(cfg);
        RecurrenceTable tab = stieltjes(fam, cfg.nmax, resolve_nodes(cfg));
        write_artifact(cfg, "table.json", table_to_json(tab));

        json report;
        report["family"] = fam.label;
        report["nmax"] = tab.nmax;
        bool pass = true;
        const int ntop = std::min(30, tab.nmax - 1);

        if (fam.kind == FamilyKind::Jacobi && fam.r == 2) {
            double res = 0;
            for (int n = 1; n <= ntop; ++n) {
                CMatrix ref = jacobi_Cn_closed(fam.alpha, fam.beta, fam.k, n);
                res = std::max(res, (tab.C[n] - ref).max_abs() / ref.max_abs());
            }
            report["cn_closed_rel_residual"] = res;
            pass = pass && res <= 1e-9;
            if (tab.nmax > 100) {
                CMatrix B2 = jacobi_B2_closed(fam.alpha, fam.beta, fam.k);
                const double dev = (1e4 * tab.B[100] - B2).fro();
                report["n2Bn_vs_B2_at_100"] = dev;
                pass = pass && dev <= 0.05 * std::max(B2.fro(), 0.1);
            }
        } else if (fam.kind == FamilyKind::Gegenbauer && fam.r == 3) {
            double resB = 0, resC = 0, off = 0;
            CMatrix Y = gegenbauer_Y(fam.two_ell);
            for (int n = 1; n <= ntop; ++n) {
                CMatrix refB = geg_Btilde(fam.nu, n), refC = geg_Ctilde(fam.nu, n);
                resB = std::max(resB, (tab.B[n] - refB).max_abs() / refB.max_abs());
                resC = std::max(resC, (tab.C[n] - refC).max_abs() / refC.max_abs());
                CMatrix Mb = Y * tab.B[n] * Y.transpose();
                CMatrix Mc = Y * tab.C[n] * Y.transpose();
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        if ((i == 2) != (j == 2))
                            off = std::max(off, std::max(std::abs(Mb(i, j)), std::abs(Mc(i, j))));
            }
            report["btilde_rel_residual"] = resB;
            report["ctilde_rel_residual"] = resC;
            report["y_conj_off_block"] = off;
            pass = pass && resB <= 1e-9 && resC <= 1e-9 && off <= 1e-10;
        } else if (fam.kind == FamilyKind::GegenbauerBlock2) {
            double resB = 0;
            for (int n = 1; n <= ntop; ++n) {
                CMatrix ref = geg_block_Bn_closed(fam.nu, n);
                resB = std::max(resB, (tab.B[n] - ref).max_abs() / ref.max_abs());
            }
            report["bn_closed_rel_residual"] = resB;
            pass = pass && resB <= 1e-9;
        } else if (fam.label == "legendre") {
            double maxB = 0;
            for (const auto& B : tab.B) maxB = std::max(maxB, B.max_abs());
            report["max_abs_Bn"] = maxB;
            pass = pass && maxB <= 1e-10;
        }
        report["pass"] = pass;
        const std::string rpath = (cfg.out.empty() ? std::string("table.json") : cfg.out) + ".report.json";
        write_file(rpath, report.dump(2) + "\n");
        return pass ? EXIT_PASS : EXIT_TOL_FAIL;
    });
}

int cmd_compare(const RunConfig& cfg, const std::string& regime) {
    return run_guarded([&]() -> int {
        WeightFamily fam = family_from_config(cfg);
        std::vector<CompareRow> rows;
        bool pass = true;
        double exponent = 0.0;

        if (regime == "inner" || regime == "outer") {
            const std::vector<int> ns = {10, 20, 40, 80};
            RecurrenceTable tab = stieltjes(fam, 81, resolve_nodes(cfg));
            AsymContext ctx = make_context(fam);
            std::vector<double> errs;
            for (int n : ns) {
                double e = 0;
                std::string arg;
                if (regime == "inner") {
                    for (int i = 0; i < 41; ++i) {
                        const double x = -0.8 + 1.6 * i / 40.0;
                        const double d = (mvop_eval_scaled(tab, n, x) - inner_eval(ctx, n, x)).fro();
                        if (d > e) e = d, arg = fmt17(x);
                    }
                } else {
                    for (cplx z : {cplx(2.0, 0.0), cplx(1.5, 0.5)}) {
                        const double d =
                            (mvop_eval_outer(tab, n, z) - outer_eval(ctx, n, z, cfg.order)).fro();
                        if (d > e) e = d, arg = fmt17(z.real()) + "+" + fmt17(z.imag()) + "i";
                    }
                }
                errs.push_back(e);
                rows.push_back({n, e, arg});
            }
            exponent = fit_exponent(ns, errs);
            const double lo = (regime == "outer" && cfg.order == 1) ? 1.6 : 0.7;
            const double hi = (regime == "outer" && cfg.order == 1) ? 2.6 : 1.4;
            pass = exponent >= lo && exponent <= hi;
            for (size_t i = 1; i < errs.size(); ++i) pass = pass && errs[i] < errs[i - 1];
        } else if (regime == "endpoint") {
            const std::vector<int> ns = {20, 40, 80};
            RecurrenceTable tab = stieltjes(fam, 81, resolve_nodes(cfg));
            AsymContext ctx = make_context(fam);
            std::vector<double> errs;
            for (int n : ns) {
                const double x = std::cos(2.0 / n);
                const CMatrix lhs =
                    std::ldexp(1.0, -n) * (mvop_eval_scaled(tab, n, x) * sqrt_psd(fam.W(x)));
                const CMatrix rhs = endpoint_eval(ctx, n, x);
                const double e = (lhs - rhs).fro() / rhs.fro();
                errs.push_back(e);
                rows.push_back({n, e, fmt17(x)});
            }
            exponent = fit_exponent(ns, errs);
            pass = errs[1] <= 0.15 && errs[2] < errs[1];
        } else if (regime == "mh") {
            const std::vector<int> ns = {50, 100, 200};
            RecurrenceTable tab = stieltjes(fam, 201, resolve_nodes(cfg));
            AsymContext ctx = make_context(fam);
            std::vector<double> maxerrs(ns.size(), 0.0);
            for (double th : {1.0, 2.0, 5.0}) {
                std::vector<double> errs;
                for (size_t i = 0; i < ns.size(); ++i) {
                    const double e = (mh_lhs(ctx, tab, ns[i], th) - mehler_heine(ctx, th)).fro();
                    errs.push_back(e);
                    maxerrs[i] = std::max(maxerrs[i], e);
                }
                for (size_t i = 1; i < errs.size(); ++i) pass = pass && errs[i] < errs[i - 1];
            }
            for (size_t i = 0; i < ns.size(); ++i)
                rows.push_back({ns[i], maxerrs[i], "max_over_theta"});
            exponent = fit_exponent(ns, maxerrs);
        } else {
            throw std::invalid_argument("compare: unknown regime " + regime);
        }

        write_artifact(cfg, "compare_" + regime + "." + cfg.format,
                       report_text(cfg, regime, rows, exponent, pass));
        return pass ? EXIT_PASS : EXIT_TOL_FAIL;
    });
}

int cmd_figure(int id, const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        if (id < 1 || id > 4) throw std::invalid_argument("figure: id must be 1..4");
        RunConfig c = cfg;
        if (id <= 2) {
            c.family = "jacobi";
            c.ell = 1;
        } else {
            c.family = "gegenbauer_block";
        }
        WeightFamily fam = family_from_config(c);
        const int n = c.n;
        RecurrenceTable tab = stieltjes(fam, n + 1, resolve_nodes(c));
        std::ostringstream os;
        if (id == 1 || id == 3) {
            os << "x";
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j)
                    os << ",exact_re_" << i << "_" << j << ",exact_im_" << i << "_" << j
                       << ",asym_re_" << i << "_" << j << ",asym_im_" << i << "_" << j;
            os << "\n";
            for (int kk = 0; kk < 401; ++kk) {
                const double x = -0.99 + 1.98 * kk / 400.0;
                CMatrix E = mvop_eval_scaled(tab, n, x);
                CMatrix F = closed_form_inner(fam, n, x);
                os << fmt17(x);
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        os << "," << fmt17(E(i, j).real()) << "," << fmt17(E(i, j).imag()) << ","
                           << fmt17(F(i, j).real()) << "," << fmt17(F(i, j).imag());
                os << "\n";
            }
        } else {
            os << "x,det\n";
            for (int kk = 0; kk < 401; ++kk) {
                const double x = -0.99 + 1.98 * kk / 400.0;
                os << fmt17(x) << "," << fmt17(det(mvop_eval_scaled(tab, n, x)).real()) << "\n";
            }
            std::vector<double> g1, g2;
            predicted_zeros(fam, n, g1, g2);
            std::ostringstream zs;
            zs << "group,x\n";
            for (double x : g1) zs << "1," << fmt17(x) << "\n";
            for (double x : g2) zs << "2," << fmt17(x) << "\n";
            const std::string base =
                c.out.empty() ? ("fig" + std::to_string(id) + ".csv") : c.out;
            write_file(base + ".zeros.csv", zs.str());
        }
        write_artifact(c, "fig" + std::to_string(id) + ".csv", os.str());
        return EXIT_PASS;
    });
}

namespace {

struct Invariant {
    std::string name;
    bool pass;
    double value;
    double tol;
};

void check(std::vector<Invariant>& out, const std::string& name, double value, double tol) {
    out.push_back({name, value <= tol, value, tol});
}

}  // namespace

int cmd_validate(const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        WeightFamily fam = family_from_config(cfg);
        std::vector<Invariant> inv;

        // quadrature: refinement idempotence on a polynomial integrand
        {
            auto Pf = [&](double x) {
                CMatrix M = CMatrix::identity(fam.r);
                return M * cplx(x * x * x - 0.25 * x);
            };
            const int m = 24;
            CMatrix a = matrix_inner(Pf, Pf, fam, m), b = matrix_inner(Pf, Pf, fam, 2 * m);
            check(inv, "quadrature_refinement", (a - b).max_abs() / std::max(1.0, b.max_abs()),
                  1e-12);
            QuadRule rule = gauss_jacobi(12, fam.alpha, fam.beta);
            double mass = 0;
            for (double w : rule.weights) mass += w;
            check(inv, "quadrature_mass",
                  std::abs(mass - jacobi_mass(fam.alpha, fam.beta)) /
                      jacobi_mass(fam.alpha, fam.beta),
                  1e-12);
        }
        // phi identities
        {
            double e1 = 0, e2 = 0;
            for (int i = 1; i < 40; ++i) {
                const double x = -1.0 + 2.0 * i / 40.0;
                e1 = std::max(e1, std::abs(phi_boundary(x, +1) * phi_boundary(x, -1) - 1.0));
            }
            for (cplx z : {cplx(2, 0), cplx(-3, 0.5), cplx(0.2, 1.1), cplx(1.4, -0.3)}) {
                const cplx f = phi_map(z);
                e2 = std::max(e2, std::abs(f + 1.0 / f - 2.0 * z));
            }
            check(inv, "phi_plus_minus_product", e1, 1e-14);
            check(inv, "phi_joukowski", e2, 1e-12);
        }
        // Bessel three-term recurrence
        {
            double e = 0;
            for (double nu : {0.5, 1.0, 2.5}) {
                for (double x : {0.7, 2.0, 9.0}) {
                    const double lhs = bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x);
                    e = std::max(e, std::abs(lhs - 2.0 * nu / x * bessel_j(nu, x)));
                }
            }
            check(inv, "bessel_recurrence", e, 1e-12);
        }
        // weight Hermitian positive definite on grid
        {
            double minlam = 1e300, herm = 0;
            for (int i = 1; i < 201; ++i) {
                const double x = -1.0 + 2.0 * i / 201.0;
                CMatrix H = fam.H(x);
                herm = std::max(herm, (H - H.adjoint()).max_abs());
                minlam = std::min(minlam, herm_eig(H).lam.front());
            }
            check(inv, "H_hermitian", herm, 1e-12);
            inv.push_back({"H_positive_definite", minlam > 0.0, minlam, 0.0});
        }

        // exact: table invariants
        RecurrenceTable tab = stieltjes(fam, cfg.nmax, resolve_nodes(cfg));
        {
            double minlam = 1e300;
            for (const auto& G : tab.Gamma) minlam = std::min(minlam, herm_eig(G).lam.front());
            inv.push_back({"Gamma_positive_definite", minlam > 0.0, minlam, 0.0});

            // orthogonality residual via node values on the same rule
            QuadRule rule = gauss_jacobi(tab.quad_nodes, fam.alpha, fam.beta);
            const int m = tab.quad_nodes;
            std::vector<CMatrix> Hv(m);
            for (int i = 0; i < m; ++i) Hv[i] = fam.H(rule.nodes[i]);
            std::vector<std::vector<CMatrix>> Pv(tab.nmax);
            for (int i = 0; i < m; ++i) {
                CMatrix prev = CMatrix::zero(fam.r), cur = CMatrix::identity(fam.r);
                for (int nn = 0; nn < tab.nmax; ++nn) {
                    if (static_cast<int>(Pv[nn].size()) != m) Pv[nn].resize(m);
                    Pv[nn][i] = cur;
                    CMatrix nxt = cur;
                    nxt *= cplx(rule.nodes[i]);
                    nxt -= tab.B[nn] * cur;
                    if (nn > 0) nxt -= tab.C[nn] * prev;
                    prev = cur;
                    cur = nxt;
                }
            }
            double res = 0;
            for (int nn = 1; nn < tab.nmax; ++nn)
                for (int mm = 0; mm < nn; ++mm) {
                    CMatrix acc(fam.r);
                    for (int i = 0; i < m; ++i) {
                        CMatrix t = Pv[nn][i] * (Hv[i] * Pv[mm][i].adjoint());
                        t *= cplx(rule.weights[i]);
                        acc += t;
                    }
                    res = std::max(res, acc.fro() / tab.Gamma[mm].fro());
                }
            // r >= 4: inherent double-precision drift at large nmax (matches
            // reference implementations); bound relaxed and documented
            check(inv, "orthogonality_residual", res, fam.r >= 4 ? 1e-7 : 1e-9);
        }
        {
            // node-refinement stability for n <= 30
            RecurrenceTable tab2 = stieltjes(fam, std::min(cfg.nmax, 31), (3 * tab.quad_nodes) / 2);
            double dev = 0;
            for (int nn = 0; nn < tab2.nmax; ++nn) {
                dev = std::max(dev, (tab.B[nn] - tab2.B[nn]).max_abs() /
                                        std::max(1.0, tab.B[nn].max_abs()));
                dev = std::max(dev, (tab.C[nn] - tab2.C[nn]).max_abs() /
                                        std::max(1.0, tab.C[nn].max_abs()));
            }
            check(inv, "quadrature_refinement_stability", dev, fam.r >= 4 ? 1e-9 : 1e-10);
        }
        if (cfg.nmax > 100) {
            const CMatrix Cn = tab.C[100], Bn = tab.B[100];
            check(inv, "Cn_limit_rate", (Cn - 0.25 * CMatrix::identity(fam.r)).fro(), 10.0 / 1e4);
            check(inv, "Bn_limit_rate", Bn.fro(), 10.0 / 1e4);
        }

        // szego-dependent invariants
        if (fam.kind != FamilyKind::Custom) {
            SzegoData sz = make_szego(fam);
            double rel = 0;
            for (int i = 1; i < 201; ++i) {
                const double x = -1.0 + 2.0 * i / 201.0;
                CMatrix W = fam.W(x);
                CMatrix Dp = sz.Dplus(x), Dm = sz.Dminus(x);
                rel = std::max(rel, (Dp * Dp.adjoint() - W).fro() / W.fro());
                rel = std::max(rel, (Dm * Dm.adjoint() - W).fro() / W.fro());
            }
            check(inv, "szego_factorization", rel, 1e-10);

            if (fam.r == 2) {
                EndpointUnitaries U = endpoint_unitaries(fam);
                const CMatrix I2 = CMatrix::identity(2);
                check(inv, "U1_unitarity", (U.U1.adjoint() * U.U1 - I2).fro(), 1e-12);
                check(inv, "Um1_unitarity", (U.Um1.adjoint() * U.Um1 - I2).fro(), 1e-12);
                if (U.closed_form) {
                    EndpointUnitaries Ue = endpoint_unitaries_extrapolated(fam);
                    check(inv, "U_closed_vs_extrapolated",
                          std::max((U.U1 - Ue.U1).max_abs(), (U.Um1 - Ue.Um1).max_abs()), 1e-6);
                }
                AsymContext ctx = make_context(fam);
                if (fam.kind == FamilyKind::Jacobi || fam.kind == FamilyKind::GegenbauerBlock2) {
                    double e = 0;
                    for (int i = 0; i < 51; ++i) {
                        const double x = -0.9 + 1.8 * i / 50.0;
                        const CMatrix F = closed_form_inner(fam, 25, x);
                        e = std::max(e, (inner_eval(ctx, 25, x) - F).fro() /
                                            std::max(1.0, F.fro()));
                    }
                    check(inv, "inner_vs_closed_form", e, 1e-10);
                    double eo = 0;
                    for (int i = 0; i < 20; ++i) {
                        const cplx z = std::polar(1.8, 2.0 * M_PI * i / 20.0) + cplx(0.1, 0.05);
                        const CMatrix F = closed_form_outer(fam, z);
                        eo = std::max(
                            eo, (outer_eval(ctx, 1, z, 0) - F).fro() / std::max(1.0, F.fro()));
                    }
                    check(inv, "outer_vs_closed_form", eo, 1e-10);
                    CMatrix B2c = (fam.kind == FamilyKind::Jacobi)
                                      ? jacobi_B2_closed(fam.alpha, fam.beta, fam.k)
                                      : geg_block_B2_closed(fam.nu);
                    check(inv, "b2_closed_form", (asym_B2(ctx) - B2c).max_abs(), 1e-12);
                }
            }
            if (fam.kind == FamilyKind::Gegenbauer) {
                CMatrix Y = gegenbauer_Y(fam.two_ell);
                const int dm = fam.r;
                check(inv, "Y_orthogonal",
                      (Y * Y.transpose() - CMatrix::identity(dm)).max_abs(), 1e-14);
                double off = 0;
                const int mtop = dm / 2;
                for (int i = 1; i < 41; ++i) {
                    const double x = -1.0 + 2.0 * i / 41.0;
                    CMatrix W = fam.W(x);
                    CMatrix M = Y * W * Y.transpose();
                    for (int a = 0; a < dm; ++a)
                        for (int b = 0; b < dm; ++b) {
                            const bool a_hi = a >= dm - mtop, b_hi = b >= dm - mtop;
                            if (a_hi != b_hi) off = std::max(off, std::abs(M(a, b)) / W.fro());
                        }
                }
                check(inv, "Y_block_diagonalization", off, 1e-12);
            }
        }

        json doc = json::array();
        bool all = true;
        std::string first_fail;
        for (const auto& r : inv) {
            doc.push_back(
                {{"invariant", r.name}, {"pass", r.pass}, {"value", r.value}, {"tol", r.tol}});
            if (!r.pass && first_fail.empty()) first_fail = r.name;
            all = all && r.pass;
        }
        write_artifact(cfg, "validate.json", doc.dump(2) + "\n");
        if (!all) {
            std::cerr << "validation failed: " << first_fail << "\n";
            return EXIT_TOL_FAIL;
        }
        return EXIT_PASS;
    });
}

int cmd_eval(const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        WeightFamily fam = family_from_config(cfg);
        const cplx z(cfg.z_re, cfg.z_im);
        json doc;
        doc["op"] = cfg.op;
        auto need_table = [&]() { return stieltjes(fam, std::max(cfg.n + 1, 2), resolve_nodes(cfg)); };
        if (cfg.op == "scaled") {
            doc["result"] = mat_json(mvop_eval_scaled(need_table(), cfg.n, cfg.x));
        } else if (cfg.op == "outer_exact") {
            doc["result"] = mat_json(mvop_eval_outer(need_table(), cfg.n, z));
        } else if (cfg.op == "outer") {
            doc["result"] = mat_json(outer_eval(make_context(fam), cfg.n, z, cfg.order));
        } else if (cfg.op == "inner") {
            doc["result"] = mat_json(inner_eval(make_context(fam), cfg.n, cfg.x));
        } else if (cfg.op == "endpoint") {
            doc["result"] = mat_json(endpoint_eval(make_context(fam), cfg.n, cfg.x));
        } else if (cfg.op == "mh_limit") {
            doc["result"] = mat_json(mehler_heine(make_context(fam), cfg.theta));
        } else if (cfg.op == "mh_lhs") {
            doc["result"] = mat_json(mh_lhs(make_context(fam), need_table(), cfg.n, cfg.theta));
        } else if (cfg.op == "b2") {
            doc["result"] = mat_json(asym_B2(make_context(fam)));
        } else if (cfg.op == "det_zeros") {
            doc["result"] = det_zeros(need_table(), cfg.n);
        } else if (cfg.op == "predicted_zeros") {
            std::vector<double> g1, g2;
            predicted_zeros(fam, cfg.n, g1, g2);
            doc["result"] = {{"group1", g1}, {"group2", g2}};
        } else {
            throw std::invalid_argument("eval: unknown op " + cfg.op);
        }
        write_artifact(cfg, "eval.json", doc.dump(2) + "\n");
        return EXIT_PASS;
    });
}

}  // namespace mvop
