#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mvop/harness.hpp"

namespace {

struct CliFlags {
    std::string config_path;
    std::string family, out, format, op;
    double alpha = 0, beta = 0, k = 0, nu = 0, x = 0, z_re = 0, z_im = 0, theta = 0;
    int ell = 0, two_ell = 0, nmax = 0, nodes = 0, n = 0, order = -1;
    bool to_stdout = false;
    bool has(const CLI::App& app, const std::string& name) const {
        return app.count(name) > 0;
    }
};

void add_common(CLI::App* cmd, CliFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--family", f.family, "jacobi|gegenbauer|gegenbauer_block|legendre");
    cmd->add_option("--alpha", f.alpha);
    cmd->add_option("--beta", f.beta);
    cmd->add_option("--k", f.k);
    cmd->add_option("--nu", f.nu);
    cmd->add_option("--ell", f.ell);
    cmd->add_option("--two-ell", f.two_ell);
    cmd->add_option("--nmax", f.nmax);
    cmd->add_option("--nodes", f.nodes);
    cmd->add_option("--n", f.n);
    cmd->add_option("--out", f.out);
    cmd->add_option("--format", f.format)->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--stdout", f.to_stdout, "artifact to stdout, diagnostics to stderr");
    cmd->add_option("--op", f.op);
    cmd->add_option("--x", f.x);
    cmd->add_option("--z-re", f.z_re);
    cmd->add_option("--z-im", f.z_im);
    cmd->add_option("--theta", f.theta);
    cmd->add_option("--order", f.order)->check(CLI::Range(0, 1));
}

int build_config(const CLI::App& cmd, const CliFlags& f, mvop::RunConfig& cfg) {
    try {
        if (!f.config_path.empty()) {
            std::ifstream in(f.config_path);
            if (!in) {
                std::cerr << "config error: cannot read " << f.config_path << "\n";
                return mvop::EXIT_CONFIG;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            cfg = mvop::config_from_json(ss.str());
        }
        if (f.has(cmd, "--family")) cfg.family = f.family;
        if (f.has(cmd, "--alpha")) cfg.alpha = f.alpha;
        if (f.has(cmd, "--beta")) cfg.beta = f.beta;
        if (f.has(cmd, "--k")) cfg.k = f.k;
        if (f.has(cmd, "--nu")) cfg.nu = f.nu;
        if (f.has(cmd, "--ell")) cfg.ell = f.ell;
        if (f.has(cmd, "--two-ell")) cfg.two_ell = f.two_ell;
        if (f.has(cmd, "--nmax")) cfg.nmax = f.nmax;
        if (f.has(cmd, "--nodes")) cfg.nodes = f.nodes;
        if (f.has(cmd, "--n")) cfg.n = f.n;
        if (f.has(cmd, "--out")) cfg.out = f.out;
        if (f.has(cmd, "--format")) cfg.format = f.format;
        if (f.to_stdout) cfg.to_stdout = true;
        if (f.has(cmd, "--op")) cfg.op = f.op;
        if (f.has(cmd, "--x")) cfg.x = f.x;
        if (f.has(cmd, "--z-re")) cfg.z_re = f.z_re;
        if (f.has(cmd, "--z-im")) cfg.z_im = f.z_im;
        if (f.has(cmd, "--theta")) cfg.theta = f.theta;
        if (f.has(cmd, "--order")) cfg.order = f.order;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return mvop::EXIT_CONFIG;
    }
    return mvop::EXIT_PASS;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix-valued orthogonal polynomials: exact tables and asymptotics"};
    app.require_subcommand(1);

    CliFlags f;
    std::string regime = "inner";
    int fig_id = 1;

    CLI::App* rec = app.add_subcommand("recurrence", "build a recurrence table + report");
    add_common(rec, f);
    CLI::App* cmp = app.add_subcommand("compare", "exact vs asymptotic error report");
    cmp->add_option("regime", regime, "outer|inner|endpoint|mh")->required();
    add_common(cmp, f);
    CLI::App* fig = app.add_subcommand("figure", "figure data files");
    fig->add_option("id", fig_id, "1..4")->required()->check(CLI::Range(1, 4));
    add_common(fig, f);
    CLI::App* val = app.add_subcommand("validate", "full property-suite report");
    add_common(val, f);
    CLI::App* ev = app.add_subcommand("eval", "single evaluation of an operation by name");
    add_common(ev, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : mvop::EXIT_CONFIG;
    }

    CLI::App* active = app.get_subcommands().front();
    mvop::RunConfig cfg;
    const int rc = build_config(*active, f, cfg);
    if (rc != mvop::EXIT_PASS) return rc;

    if (active == rec) return mvop::cmd_recurrence(cfg);
    if (active == cmp) return mvop::cmd_compare(cfg, regime);
    if (active == fig) return mvop::cmd_figure(fig_id, cfg);
    if (active == val) return mvop::cmd_validate(cfg);
    if (active == ev) return mvop::cmd_eval(cfg);
    return mvop::EXIT_CONFIG;
}
