#pragma once

#include <string>
#include <vector>

#include "mvop/weights.hpp"

namespace mvop {

// Exit-code contract: 0 pass, 1 tolerance fail, 2 config error, 3 numerical failure.
enum ExitCode { EXIT_PASS = 0, EXIT_TOL_FAIL = 1, EXIT_CONFIG = 2, EXIT_NUMERICAL = 3 };

// Flat JSON config; every field serialized so serialize(parse(s)) == serialize(parse(serialize(parse(s)))).
struct RunConfig {
    std::string family = "jacobi";  // jacobi | gegenbauer | gegenbauer_block | legendre
    double alpha = 1.0, beta = 2.0, k = 1.0, nu = 0.5;
    int ell = 1;       // jacobi ell; gegenbauer uses two_ell = 2*ell
    int two_ell = 2;   // gegenbauer only
    int nmax = 120;
    int nodes = 0;     // 0 = default node count (MVOP_QUAD_NODES may override)
    int n = 20;        // evaluation degree for figure/eval
    std::string out;
    std::string format = "csv";  // csv | json
    bool to_stdout = false;
    // eval parameters
    std::string op;
    double x = 0.5, z_re = 2.0, z_im = 0.0, theta = 2.0;
    int order = 1;
};

RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& cfg);

WeightFamily family_from_config(const RunConfig& cfg);
int resolve_nodes(const RunConfig& cfg);  // config value, else MVOP_QUAD_NODES, else 0 (default)

// Subcommand drivers; return the exit code (never throw for config/numeric issues).
int cmd_recurrence(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg, const std::string& regime);  // outer|inner|endpoint|mh
int cmd_figure(int id, const RunConfig& cfg);                      // 1..4
int cmd_validate(const RunConfig& cfg);
int cmd_eval(const RunConfig& cfg);

}  // namespace mvop
