#pragma once

#include <string>

namespace campanato {

// Effective configuration of one CLI invocation.  Every field is echoed into
// the report so a run is reproducible from its own output.
struct RunConfig {
    std::string command;       // norm | criterion | vanishing | identities | nevanlinna | carleson | full-report
    std::string symbol_dsl;    // composition symbol (map expression)
    std::string function_dsl;  // analytic function for norm-type commands; defaults to monomial(1)
    double p = 1.0;
    double q = 1.0;
    int k_sup = 14;            // supremum-grid depth: rings at 1 - 2^-k
    int base_angles = 64;
    int angle_cap = 512;
    int circle_nodes = 4096;   // boundary quadrature nodes
    int radial_nodes = 256;    // radial quadrature nodes
    int depth = 8;             // dyadic depth of the box-measure sweep
    int arc_levels = 8;        // arc-seminorm level count
    double split = 0.9;        // |phi(a)| case split for criterion profiles
    int rays = 8;              // boundary-approach ray count
    std::string output_path;   // empty: write the report to stdout
    std::string format = "json";  // json | csv (csv: criterion profile samples only)
    bool timings = false;      // embed wall-clock timings (off by default: keeps reports byte-stable)
};

// Executes the configured command and writes the report.  Returns the
// process exit status: 0 success, 1 input/parse problem, 2 self-map
// certification failure, 3 numeric non-convergence.
int run(const RunConfig& config);

}  // namespace campanato
