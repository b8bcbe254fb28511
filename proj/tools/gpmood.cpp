// Command-line front end: runs a configured simulation, or dumps the
// precomputed prediction vectors for cross-language verification.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpmood/driver.hpp"
#include "gpmood/prediction.hpp"

namespace {

int run_dump_pv(const std::vector<std::string>& args) {
    CLI::App app{"dump prediction vectors"};
    std::string scheme = "gp-r1", shape = "diamond", out;
    int ndim = 2, q = 0;
    double ell = 12.0, dx = 1.0, dy = 1.0;
    app.add_option("--scheme", scheme)
        ->check(CLI::IsMember({"gp-r1", "gp-r2", "gp-r3", "poly3", "fog"}));
    app.add_option("--shape", shape)->check(CLI::IsMember({"diamond", "cross"}));
    app.add_option("--ndim", ndim)->check(CLI::Range(1, 2));
    app.add_option("--ell", ell, "correlation length, physical units");
    app.add_option("--dx", dx);
    app.add_option("--dy", dy);
    app.add_option("--quadrature", q)->check(CLI::Range(0, 4));
    app.add_option("--out", out, "output file (default stdout)");
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    gpmood::SchemeId id = gpmood::SchemeId::gp_r1;
    if (scheme == "gp-r2") id = gpmood::SchemeId::gp_r2;
    if (scheme == "gp-r3") id = gpmood::SchemeId::gp_r3;
    if (scheme == "poly3") id = gpmood::SchemeId::poly3;
    if (scheme == "fog") id = gpmood::SchemeId::fog;
    gpmood::KernelConfig cfg{ell, dx, dy, ndim};
    auto set = gpmood::build_prediction_set(
        id, shape == "cross" ? gpmood::StencilShape::cross : gpmood::StencilShape::diamond,
        cfg, q);
    if (out.empty()) {
        gpmood::dump_prediction_vectors(set, std::cout);
    } else {
        std::ofstream os(out);
        gpmood::dump_prediction_vectors(set, os);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && args[0] == "dump-pv")
        return run_dump_pv({args.begin() + 1, args.end()});
    if (!args.empty() && args[0] == "run") args.erase(args.begin());
    try {
        gpmood::RunConfig rc = gpmood::parse_config(args);
        gpmood::Solver solver(rc);
        gpmood::RunResult r = solver.run();
        return r.fatal ? 1 : 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp") {
            CLI::App app{"gpmood"};
            std::fprintf(stderr,
                         "usage: gpmood [run] [--problem P] [--method M] [flags...]\n"
                         "       gpmood dump-pv [--scheme S] [flags...]\n");
            return 0;
        }
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
