// Command-line front end; links the C API only.

#include <clocale>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "stripwave.h"

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");

    CLI::App app{"stripwave: periodic free-surface solver and verifier"};
    app.require_subcommand(1);

    std::string config, out, curve, profile, out_path;
    double half_width = 0.0;
    double stagnation_tol = 1e-6;

    CLI::App* solve = app.add_subcommand("solve",
                                         "solve a periodic surface, reconstruct the "
                                         "free boundary and verify it");
    solve->add_option("--config", config, "config file")->required();
    solve->add_option("--out", out, "output directory");

    CLI::App* verify = app.add_subcommand("verify", "verify an imported curve CSV");
    verify->add_option("--curve", curve, "curve CSV (t,u,v[,theta])")->required();
    verify->add_option("--profile", profile,
                       "profile spec: water-wave:g=..,lambda=.. | tabulated:PATH");
    verify->add_option("--C", half_width,
                       "strip half-width (enables the interior barrier check)");
    verify->add_option("--stagnation-tol", stagnation_tol, "stagnation tolerance");
    verify->add_option("--out", out, "output directory")->required();

    CLI::App* pcheck = app.add_subcommand("profile-check",
                                          "audit the structural hypotheses of a "
                                          "speed-law profile");
    pcheck->add_option("--profile", profile, "profile spec")->required();
    pcheck->add_option("--out", out_path, "write the JSON report here");

    CLI::App* keval = app.add_subcommand("kernel-eval",
                                         "evaluate a Poisson extension on a grid");
    keval->add_option("--config", config, "config file")->required();
    keval->add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }

    int rc = 0;
    if (solve->parsed()) {
        rc = sw_run_solve(config.c_str(), out.empty() ? nullptr : out.c_str());
    } else if (verify->parsed()) {
        rc = sw_run_verify(curve.c_str(), profile.empty() ? nullptr : profile.c_str(),
                           half_width, out.c_str());
    } else if (pcheck->parsed()) {
        char* json = nullptr;
        rc = sw_run_profile_check(profile.c_str(),
                                  out_path.empty() ? nullptr : out_path.c_str(),
                                  &json);
        if (json) {
            std::fputs(json, stdout);
            sw_string_free(json);
        }
    } else if (keval->parsed()) {
        rc = sw_run_kernel_eval(config.c_str(), out.empty() ? nullptr : out.c_str());
    }

    if (rc != 0) std::fprintf(stderr, "stripwave: %s\n", sw_last_error());
    return rc;
}
