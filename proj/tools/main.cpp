#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Variable-step Rothe scheme for second-order evolution inclusions"};
    app.require_subcommand(1);

    std::string path;
    auto* run = app.add_subcommand("run", "Run the scheme and write trajectory, interpolant and a priori reports");
    run->add_option("config", path, "Run configuration (JSON)")->required();
    auto* study = app.add_subcommand("study", "Run an order, Cauchy or hypothesis study");
    study->add_option("plan", path, "Study plan (JSON)")->required();
    auto* check = app.add_subcommand("check", "Audit hypotheses, constants and the step constraint");
    check->add_option("config", path, "Run configuration (JSON)")->required();
    auto* grid = app.add_subcommand("grid", "Print the parameter table of a time grid");
    grid->add_option("spec", path, "Grid specification (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : rothe::cli::ConfigInvalid;
    }

    using namespace rothe::cli;
    if (*run) return cmd_run(path, std::cout, std::cerr);
    if (*study) return cmd_study(path, std::cout, std::cerr);
    if (*check) return cmd_check(path, std::cout, std::cerr);
    return cmd_grid(path, std::cout, std::cerr);
}
