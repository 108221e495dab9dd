// Command-line front end: scenario runs, rotation sweeps, policy
// optimization and table validation over a key=value config file.

#include <iostream>
#include <string>

#include "standopt/config.hpp"
#include "standopt/runner.hpp"

namespace {

void print_usage() {
    std::cout <<
        "usage: standopt <verb> <config-file>\n"
        "\n"
        "verbs:\n"
        "  run             full pipeline: optimize every stand, write fig1-fig4 CSVs,\n"
        "                  optimal_policies.csv and the run manifest\n"
        "  sweep-rotation  expected return rate vs rotation age (fig1 CSV only)\n"
        "  optimize        best policy per stand (optionally sweeping alpha)\n"
        "  validate-tables parse and sanity-check the data tables\n"
        "\n"
        "exit codes: 0 ok, 2 config error, 3 table error, 4 degenerate simulation\n";
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        print_usage();
        return argc == 1 ? 0 : 2;
    }
    const std::string verb = argv[1];
    const std::string config_path = argv[2];

    try {
        const auto cfg = standopt::load_run_config(config_path);
        if (verb == "run") return standopt::command_run(cfg);
        if (verb == "sweep-rotation") return standopt::command_sweep_rotation(cfg);
        if (verb == "optimize") return standopt::command_optimize(cfg);
        if (verb == "validate-tables") return standopt::command_validate_tables(cfg);
        std::cerr << "unknown verb '" << verb << "'\n";
        print_usage();
        return 2;
    } catch (const standopt::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const standopt::table_error& e) {
        std::cerr << "table error: " << e.what() << '\n';
        return 3;
    } catch (const standopt::simulation_error& e) {
        std::cerr << "simulation error: " << e.what() << '\n';
        return 4;
    } catch (const std::domain_error& e) {
        std::cerr << "simulation error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "simulation error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
