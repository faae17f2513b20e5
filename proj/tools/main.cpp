// main.cpp — floquet-forge command-line front-end.

#include "floquet/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"floquet-forge: effective Hamiltonians for periodically driven systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string mode;
    long long seed = -1;
    bool flip_sign = false;
    bool break_hermiticity = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "path to a TOML or JSON run config")->required();
        sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--seed", seed, "override the model seed");
    };

    CLI::App* heff = app.add_subcommand("heff", "construct H_eff,L and write it as JSON");
    CLI::App* fm = app.add_subcommand("fm", "construct the Floquet-Magnus truncation and write it as JSON");
    CLI::App* compare = app.add_subcommand("compare", "order-by-order distance between the two constructions");
    CLI::App* scan = app.add_subcommand("scan", "error-scaling scan with a log-log slope fit");
    CLI::App* check = app.add_subcommand("check", "run the property suite");
    for (CLI::App* sub : {heff, fm, compare, scan, check}) add_common(sub);

    scan->add_option("--mode", mode, "strobo | horizon | oracle (overrides [run] mode)");
    compare->add_flag("--debug-flip-sign", flip_sign,
                      "testing aid: corrupt one coefficient sign before comparing");
    check->add_flag("--debug-break-hermiticity", break_hermiticity,
                    "testing aid: inject a hermiticity violation into the model");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return floquet::cli::exit_config_error;
    }

    floquet::RunConfig cfg;
    try {
        cfg = floquet::load_run_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return floquet::cli::exit_config_error;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!mode.empty()) cfg.mode = mode;
    if (seed >= 0) cfg.model.seed = static_cast<std::uint64_t>(seed);
    cfg.debug_flip_sign = flip_sign;
    cfg.debug_break_hermiticity = break_hermiticity;
    try {
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return floquet::cli::exit_config_error;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    return floquet::cli::dispatch(command, cfg);
}
