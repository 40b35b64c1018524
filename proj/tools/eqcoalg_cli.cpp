// Command-line front end: law-check suites, approximation experiments and
// the free-lift demo, all driven by a JSON config file.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#if __has_include("CLI11.hpp")
#include "CLI11.hpp"
#else
#include <CLI/CLI.hpp>
#endif

#include "eqcoalg/experiment.hpp"

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string group;
    std::optional<std::int64_t> seed;
};

int load_and_run(const Options& opt, auto&& run) {
    eqcoalg::ExperimentConfig config;
    try {
        config = eqcoalg::load_config(opt.config);
        if (!opt.group.empty()) eqcoalg::override_group(config, opt.group);
    } catch (const eqcoalg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return eqcoalg::kExitUsage;
    }
    if (opt.seed) config.seed = static_cast<std::uint64_t>(*opt.seed);
    return run(config);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant approximation through group-action coalgebras"};
    app.set_version_flag("--version", std::string("eqcoalg ") + EQCOALG_VERSION);
    app.require_subcommand(1);

    Options opt;
    app.add_option("--group", opt.group, "Override the group: table:<path> or kind:n")->group("Overrides");
    app.add_option("--seed", opt.seed, "Override the config seed")->group("Overrides");

    auto* laws = app.add_subcommand("laws", "Check comonad, comodule, left-inverse, action and lifting laws");
    laws->add_option("--config", opt.config, "JSON config file")->required();

    auto* uat = app.add_subcommand("uat", "Fit shallow nets and report their symmetrized approximation errors as CSV");
    uat->add_option("--config", opt.config, "JSON config file")->required();
    uat->add_option("--out", opt.out, "Write the CSV here instead of standard output");

    auto* lift = app.add_subcommand("lift-demo", "Lift a finite group action to the free vector space");
    lift->add_option("--config", opt.config, "JSON config file")->required();

    // Overrides are accepted after the subcommand name as well.
    for (auto* sub : {laws, uat, lift}) {
        sub->add_option("--group", opt.group, "Override the group: table:<path> or kind:n");
        sub->add_option("--seed", opt.seed, "Override the config seed");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return eqcoalg::kExitUsage;
    }

    if (laws->parsed()) {
        return load_and_run(opt, [](const auto& c) { return eqcoalg::run_laws(c, std::cout, std::cerr); });
    }
    if (lift->parsed()) {
        return load_and_run(opt, [](const auto& c) { return eqcoalg::run_lift_demo(c, std::cout, std::cerr); });
    }
    return load_and_run(opt, [&opt](const auto& c) {
        if (opt.out.empty()) return eqcoalg::run_uat(c, std::cout, std::cerr);
        std::ofstream file(opt.out);
        if (!file) {
            std::cerr << "cannot open output file " << opt.out << '\n';
            return eqcoalg::kExitUsage;
        }
        return eqcoalg::run_uat(c, file, std::cerr);
    });
}
