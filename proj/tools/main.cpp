#include "common.hpp"

#include "CLI11.hpp"

#include <map>

int main(int argc, char** argv) {
    CLI::App app{"copoly: partition functions, phase-diagram bounds and localization "
                 "tests for inhomogeneous polymer models"};
    app.require_subcommand(1);

    std::string config_path, out_root = "runs";
    std::uint64_t seed = 0;
    int threads = 0;

    const std::map<std::string, std::pair<std::string, int (*)(const cli::Run&)>> cmds{
        {"walk", {"exact return/endpoint laws of the underlying walk", cli::cmd_walk}},
        {"transfer", {"transfer-matrix partition function traces", cli::cmd_transfer}},
        {"test-loc", {"Monte Carlo localization test with concentration p-values",
                      cli::cmd_testloc}},
        {"profile-distance", {"meander distance of the endpoint profile",
                              cli::cmd_profile_distance}},
        {"critical-curve", {"critical curve estimator and m-fit", cli::cmd_critical_curve}},
        {"lower-bound", {"atypical-stretch certificates and first-passage scans",
                         cli::cmd_lower_bound}},
        {"periodic", {"periodic-model kernels, order parameter and asymptotics",
                      cli::cmd_periodic}},
        {"cocycle", {"cocycle free energy and coboundary detection", cli::cmd_cocycle}},
        {"llt-check", {"conditioned local limit theorem diagnostics", cli::cmd_llt}},
    };

    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, info] : cmds) {
        CLI::App* sub = app.add_subcommand(name, info.first);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_root, "output root directory");
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--threads", threads, "worker threads (0 = auto / COPOLY_THREADS)");
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (const auto& [name, info] : cmds) {
        if (subs[name]->parsed()) {
            cli::json config = cli::load_config(config_path);
            if (config.contains("seed") && seed == 0) seed = config["seed"].get<std::uint64_t>();
            cli::Run run = cli::make_run(name, config, out_root, seed, threads);
            try {
                return info.second(run);
            } catch (const std::exception& e) {
                cli::json err;
                err["error"] = e.what();
                std::cerr << err.dump() << std::endl;
                return 1;
            }
        }
    }
    return 2;
}
