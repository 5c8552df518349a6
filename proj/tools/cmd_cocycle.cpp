#include "common.hpp"

#include "copoly/cocycle.hpp"

namespace cli {

using namespace copoly;

int cmd_cocycle(const Run& run) {
    const auto& c = run.config;
    if (!c.contains("alphabet") || !c.contains("nu") || !c.contains("k") || !c.contains("F"))
        config_error("cocycle config needs alphabet, nu, k, F");
    const CocycleSpec spec =
        CocycleSpec::make(c["alphabet"].get<int>(), c["nu"].get<std::vector<double>>(),
                          c["k"].get<int>(), c["F"].get<std::vector<double>>());

    const auto betas = c.value("betas", std::vector<double>{-2.0, -1.0, -0.5, 0.5, 1.0, 2.0});
    auto f = run.csv("free_energy.csv", "beta,L");
    for (double beta : betas) f << beta << "," << cocycle_free_energy(spec, beta) << "\n";

    const CoboundaryResult res = is_coboundary(spec);
    json verdict;
    verdict["coboundary"] = res.yes;
    if (res.yes) {
        verdict["G"] = res.G;
    } else {
        verdict["witness"] = res.witness;
        verdict["witness_cyclic_sum"] = res.witness_sum;
    }
    verdict["L_at_1"] = cocycle_free_energy(spec, 1.0);
    run.write_json("coboundary.json", verdict);
    run.finish(verdict);
    return 0;
}

} // namespace cli
