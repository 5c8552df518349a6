#include "common.hpp"

#include "copoly/walk.hpp"

#include <cmath>

namespace cli {

using namespace copoly;

static WalkSpec walk_from_json(const json& j) {
    if (!j.contains("walk") || (j["walk"].is_string() && j["walk"] == "simple"))
        return WalkSpec::simple();
    if (j["walk"].is_object() && j["walk"].contains("p"))
        return WalkSpec::triple(j["walk"]["p"].get<double>());
    config_error("walk must be \"simple\" or {\"p\": value}");
}

int cmd_walk(const Run& run) {
    const WalkSpec spec = walk_from_json(run.config);
    const long n_max = run.config.value("n_max", (long)10000);
    const ReturnLaw rl = return_law(spec, n_max);

    auto f = run.csv("return_law.csv", "n,K,n32K");
    for (long n = 1; n <= n_max; ++n) {
        if (rl.k[n] == 0.0) continue;
        f << n << "," << rl.k[n] << "," << std::pow((double)n, 1.5) * rl.k[n] << "\n";
    }

    json summary;
    summary["c_k_hat"] = rl.c_k_hat;
    summary["mass_up_to_n_max"] = rl.mass_up_to(n_max);
    run.finish(summary);
    return 0;
}

} // namespace cli
