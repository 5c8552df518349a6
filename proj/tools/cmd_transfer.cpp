#include "common.hpp"

#include <cmath>

namespace cli {

using namespace copoly;

int cmd_transfer(const Run& run) {
    const ChargeLaw law = law_from_json(run.config);
    const Params par{run.config.value("lam", 0.0), run.config.value("h", 0.0)};
    const long N = run.config.value("N", (long)1000);
    if (N <= 0 || N % 2 != 0) config_error("N must be positive and even");
    const Window win = window_from_json(run.config);
    Environment env = Environment::seeded(law, run.master_seed);

    // log-spaced sampling schedule over half-sizes
    std::vector<long> schedule;
    for (double v = 1.0; v < (double)N / 2; v *= 1.05) {
        const long m = (long)v;
        if (schedule.empty() || schedule.back() != m) schedule.push_back(m);
    }
    schedule.push_back(N / 2);

    auto f = run.csv("trace.csv", "M,logZ0,logZfree");
    size_t si = 0;
    evolve_trace(env, par, N / 2, win, [&](const Profile& p) {
        if (si < schedule.size() && p.M == schedule[si]) {
            ++si;
            double s = 0.0;
            for (double v : p.z) s += v;
            f << p.M << "," << p.log_z_total(0) << "," << std::log(s) + p.log_scale << "\n";
        }
    });

    json summary;
    summary["pinned_logZ"] = pinned_logZ(env, par, N, win);
    summary["free_logZ"] = free_logZ(env, par, N, win);
    summary["annealed_logZ"] = annealed_logZ(law, par, N);
    run.finish(summary);
    return 0;
}

} // namespace cli
