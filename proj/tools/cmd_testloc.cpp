#include "common.hpp"

#include "copoly/stats.hpp"

namespace cli {

using namespace copoly;

int cmd_testloc(const Run& run) {
    const ChargeLaw law = law_from_json(run.config);
    const double lam = run.config.value("lam", 0.0);
    const double h = run.config.value("h", 0.0);
    const long S = run.config.value("S", (long)0);
    const long n = run.config.value("n", (long)0);
    if (S <= 0 || S % 2 != 0) config_error("S must be positive and even");
    if (n <= 0) config_error("n must be positive");
    const Window win = window_from_json(run.config);
    const bool deloc_side = run.config.value("side", std::string("localization")) ==
                            std::string("delocalization");

    std::cerr << "test-loc: " << n << " samples of size " << S << " at (lam=" << lam
              << ", h=" << h << ")\n";
    TestReport rep = deloc_side
                         ? delocalization_side_test(law, lam, h, S, n, run.master_seed, win,
                                                    run.threads)
                         : localization_test(law, lam, h, S, n, run.master_seed, win,
                                             run.threads);

    auto f = run.csv("samples.csv", "sample,logZ0");
    for (long i = 0; i < n; ++i) f << i << "," << rep.samples[i] << "\n";

    json rj;
    rj["lam"] = rep.lam;
    rj["h"] = rep.h;
    rj["S"] = rep.S;
    rj["n"] = rep.n;
    rj["u_hat"] = rep.u_hat;
    rj["p_value"] = rep.p_value;
    rj["decision"] = rep.decision == TestReport::Decision::RejectH0_Localized
                         ? "RejectH0_Localized"
                         : "Inconclusive";
    rj["master_seed"] = rep.master_seed;
    rj["penalty_factor_4"] = rep.penalty_factor_4;
    rj["side"] = deloc_side ? "delocalization" : "localization";
    run.write_json("report.json", rj);
    run.finish(rj);
    return 0;
}

} // namespace cli
