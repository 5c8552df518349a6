#include "common.hpp"

#include "copoly/fluct.hpp"

namespace cli {

using namespace copoly;

int cmd_llt(const Run& run) {
    const auto ns = run.config.value("ns", std::vector<long>{256, 1024, 4096});
    auto f = run.csv("llt.csv", "n,sup_error");
    json summary;
    for (long n : ns) {
        std::cerr << "llt-check: n = " << n << "\n";
        const double e = conditioned_llt_error(n);
        f << n << "," << e << "\n";
        summary["errors"].push_back(e);
    }
    if (run.config.value("ballot_n_max", (long)0) > 0) {
        summary["ballot_max_error"] = ballot_check(run.config["ballot_n_max"].get<long>());
    }
    run.finish(summary);
    return 0;
}

} // namespace cli
