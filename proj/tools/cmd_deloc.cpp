#include "common.hpp"

#include "copoly/deloc.hpp"
#include "copoly/mc.hpp"
#include "copoly/stats.hpp"

#include <algorithm>
#include <cmath>

namespace cli {

using namespace copoly;

int cmd_profile_distance(const Run& run) {
    const ChargeLaw law = law_from_json(run.config);
    const Params par{run.config.value("lam", 0.6), run.config.value("h", 0.44)};
    const std::vector<long> sizes = run.config.value("sizes", std::vector<long>{10000, 100000});
    const long seeds = run.config.value("seeds", (long)50);
    const Window win = window_from_json(run.config);

    auto f = run.csv("distance.csv", "seed,N,delta");
    json summary;
    for (long N : sizes) {
        std::cerr << "profile-distance: size " << N << "\n";
        auto vals = mc_map(
            seeds,
            [&](long i) {
                Environment env = Environment::seeded(law, run.master_seed, (std::uint64_t)i);
                return meander_distance(env, par, N, win);
            },
            run.threads);
        for (long i = 0; i < seeds; ++i) f << i << "," << N << "," << vals[i] << "\n";
        std::sort(vals.begin(), vals.end());
        json row;
        row["N"] = N;
        row["median"] = vals[vals.size() / 2];
        if (seeds >= 30) {
            auto [lo, hi] = median_ci(vals);
            row["ci_lo"] = lo;
            row["ci_hi"] = hi;
        }
        summary["medians"].push_back(row);
    }
    run.write_json("summary.json", summary);
    run.finish(summary);
    return 0;
}

int cmd_critical_curve(const Run& run) {
    const ChargeLaw law = law_from_json(run.config);
    const std::vector<double> lams =
        run.config.value("lams", std::vector<double>{0.3, 0.6, 1.0});
    const long twoN = run.config.value("twoN", (long)100000);
    const double tol = run.config.value("tol", 1e-8);
    const double threshold = run.config.value("threshold", 1.0);
    const double lam_star = run.config.value("lam_star", 4.0);
    const Window win = window_from_json(run.config);

    Environment env = Environment::seeded(law, run.master_seed);
    auto f = run.csv("curve.csv", "lam,h_hat,residual,saturated");
    json summary;
    double h_at_star = 0.0;
    bool have_star = false;
    for (double lam : lams) {
        std::cerr << "critical-curve: lam = " << lam << "\n";
        CriticalHResult res = critical_h_estimate(env, lam, twoN, tol, win, threshold);
        f << lam << "," << res.h_hat << "," << res.residual << ","
          << (res.saturated_low || res.saturated_high) << "\n";
        if (lam == lam_star && !res.saturated_low && !res.saturated_high) {
            h_at_star = res.h_hat;
            have_star = true;
        }
    }
    if (have_star) {
        summary["lam_star"] = lam_star;
        summary["m_hat"] = fit_m(law, lam_star, h_at_star);
    }
    summary["twoN"] = twoN;
    summary["threshold"] = threshold;
    run.finish(summary);
    return 0;
}

int cmd_lower_bound(const Run& run) {
    const ChargeLaw law = law_from_json(run.config);
    const Params par{run.config.value("lam", 1.0), run.config.value("h", 0.4)};
    const std::string mode = run.config.value("mode", std::string("certificate"));
    const long seeds = run.config.value("seeds", (long)50);

    json summary;
    if (mode == "certificate") {
        const long A = run.config.value("A", (long)36);
        const double eps = run.config.value("eps", 0.0014);
        const double q = run.config.value("q", std::nan(""));
        const long scan_cap = run.config.value("scan_cap", (long)1 << 24);
        const long transfer_cap = run.config.value("transfer_cap", (long)4000000);

        auto f = run.csv("certificates.csv", "seed,found,ell,T,R,logZ0,log_bound,holds");
        long n_found = 0, n_holds = 0;
        double sumT = 0.0;
        std::vector<double> Ts;
        for (long i = 0; i < seeds; ++i) {
            Environment env = Environment::seeded(law, run.master_seed, (std::uint64_t)i);
            Certificate c = certificate(env, par, A, eps, q, scan_cap, transfer_cap);
            f << i << "," << c.found << "," << c.ell << "," << c.T << "," << c.R << ","
              << c.logZ0_at_T << "," << c.log_bound << "," << c.holds << "\n";
            if (c.found) {
                ++n_found;
                sumT += (double)c.T;
                Ts.push_back((double)c.T);
            }
            if (c.holds) ++n_holds;
        }
        summary["found"] = n_found;
        summary["holds"] = n_holds;
        summary["seeds"] = seeds;
        if (n_found > 0) {
            summary["mean_T"] = sumT / n_found;
            std::sort(Ts.begin(), Ts.end());
            double top_decile = 0.0;
            for (size_t i = Ts.size() - std::max<size_t>(1, Ts.size() / 10); i < Ts.size(); ++i)
                top_decile += Ts[i];
            summary["heavy_tail_warning"] = top_decile > 0.5 * sumT;
            summary["finiteness_diagnostic"] =
                n_found == seeds ? "all stopping times located" : "scan cap hit; E[T] unresolved";
        }
    } else if (mode == "first-passage") {
        const double C = run.config.value("C", 1.5);
        const long N_cap = run.config.value("N_cap", (long)10000);
        auto f = run.csv("first_passage.csv", "seed,found,N");
        long n_found = 0;
        for (long i = 0; i < seeds; ++i) {
            Environment env = Environment::seeded(law, run.master_seed, (std::uint64_t)i);
            FirstPassage fp = first_passage_TC(env, par, C, N_cap, Window::restricted());
            f << i << "," << fp.found << "," << fp.N << "\n";
            if (fp.found) ++n_found;
        }
        summary["found"] = n_found;
        summary["seeds"] = seeds;
    } else {
        config_error("mode must be certificate or first-passage");
    }
    run.finish(summary);
    return 0;
}

} // namespace cli
