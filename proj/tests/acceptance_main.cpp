// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status is the number of failures.

#include "copoly/cocycle.hpp"
#include "copoly/deloc.hpp"
#include "copoly/fluct.hpp"
#include "copoly/mc.hpp"
#include "copoly/num.hpp"
#include "copoly/periodic.hpp"
#include "copoly/rng.hpp"
#include "copoly/stats.hpp"
#include "copoly/transfer.hpp"
#include "copoly/walk.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace copoly;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    printf("[%s] criterion %2d: %s  (%s)\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
           detail.c_str());
    fflush(stdout);
    if (!pass) ++g_failures;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

// ---- criterion 1 -------------------------------------------------------
void criterion_bound_curves() {
    const ChargeLaw bin = ChargeLaw::binary();
    struct Row {
        double lam, m, expect;
    };
    // Expected values are the defining-formula constants log M(-2m lam)/(2m lam),
    // hand-verified to six decimals. Published 3-decimal tabulations truncate
    // these values; 0.195, 0.363, 0.495 (and nearly 0.530/0.662) agree within
    // 5e-4, while a tabulated 0.286 is a misprint for 0.2836.
    const std::vector<Row> rows{
        {0.3, 2.0 / 3.0, 0.194884}, {0.6, 2.0 / 3.0, 0.363418}, {1.0, 2.0 / 3.0, 0.530521},
        {0.3, 1.0, 0.283559},       {0.6, 1.0, 0.494741},       {1.0, 1.0, 0.662501},
    };
    bool pass = true;
    double worst = 0.0;
    for (const Row& r : rows) {
        const double err = std::fabs(h_m(bin, r.m, r.lam) - r.expect);
        worst = std::max(worst, err);
        if (err > 5e-4) pass = false;
    }
    // the two spec-pinned table entries in printed precision
    if (std::fabs(h_m(bin, 2.0 / 3.0, 0.6) - 0.363) > 5e-4) pass = false;
    if (std::fabs(h_m(bin, 1.0, 0.6) - 0.495) > 5e-4) pass = false;
    report(1, "bound curves h(2/3), h(1) reference values", pass,
           "max |err| = " + std::to_string(worst) + ", tol 5e-4");
}

// ---- criterion 2 -------------------------------------------------------
void criterion_pvalues() {
    struct Row {
        double u, lam, expect;
        long n, S;
    };
    const std::vector<Row> rows{{7.179, 0.3, 1.5e-6, 225000, 600000},
                                {9.011, 0.6, 9.5e-3, 330000, 1000000},
                                {7.643, 1.0, 1.6e-5, 970000, 320000}};
    bool pass = true;
    double worst = 0.0;
    for (const Row& r : rows) {
        const double p = concentration_pvalue(r.u, r.n, r.S, r.lam);
        const double rel = std::fabs(p / r.expect - 1.0);
        worst = std::max(worst, rel);
        if (rel > 0.10) pass = false;
    }
    report(2, "p-value formula reference checks", pass,
           "max rel err = " + std::to_string(worst) + ", tol 10%");
}

// ---- criterion 3 -------------------------------------------------------
double brute_logZ(const std::vector<double>& w, double lam, double h, bool pinned) {
    const long N = (long)w.size();
    double total = 0.0;
    for (long mask = 0; mask < (1L << N); ++mask) {
        long s = 0;
        int prev_sign = 0;
        double ham = 0.0;
        for (long n = 0; n < N; ++n) {
            s += (mask >> n) & 1 ? 1 : -1;
            const int sign = s > 0 ? 1 : (s < 0 ? -1 : prev_sign);
            if (sign == -1) ham += -2.0 * lam * (w[n] + h);
            prev_sign = sign;
        }
        if (!pinned || s == 0) total += std::exp(ham);
    }
    return std::log(total) - N * std::log(2.0);
}

void criterion_transfer_exact() {
    bool pass = true;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::vector<double> w(16);
        for (int i = 0; i < 16; ++i) w[i] = (rng::derive(seed, 50, i) & 1) ? 1.0 : -1.0;
        Environment env = Environment::explicit_seq(w);
        for (double lam : {0.3, 0.6, 1.0}) {
            for (double h : {0.0, 0.2, 0.44}) {
                const Params par{lam, h};
                const double e1 =
                    std::fabs(pinned_logZ(env, par, 16, Window::full()) - brute_logZ(w, lam, h, true));
                const double e2 =
                    std::fabs(free_logZ(env, par, 16, Window::full()) - brute_logZ(w, lam, h, false));
                worst = std::max({worst, e1, e2});
                if (e1 > 1e-12 || e2 > 1e-12) pass = false;
            }
        }
    }
    report(3, "transfer equals 2^N path enumeration (N=16)", pass,
           "max |err| = " + std::to_string(worst) + ", tol 1e-12");
}

// ---- criterion 4 -------------------------------------------------------
void criterion_oracle_crossval() {
    const Params par{0.6, 0.44};
    bool pass = true;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Environment env = Environment::seeded(ChargeLaw::binary(), 4000, seed);
        const double a = excursion_oracle_logZ0(env, par, 2000);
        const double b = pinned_logZ(env, par, 2000, Window::full());
        worst = std::max(worst, std::fabs(a - b));
        if (std::fabs(a - b) > 1e-9) pass = false;
    }
    report(4, "excursion oracle vs transfer at N=2000", pass,
           "max |diff| = " + std::to_string(worst) + ", tol 1e-9");
}

// ---- criterion 5 -------------------------------------------------------
void criterion_window() {
    Environment env = Environment::seeded(ChargeLaw::binary(), 555);
    const Params par{0.6, 0.44};
    const double full = pinned_logZ(env, par, 20000, Window::full());
    const double rest = pinned_logZ(env, par, 20000, Window::restricted(3, 8, 1000));
    const double rel = std::fabs(rest - full) / std::fabs(full);
    report(5, "restricted window fidelity at 2M=2e4", rel <= 1e-7 && rest <= full + 1e-12,
           "rel diff = " + std::to_string(rel) + ", tol 1e-7");
}

// ---- criterion 6 -------------------------------------------------------
void criterion_desk_localization() {
    TestReport rep =
        localization_test(ChargeLaw::binary(), 1.0, 0.0, 20000, 200, 4242, Window::restricted());
    const bool pass = rep.u_hat > 0.0 && rep.p_value < 1e-6;
    char buf[128];
    snprintf(buf, sizeof buf, "u_hat = %.3f, p = %.3g", rep.u_hat, rep.p_value);
    report(6, "desk-scale localization at (1, 0)", pass, buf);
}

// ---- criterion 7 -------------------------------------------------------
void criterion_sign_change() {
    const ChargeLaw bin = ChargeLaw::binary();
    const double h = h_m(bin, 0.67, 1.0);
    const Params par{1.0, h};
    // log Z at these sizes has mean about -0.47 / +0.29 and std about 5, so
    // the 3-standard-error margin needs a few thousand seeds
    const long n_seeds = 6000;
    auto run = [&](long twoN) {
        auto vals = mc_map(n_seeds, [&](long i) {
            Environment env = Environment::seeded(bin, 20260810, (std::uint64_t)i);
            return pinned_logZ(env, par, twoN, Window::full());
        });
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= vals.size();
        double var = 0.0;
        for (double v : vals) var += (v - mean) * (v - mean);
        var /= (vals.size() - 1);
        return std::make_pair(mean, std::sqrt(var / vals.size()));
    };
    auto [m_lo, se_lo] = run(2 * 1550);
    auto [m_hi, se_hi] = run(2 * 1800);
    const bool pass = (m_lo < -3.0 * se_lo) && (m_hi > 3.0 * se_hi);
    char buf[160];
    snprintf(buf, sizeof buf, "mean(3100) = %.3f (se %.3f), mean(3600) = %.3f (se %.3f)", m_lo,
             se_lo, m_hi, se_hi);
    report(7, "finite-size sign change at h(0.67)(1)", pass, buf);
}

// ---- criterion 8 -------------------------------------------------------
void criterion_meander_direction() {
    const ChargeLaw bin = ChargeLaw::binary();
    auto medians = [&](double h, long twoN) {
        auto vals = mc_map(50, [&](long i) {
            Environment env = Environment::seeded(bin, 90210, (std::uint64_t)i);
            return meander_distance(env, Params{0.6, h}, twoN, Window::restricted());
        });
        return median_of(vals);
    };
    const double loc_small = medians(0.42, 10000), loc_large = medians(0.42, 100000);
    const double del_small = medians(0.60, 10000), del_large = medians(0.60, 100000);
    const bool pass = loc_large > loc_small && del_large < del_small;
    char buf[160];
    snprintf(buf, sizeof buf, "h=0.42: %.4f -> %.4f (up); h=0.60: %.4f -> %.4f (down)",
             loc_small, loc_large, del_small, del_large);
    report(8, "meander-distance direction at lam=0.6", pass, buf);
}

// ---- criteria 9, 10 ----------------------------------------------------
void criterion_ballot() {
    const double worst = ballot_check(200);
    report(9, "ballot identity exact to n=200", worst <= 1e-12,
           "max |err| = " + std::to_string(worst) + ", tol 1e-12");
}

void criterion_llt() {
    const double e256 = conditioned_llt_error(256);
    const double e4096 = conditioned_llt_error(4096);
    const double e1e4 = conditioned_llt_error(10000);
    const bool pass = e4096 <= e256 / 1.5 && e1e4 <= 0.05;
    char buf[128];
    snprintf(buf, sizeof buf, "err(256) = %.4f, err(4096) = %.4f, err(1e4) = %.4f", e256, e4096,
             e1e4);
    report(10, "conditioned LLT error decay", pass, buf);
}

// ---- criterion 11 ------------------------------------------------------
void criterion_pinning_closed_forms() {
    const double p = 0.3;
    const long X = 10000;
    const ReturnLaw rl = return_law(WalkSpec::triple(p), X);

    PeriodicModel m0 = pinning_model({0.0}, p);
    Kernel k0 = build_kernel(m0, X, &rl);
    const double delta0 = pf(k0.B, 1).eigval;

    const double beta0 = 0.35;
    PeriodicModel mb = pinning_model({beta0}, p);
    Kernel kb = build_kernel(mb, X, &rl);
    const double delta_b = pf(kb.B, 1).eigval;

    // independent scalar renewal bisection for F
    auto phi = [&](double F) {
        double s = 0.0;
        for (long x = 1; x <= X; ++x) s += rl.k[x] * std::exp(-F * (double)x);
        s += rl.c_k_hat * num::lattice_tail(1.5, (double)(X + 1), 1.0, F) +
             rl.a_k_hat * num::lattice_tail(2.5, (double)(X + 1), 1.0, F);
        return s;
    };
    double lo = 0.0, hi = 1.0;
    while (phi(hi) > std::exp(-beta0)) hi *= 2.0;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (phi(mid) > std::exp(-beta0))
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-18) break;
    }
    const double F_oracle = 0.5 * (lo + hi);
    const double F = free_energy(mb, kb).F;

    const double e_fact = std::fabs(delta_b * std::exp(-beta0) - delta0);
    const double e_F = std::fabs(F - F_oracle);
    const double e_crit = std::fabs(delta0 - 1.0);
    const bool pass = e_fact <= 1e-12 && e_F <= 1e-10 && e_crit <= 1e-8;
    char buf[160];
    snprintf(buf, sizeof buf, "|factorization| = %.2e, |F err| = %.2e, |delta(0)-1| = %.2e",
             e_fact, e_F, e_crit);
    report(11, "homogeneous pinning closed forms", pass, buf);
}

// ---- criterion 12 ------------------------------------------------------
void criterion_asymptotic_constants() {
    const double p = 0.3;
    const ReturnLaw rl = return_law(WalkSpec::triple(p), 10000);
    bool pass = true;
    std::string detail;

    // localized
    {
        PeriodicModel m = copolymer_model({1.0, -1.0}, 0.5, 0.0, p);
        Kernel ker = build_kernel(m, 10000, &rl);
        const FreeEnergyResult fe = free_energy(m, ker);
        auto Z = exact_partition(ker, 5000, fe.F);
        const double c5 = Z[0][5000] / asymptotic_constant(m, ker, 5000 % 2);
        const double c1 = Z[0][1000] / asymptotic_constant(m, ker, 1000 % 2);
        if (std::fabs(c5 - 1.0) > 0.05 || std::fabs(c5 - 1.0) > std::fabs(c1 - 1.0) + 1e-12)
            pass = false;
        detail += "loc " + std::to_string(c5);
    }
    // critical
    {
        PeriodicModel m = pinning_model({0.0}, p);
        Kernel ker = build_kernel(m, 10000, &rl);
        auto Z = exact_partition(ker, 5000);
        const double c5 = std::sqrt(5000.0) * Z[0][5000] / asymptotic_constant(m, ker, 0);
        const double c1 = std::sqrt(1000.0) * Z[0][1000] / asymptotic_constant(m, ker, 0);
        if (std::fabs(c5 - 1.0) > 0.05 || std::fabs(c5 - 1.0) > std::fabs(c1 - 1.0) + 1e-12)
            pass = false;
        detail += ", crit " + std::to_string(c5);
    }
    // strictly delocalized
    {
        PeriodicModel m = pinning_model({-0.5}, p);
        Kernel ker = build_kernel(m, 10000, &rl);
        auto Z = exact_partition(ker, 5000);
        const double c5 = std::pow(5000.0, 1.5) * Z[0][5000] / asymptotic_constant(m, ker, 0);
        const double c1 = std::pow(1000.0, 1.5) * Z[0][1000] / asymptotic_constant(m, ker, 0);
        if (std::fabs(c5 - 1.0) > 0.05 || std::fabs(c5 - 1.0) > std::fabs(c1 - 1.0) + 1e-12)
            pass = false;
        detail += ", del " + std::to_string(c5);
    }
    report(12, "sharp asymptotics vs renewal oracle (ratios at N=5000)", pass, detail);
}

// ---- criterion 13 ------------------------------------------------------
void criterion_periodic_copolymer_localized() {
    const ReturnLaw rl = return_law(WalkSpec::triple(0.3), 10000);
    bool pass = true;
    double min_delta = 1e300;
    for (double lt : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        PeriodicModel m = copolymer_model({1.0, -1.0}, lt, 0.0, 0.3);
        Kernel ker = build_kernel(m, 10000, &rl);
        const double d = pf(ker.B, 2).eigval;
        min_delta = std::min(min_delta, d);
        if (!(d > 1.0)) pass = false;
    }
    report(13, "T=2 zero-mean copolymer always localized", pass,
           "min delta on grid = " + std::to_string(min_delta));
}

// ---- criterion 14 ------------------------------------------------------
void criterion_cubic_law() {
    const ReturnLaw rl = return_law(WalkSpec::triple(0.3), 10000);
    const std::vector<double> lams{0.01, 0.0215, 0.0464, 0.1};
    std::vector<double> hs;
    for (double lam : lams)
        hs.push_back(critical_h_periodic({1.0, -1.0}, 0.3, lam, 10000, 1e-12, &rl));
    // least-squares slope in log-log
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lams.size(); ++i) {
        const double x = std::log(lams[i]), y = std::log(hs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = (double)lams.size();
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report(14, "small-lambda cubic law for h_c", slope > 2.85 && slope < 3.15,
           "log-log slope = " + std::to_string(slope));
}

// ---- criterion 15 ------------------------------------------------------
void criterion_kernel_normalization() {
    const double p = 0.3;
    const ReturnLaw rl = return_law(WalkSpec::triple(p), 10000);
    bool pass = true;
    double worst = 0.0;

    {  // localized
        PeriodicModel m = copolymer_model({1.0, -1.0}, 0.5, 0.0, p);
        Kernel ker = build_kernel(m, 10000, &rl);
        SemiMarkovKernel G = limit_kernel_loc(ker, free_energy(m, ker));
        for (double d : G.norm_defect) worst = std::max(worst, d);
    }
    {  // critical
        PeriodicModel m = pinning_model({0.0}, p);
        Kernel ker = build_kernel(m, 10000, &rl);
        SemiMarkovKernel G = limit_kernel_crit(ker);
        for (double d : G.norm_defect) worst = std::max(worst, d);
    }
    {  // strictly delocalized, both boundary conditions
        PeriodicModel m = pinning_model({-0.5}, p);
        Kernel ker = build_kernel(m, 10000, &rl);
        for (bool c : {true, false}) {
            SemiMarkovKernel G = limit_kernel_del(ker, 0, c);
            for (double d : G.norm_defect) worst = std::max(worst, d);
        }
    }
    if (worst > 1e-6) pass = false;

    // sign-parameter special cases
    double sp_err = 0.0;
    {
        PeriodicModel m = copolymer_model({1.0, -1.0}, 0.5, 0.3, p);  // h_w > 0
        Kernel ker = build_kernel(m, 10000, &rl);
        SignParameters sp = sign_parameters(m, ker);
        sp_err = std::max(sp_err, std::fabs(sp.p_eq - 1.0));
        for (int eta = 0; eta < 2; ++eta) {
            sp_err = std::max(sp_err, std::fabs(sp.q_eq[eta] - 1.0));
            sp_err = std::max(sp_err, std::fabs(sp.p_del_c[eta] - 1.0));
            sp_err = std::max(sp_err, std::fabs(sp.p_del_f[eta] - 1.0));
        }
    }
    {
        PeriodicModel m = pinning_model({0.2, -0.1}, p);  // h_w = 0, Sigma == 0
        Kernel ker = build_kernel(m, 10000, &rl);
        SignParameters sp = sign_parameters(m, ker);
        sp_err = std::max(sp_err, std::fabs(sp.p_eq - 0.5));
        for (int eta = 0; eta < 2; ++eta) {
            sp_err = std::max(sp_err, std::fabs(sp.q_eq[eta] - 0.5));
            sp_err = std::max(sp_err, std::fabs(sp.p_del_c[eta] - 0.5));
            sp_err = std::max(sp_err, std::fabs(sp.p_del_f[eta] - 0.5));
        }
    }
    if (sp_err > 1e-10) pass = false;
    char buf[128];
    snprintf(buf, sizeof buf, "max norm defect = %.2e (tol 1e-6), sign cases = %.2e (tol 1e-10)",
             worst, sp_err);
    report(15, "semi-Markov normalization and sign-law special cases", pass, buf);
}

// ---- criterion 16 ------------------------------------------------------
void criterion_cocycles() {
    bool pass = true;
    const int g = 3, k = 1;
    std::vector<double> nu(g, 1.0 / g);
    // coboundaries
    for (std::uint64_t seed = 0; seed < 100 && pass; ++seed) {
        std::vector<double> G0(g);
        for (int i = 0; i < g; ++i) G0[i] = 2.0 * rng::uniform01(seed, 60, i) - 1.0;
        std::vector<double> F(g * g);
        for (int a = 0; a < g; ++a)
            for (int b = 0; b < g; ++b) F[a * g + b] = G0[b] - G0[a];
        CocycleSpec spec = CocycleSpec::make(g, nu, k, F);
        if (!is_coboundary(spec).yes) pass = false;
        if (std::fabs(cocycle_free_energy(spec, 1.0)) > 1e-10) pass = false;
        if (std::fabs(cocycle_free_energy(spec, -1.0)) > 1e-10) pass = false;
        for (long N = 1; N <= 20; ++N) {
            if (std::fabs(partition(spec, 1.0, N) - 1.0) > 1e-10) pass = false;
            if (std::fabs(partition(spec, -1.0, N) - 1.0) > 1e-10) pass = false;
        }
    }
    // random centered non-coboundaries
    for (std::uint64_t seed = 0; seed < 100 && pass; ++seed) {
        std::vector<double> F(g * g);
        double mean = 0.0;
        for (int i = 0; i < g * g; ++i) {
            F[i] = 2.0 * rng::uniform01(seed, 61, i) - 1.0;
            mean += F[i];
        }
        for (int i = 0; i < g * g; ++i) F[i] -= mean / (g * g);
        CocycleSpec spec = CocycleSpec::make(g, nu, k, F);
        CoboundaryResult res = is_coboundary(spec);
        if (res.yes) pass = false;
        if (std::fabs(res.witness_sum) <= 1e-10) pass = false;
        if (cocycle_free_energy(spec, 1.0) <= 1e-8) pass = false;
    }
    report(16, "cocycle equivalence suite (100 + 100 tables)", pass,
           pass ? "all detected with witnesses" : "mismatch found");
}

// ---- criterion 17 ------------------------------------------------------
void criterion_cramer() {
    const ChargeLaw bin = ChargeLaw::binary();
    double worst = 0.0;
    for (double q = -0.99; q <= 0.99 + 1e-12; q += 0.01) {
        const double closed =
            0.5 * (1 + q) * std::log(1 + q) + 0.5 * (1 - q) * std::log(1 - q);
        worst = std::max(worst, std::fabs(cramer(bin, q) - closed));
    }
    report(17, "binary Cramer functional closed form", worst <= 1e-8,
           "max |err| = " + std::to_string(worst) + ", tol 1e-8");
}

// ---- criterion 18 ------------------------------------------------------
void criterion_certificate() {
    // As specified: (lam, h) = (1, 0.4), q = -tanh(1); A chosen by the bound
    // formula (smallest even A with bound > 1 given eps): A = 36, eps = 0.0014.
    // The analytic inequality holds for every seed whose stopping index ell is
    // located, but tau_ell ~ exp(ell Sigma(q)) exceeds any desk-scale scan for
    // most seeds (see the decisions ledger); the 50/50 requirement is reported
    // honestly.
    const Params par{1.0, 0.4};
    const double q = -std::tanh(1.0);
    const long A = 36;
    const double eps = 0.0014;
    long found = 0, holds = 0, bound_gt1 = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        Environment env = Environment::seeded(ChargeLaw::binary(), 4242, s);
        Certificate c = certificate(env, par, A, eps, q, 1 << 24, 4000000);
        if (c.log_bound > 0.0) ++bound_gt1;
        if (c.found) ++found;
        if (c.holds) ++holds;
    }
    const bool pass = (holds == 50) && (bound_gt1 == 50);
    char buf[200];
    snprintf(buf, sizeof buf,
             "bound>1 for %ld/50; inequality holds for %ld/50 (stopping index located for %ld; "
             "scan cap 2^24)",
             bound_gt1, holds, found);
    report(18, "lower-bound certificate at (1, 0.4), q = -tanh(1)", pass, buf);
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_bound_curves();
    criterion_pvalues();
    criterion_transfer_exact();
    criterion_oracle_crossval();
    criterion_window();
    criterion_desk_localization();
    criterion_sign_change();
    criterion_meander_direction();
    criterion_ballot();
    criterion_llt();
    criterion_pinning_closed_forms();
    criterion_asymptotic_constants();
    criterion_periodic_copolymer_localized();
    criterion_cubic_law();
    criterion_kernel_normalization();
    criterion_cocycles();
    criterion_cramer();
    criterion_certificate();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    printf("acceptance: %d of 18 criteria failed (%.1f s)\n", g_failures, secs);
    return g_failures;
}
