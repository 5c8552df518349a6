#include "copoly/stats.hpp"

#include "copoly/mc.hpp"
#include "copoly/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace copoly {

double concentration_pvalue(double u_hat, long n, long S, double lam, bool penalty_factor_4) {
    if (u_hat <= 0.0) return 1.0;
    const double denom = (penalty_factor_4 ? 64.0 : 16.0) * lam * lam * (double)S;
    return std::exp(-u_hat * u_hat * (double)n / denom);
}

namespace {

TestReport run_test(const ChargeLaw& law, double lam, double h, long S, long n,
                    std::uint64_t master_seed, const Window& win, int threads, bool deloc_side) {
    if (S % 2 != 0 || S <= 0) throw std::invalid_argument("localization test: S must be even");
    if (n <= 0) throw std::invalid_argument("localization test: n must be positive");
    bool penalty = false;
    if (law.kind == ChargeKind::StandardGaussian)
        throw std::invalid_argument(
            "localization test: the concentration bound requires bounded charges");
    if (law.kind != ChargeKind::BinarySymmetric) penalty = true;

    const Params par{lam, h};
    auto task = [&](long i) {
        Environment env = Environment::seeded(law, master_seed, (std::uint64_t)i);
        return pinned_logZ(env, par, S, win);
    };
    TestReport rep;
    rep.samples = mc_map(n, task, threads);
    double s = 0.0;
    for (double v : rep.samples) s += v;
    rep.lam = lam;
    rep.h = h;
    rep.S = S;
    rep.n = n;
    rep.master_seed = master_seed;
    rep.penalty_factor_4 = penalty;
    rep.u_hat = s / (double)n;
    const double u_signed = deloc_side ? -rep.u_hat : rep.u_hat;
    rep.p_value = concentration_pvalue(u_signed, n, S, lam, penalty);
    rep.decision = (u_signed > 0.0) ? TestReport::Decision::RejectH0_Localized
                                    : TestReport::Decision::Inconclusive;
    return rep;
}

} // namespace

TestReport localization_test(const ChargeLaw& law, double lam, double h, long S, long n,
                             std::uint64_t master_seed, const Window& win, int threads) {
    return run_test(law, lam, h, S, n, master_seed, win, threads, false);
}

TestReport delocalization_side_test(const ChargeLaw& law, double lam, double h, long S, long n,
                                    std::uint64_t master_seed, const Window& win, int threads) {
    return run_test(law, lam, h, S, n, master_seed, win, threads, true);
}

std::pair<double, double> median_ci(std::vector<double> sample, double level) {
    const long n = (long)sample.size();
    if (n < 30) throw std::invalid_argument("median_ci: need at least 30 observations");
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("median_ci: bad level");
    std::sort(sample.begin(), sample.end());
    const double a = std::fabs(rng::normal_inv_cdf((1.0 - level) / 2.0));
    const long off = (long)std::floor(a * std::sqrt((double)n) / 2.0);
    const long center = (n % 2 == 0) ? n / 2 : (n + 1) / 2;  // 1-based rank
    const long lo = std::max<long>(1, center - off);
    const long hi = std::min<long>(n, center + off);
    return {sample[lo - 1], sample[hi - 1]};
}

double small_N_criterion(const ChargeLaw& law, double lam, double h) {
    auto f = [&](double s) {
        // log(1/2 + 1/2 exp(-2 lam (s + 2h))), stable
        const double u = -2.0 * lam * (s + 2.0 * h);
        if (u <= 0.0) return std::log1p(std::exp(u)) - std::log(2.0);
        return u + std::log1p(std::exp(-u)) - std::log(2.0);
    };
    switch (law.kind) {
        case ChargeKind::BinarySymmetric:
            return 0.25 * f(2.0) + 0.5 * f(0.0) + 0.25 * f(-2.0);
        case ChargeKind::FiniteSupport: {
            double e = 0.0;
            for (size_t i = 0; i < law.values.size(); ++i)
                for (size_t j = 0; j < law.values.size(); ++j)
                    e += law.probs[i] * law.probs[j] * f(law.values[i] + law.values[j]);
            return e;
        }
        case ChargeKind::StandardGaussian: {
            // w1 + w2 ~ N(0,2); Simpson on [-10 sigma, 10 sigma]
            const double sigma = std::sqrt(2.0);
            const long n = 4000;
            const double lo = -10.0 * sigma, hi = 10.0 * sigma;
            const double dx = (hi - lo) / n;
            auto g = [&](double s) {
                return f(s) * std::exp(-s * s / (2.0 * sigma * sigma)) /
                       (sigma * std::sqrt(2.0 * M_PI));
            };
            double acc = g(lo) + g(hi);
            for (long i = 1; i < n; ++i) acc += g(lo + i * dx) * (i % 2 ? 4.0 : 2.0);
            return acc * dx / 3.0;
        }
    }
    return 0.0;
}

} // namespace copoly
