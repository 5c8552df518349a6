#include "copoly/fluct.hpp"

#include <cmath>
#include <stdexcept>

namespace copoly {

namespace {
inline double phi_plus(double x) { return x >= 0.0 ? x * std::exp(-x * x / 2.0) : 0.0; }
}

double conditioned_llt_error(long n) {
    if (n < 2) throw std::invalid_argument("conditioned_llt_error: n must be >= 2");
    const StayPositiveLaw law = stay_positive_law(WalkSpec::simple(), n);
    const double sn = std::sqrt((double)n);
    double worst = 0.0;
    // reachable x share the parity of n
    for (long x = (n % 2 == 0) ? 2 : 1; x <= n; x += 2) {
        const double cond = law.mass[x] / law.prob;
        const double err = std::fabs((sn / 2.0) * cond - phi_plus((double)x / sn));
        if (err > worst) worst = err;
    }
    return worst;
}

double ballot_check(long n_max) {
    const WalkSpec spec = WalkSpec::simple();
    double worst = 0.0;
    for (long n = 1; n <= n_max; ++n) {
        const StayPositiveLaw law = stay_positive_law(spec, n);
        const std::vector<double> ep = endpoint_law(spec, n);
        for (long x = 1; x <= n; ++x) {
            const double lhs = law.mass[x];
            const double rhs = ((double)x / (double)n) * ep[x + n];
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
    }
    return worst;
}

std::vector<UniformityBin> uniformity_report(long n) {
    if (n < 2) throw std::invalid_argument("uniformity_report: n must be >= 2");
    const StayPositiveLaw law = stay_positive_law(WalkSpec::simple(), n);
    const double sn = std::sqrt((double)n);
    std::vector<UniformityBin> bins;
    for (double c = 0.1; c <= 3.0 + 1e-9; c += 0.1)
        bins.push_back({c, 0.0, 0.0});
    for (long x = (n % 2 == 0) ? 2 : 1; x <= n; x += 2) {
        const double r = (double)x / sn;
        const double cond = law.mass[x] / law.prob;
        const double err = std::fabs((sn / 2.0) * cond - phi_plus(r));
        long b = (long)std::floor(r / 0.1);
        if (b < 0) b = 0;
        if (b >= (long)bins.size()) continue;
        bins[b].error = std::max(bins[b].error, err);
        bins[b].mass += cond;
    }
    return bins;
}

} // namespace copoly
