#include "copoly/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace copoly {

namespace {
constexpr double kFlush = 1e-300;  // entries below this are flushed to zero
}

WalkSpec WalkSpec::triple(double p) {
    if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument("triple walk needs p in (0, 1/2)");
    return {WalkKind::Triple, p, 2.0 * p};
}

double ReturnLaw::mass_up_to(long n) const {
    double s = 0.0;
    for (long i = 1; i <= n && i < (long)k.size(); ++i) s += k[i];
    return s;
}

ReturnLaw return_law(const WalkSpec& spec, long n_max) {
    if (n_max < 2) throw std::invalid_argument("return_law: n_max must be >= 2");
    const double up = spec.p_up();
    const double stay = spec.p_stay();

    ReturnLaw out;
    out.spec = spec;
    out.k.assign(n_max + 1, 0.0);

    // f[x + n_max] = P(S_m = x, S_1 != 0, ..., S_m != 0); origin is absorbing
    const long off = n_max;
    std::vector<double> f(2 * n_max + 1, 0.0), g(2 * n_max + 1, 0.0);
    f[off + 1] = up;
    f[off - 1] = up;
    if (stay > 0.0) out.k[1] = stay;

    for (long m = 2; m <= n_max; ++m) {
        const long lo = -m, hi = m;
        double absorbed = 0.0;
        for (long x = lo; x <= hi; ++x) {
            double v = stay > 0.0 ? stay * f[off + x] : 0.0;
            if (x - 1 >= -n_max) v += up * f[off + x - 1];
            if (x + 1 <= n_max) v += up * f[off + x + 1];
            if (v < kFlush) v = 0.0;
            if (x == 0) {
                absorbed = v;
                g[off] = 0.0;
            } else {
                g[off + x] = v;
            }
        }
        out.k[m] = absorbed;
        std::swap(f, g);
    }

    // Richardson extrapolation of n^{3/2} K(n) at the two largest lattice points
    const int step = spec.period();
    long n2 = n_max;
    if (spec.kind == WalkKind::SimpleSymmetric && n2 % 2 != 0) --n2;
    const long n1 = n2 - step;
    if (n1 >= 2) {
        const double f2 = std::pow((double)n2, 1.5) * out.k[n2];
        const double f1 = std::pow((double)n1, 1.5) * out.k[n1];
        out.c_k_hat = (n2 * f2 - n1 * f1) / (double)(n2 - n1);
        out.a_k_hat = (double)n1 * (f1 - out.c_k_hat);
    } else {
        out.c_k_hat = std::pow((double)n2, 1.5) * out.k[n2];
    }
    return out;
}

std::vector<double> endpoint_law(const WalkSpec& spec, long n) {
    if (n < 1) throw std::invalid_argument("endpoint_law: n must be >= 1");
    const double up = spec.p_up();
    const double stay = spec.p_stay();
    const long off = n;
    std::vector<double> f(2 * n + 1, 0.0), g(2 * n + 1, 0.0);
    f[off] = 1.0;
    for (long m = 1; m <= n; ++m) {
        for (long x = -m; x <= m; ++x) {
            double v = stay > 0.0 ? stay * f[off + x] : 0.0;
            if (x - 1 >= -n) v += up * f[off + x - 1];
            if (x + 1 <= n) v += up * f[off + x + 1];
            g[off + x] = v < kFlush ? 0.0 : v;
        }
        if (m < n) {
            g[off - m - 1] = 0.0;
            g[off + m + 1] = 0.0;
        }
        std::swap(f, g);
    }
    return f;
}

StayPositiveLaw stay_positive_law(const WalkSpec& spec, long n) {
    if (n < 1) throw std::invalid_argument("stay_positive_law: n must be >= 1");
    const double up = spec.p_up();
    const double stay = spec.p_stay();
    std::vector<double> f(n + 1, 0.0), g(n + 1, 0.0);
    f[1] = up;  // S_1 = 1
    for (long m = 2; m <= n; ++m) {
        for (long x = 1; x <= m && x <= n; ++x) {
            double v = stay > 0.0 ? stay * f[x] : 0.0;
            if (x - 1 >= 1) v += up * f[x - 1];
            if (x + 1 <= n) v += up * f[x + 1];
            g[x] = v < kFlush ? 0.0 : v;
        }
        for (long x = m + 1; x <= n; ++x) g[x] = 0.0;
        std::swap(f, g);
    }
    StayPositiveLaw out;
    out.n = n;
    out.mass = std::move(f);
    out.mass[0] = 0.0;
    double s = 0.0;
    for (double v : out.mass) s += v;
    out.prob = s;
    return out;
}

double ladder_renewal_mass(const WalkSpec& spec, long n, long x) {
    if (n < 1) throw std::invalid_argument("ladder_renewal_mass: n must be >= 1");
    if (x < 1 || x > n) return 0.0;
    StayPositiveLaw law = stay_positive_law(spec, n);
    return law.mass[x];
}

} // namespace copoly
