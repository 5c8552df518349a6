#include "copoly/transfer.hpp"

#include "copoly/num.hpp"
#include "copoly/walk.hpp"

#include <cmath>
#include <stdexcept>

namespace copoly {

namespace {
constexpr double kFlush = 1e-300;
}

Profile Profile::initial() {
    Profile p;
    p.M = 0;
    p.y_lo = 0;
    p.y_hi = 0;
    p.z = {1.0};
    p.log_scale = 0.0;
    return p;
}

double Profile::log_z(long y) const {
    const double v = value(y);
    return v > 0.0 ? std::log(v) : num::neg_inf;
}

double Profile::log_z_total(long y) const {
    const double v = value(y);
    return v > 0.0 ? std::log(v) + log_scale : num::neg_inf;
}

void evolve(Profile& prof, double w1, double w2, const Params& par, const Window& win) {
    const long M1 = prof.M + 1;
    const double alpha = std::exp(-2.0 * par.lam * (w1 + w2 + 2.0 * par.h));

    long lo = -M1, hi = M1;
    if (win.mode == Window::Mode::Restricted && 2 * M1 >= win.N0) {
        lo = std::max(lo, (long)std::ceil(-win.A * std::sqrt((double)M1)));
        hi = std::min(hi, (long)std::floor(win.B * std::sqrt((double)M1)));
    }

    std::vector<double> nz(hi - lo + 1, 0.0);
    auto old = [&](long y) { return prof.value(y); };
    for (long y = lo; y <= hi; ++y) {
        double v;
        if (y > 0) {
            v = 0.25 * old(y + 1) + 0.5 * old(y) + 0.25 * old(y - 1);
        } else if (y == 0) {
            v = 0.25 * (old(1) + old(0)) + 0.25 * alpha * (old(0) + old(-1));
        } else {
            v = alpha * (0.25 * old(y + 1) + 0.5 * old(y) + 0.25 * old(y - 1));
        }
        nz[y - lo] = v < kFlush ? 0.0 : v;
    }

    double mx = 0.0;
    for (double v : nz) mx = std::max(mx, v);
    if (mx <= 0.0) throw std::runtime_error("transfer: profile vanished (degenerate window)");
    for (double& v : nz) v /= mx;

    prof.M = M1;
    prof.y_lo = lo;
    prof.y_hi = hi;
    prof.z = std::move(nz);
    prof.log_scale += std::log(mx);
}

namespace {

Profile run_to(const Environment& env, const Params& par, long N, const Window& win) {
    if (N < 0 || N % 2 != 0) throw std::invalid_argument("transfer: N must be even");
    Profile prof = Profile::initial();
    for (long M = 0; M < N / 2; ++M) {
        const double w1 = env.charge(2 * M + 1, N);
        const double w2 = env.charge(2 * M + 2, N);
        evolve(prof, w1, w2, par, win);
    }
    return prof;
}

} // namespace

double pinned_logZ(const Environment& env, const Params& par, long N, const Window& win) {
    if (N == 0) return 0.0;
    Profile prof = run_to(env, par, N, win);
    return prof.log_z_total(0);
}

double free_logZ(const Environment& env, const Params& par, long N, const Window& win) {
    if (N == 0) return 0.0;
    Profile prof = run_to(env, par, N, win);
    double s = 0.0;
    for (double v : prof.z) s += v;
    return std::log(s) + prof.log_scale;
}

double annealed_logZ(const ChargeLaw& law, const Params& par, long N) {
    if (N < 0 || N % 2 != 0) throw std::invalid_argument("annealed_logZ: N must be even");
    if (N == 0) return 0.0;
    if (par.lam == 0.0) return 0.0;
    // constant effective charge realizing the per-monomer weight log M(-2 lam) - 2 lam h
    const double w_eff = -law.log_mgf(-2.0 * par.lam) / (2.0 * par.lam);
    Environment env = Environment::explicit_seq(std::vector<double>(N, w_eff));
    return free_logZ(env, par, N, Window::full());
}

std::vector<std::pair<long, double>> endpoint_distribution(const Environment& env,
                                                           const Params& par, long N,
                                                           const Window& win) {
    Profile prof = run_to(env, par, N, win);
    double s = 0.0;
    for (double v : prof.z) s += v;
    if (s <= 0.0) throw std::runtime_error("endpoint_distribution: degenerate profile");
    std::vector<std::pair<long, double>> out;
    out.reserve(prof.z.size());
    for (long y = prof.y_lo; y <= prof.y_hi; ++y)
        out.emplace_back(2 * y, prof.value(y) / s);
    return out;
}

double excursion_oracle_logZ0(const Environment& env, const Params& par, long N, long cap) {
    if (N % 2 != 0 || N < 0) throw std::invalid_argument("excursion oracle: N must be even");
    if (N > cap) throw std::invalid_argument("excursion oracle: N exceeds cap");
    if (N == 0) return 0.0;

    ReturnLaw ret = return_law(WalkSpec::simple(), N);
    std::vector<double> logK(N + 1, num::neg_inf);
    for (long x = 2; x <= N; x += 2)
        if (ret.k[x] > 0.0) logK[x] = std::log(ret.k[x]);

    std::vector<double> W(N + 1, 0.0);  // prefix charge sums
    for (long n = 1; n <= N; ++n) W[n] = W[n - 1] + env.charge(n, N);

    // L[x] = log Z_{x}(0) by the last-return decomposition
    std::vector<double> L(N / 2 + 1, 0.0);
    std::vector<double> terms(N / 2, 0.0);
    for (long xh = 1; xh <= N / 2; ++xh) {
        const long x = 2 * xh;
        double m = num::neg_inf;
        for (long uh = 0; uh < xh; ++uh) {
            const long u = 2 * uh;
            const double t = L[uh] + logK[x - u] +
                             num::log_phi(par.lam * (W[x] - W[u]) + par.lam * par.h * (x - u));
            terms[uh] = t;
            if (t > m) m = t;
        }
        double s = 0.0;
        for (long uh = 0; uh < xh; ++uh) s += std::exp(terms[uh] - m);
        L[xh] = m + std::log(s);
    }
    return L[N / 2];
}

void evolve_trace(const Environment& env, const Params& par, long M_max, const Window& win,
                  const std::function<void(const Profile&)>& cb) {
    Profile prof = Profile::initial();
    for (long M = 0; M < M_max; ++M) {
        const double w1 = env.charge(2 * M + 1, 2 * M_max);
        const double w2 = env.charge(2 * M + 2, 2 * M_max);
        evolve(prof, w1, w2, par, win);
        cb(prof);
    }
}

} // namespace copoly
