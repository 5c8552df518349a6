#include "copoly/deloc.hpp"

#include "copoly/num.hpp"

#include <cmath>
#include <stdexcept>

namespace copoly {

double meander_distance(const Environment& env, const Params& par, long twoN, const Window& win) {
    if (twoN % 2 != 0 || twoN < 2) throw std::invalid_argument("meander_distance: size must be even");
    Environment back = env;
    back.direction = Direction::Backward;

    const auto prof = endpoint_distribution(back, par, twoN, win);
    const double sn = std::sqrt((double)twoN);
    auto target = [&](long x) {
        const double r = (double)x / sn;
        // meander endpoint mass on the spacing-2 lattice
        return r >= 0.0 ? (2.0 / sn) * r * std::exp(-r * r / 2.0) : 0.0;
    };

    double dist = 0.0;
    for (const auto& [x, p] : prof) dist += std::fabs(p - target(x));
    // target mass on lattice sites above the stored window
    const long x_hi = prof.empty() ? 0 : prof.back().first;
    for (long x = x_hi + 2; x <= twoN; x += 2) dist += target(x);
    return dist;
}

CriticalHResult critical_h_estimate(const Environment& env, double lam, long twoN, double tol,
                                    const Window& win, double threshold) {
    if (!(lam > 0.0)) throw std::invalid_argument("critical_h_estimate: lambda must be > 0");
    const double log_th = std::log(threshold);
    auto logz = [&](double h) { return pinned_logZ(env, Params{lam, h}, twoN, win) - log_th; };

    CriticalHResult res;
    double lo = 0.0;
    double flo = logz(lo);
    if (flo <= 0.0) {
        res.saturated_low = true;
        res.h_hat = 0.0;
        res.residual = std::fabs(flo);
        return res;
    }
    double hi = h_sat(env, twoN) + 1.0;
    double fhi = logz(hi);
    if (fhi >= 0.0) {
        res.saturated_high = true;
        res.h_hat = hi;
        res.residual = std::fabs(fhi);
        return res;
    }
    double mid = 0.5 * (lo + hi), fmid = 0.0;
    for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        fmid = logz(mid);
        ++res.iterations;
        if (std::fabs(fmid) <= tol) break;
        if (fmid > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
    }
    res.h_hat = mid;
    res.residual = std::fabs(fmid);
    return res;
}

double fit_m(const ChargeLaw& law, double lam_star, double h_hat) {
    if (!(lam_star > 0.0)) throw std::invalid_argument("fit_m: lambda must be > 0");
    if (!(h_hat > 0.0)) throw std::domain_error("fit_m: h_hat must be positive");
    double m_lo = 1e-12, m_hi = 1.0;
    while (h_m(law, m_hi, lam_star) < h_hat) {
        m_hi *= 2.0;
        if (m_hi > 1e9) throw std::domain_error("fit_m: h_hat above the saturation limit");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (m_lo + m_hi);
        if (h_m(law, mid, lam_star) < h_hat)
            m_lo = mid;
        else
            m_hi = mid;
        if (m_hi - m_lo < 1e-12 * std::max(1.0, m_hi)) break;
    }
    return 0.5 * (m_lo + m_hi);
}

namespace {

// incremental scanner for q-atypical suffixes over even positions
struct StretchScanner {
    const Environment& env;
    const double q;
    long n{0};        // last processed even position
    double P{0.0};    // prefix charge sum at n
    double W_n{0.0};  // P - q n

    // ring of W over even positions, plus sampled prefix maxima for rewinds
    static constexpr long kRing = 1 << 14;  // even positions covered
    std::vector<double> ring;               // ring[(j/2) % kRing] = W_j
    std::vector<double> snapshots;          // prefix max of W over even j <= 2*4096*i
    static constexpr long kSnapEvery = 4096;  // in even-position units

    long m{-2};           // endpoint of the eligible j range (even), -2 = empty
    double runmax{num::neg_inf};

    explicit StretchScanner(const Environment& e, double q_) : env(e), q(q_), ring(kRing) {
        store(0, 0.0);
    }

    void store(long j, double w) {
        ring[(j / 2) % kRing] = w;
        if ((j / 2) % kSnapEvery == 0) {
            const long idx = j / 2 / kSnapEvery;
            const double prev = idx == 0 ? num::neg_inf : snapshots[idx - 1];
            if ((long)snapshots.size() <= idx) snapshots.resize(idx + 1, num::neg_inf);
            snapshots[idx] = std::max(prev, prefix_max_tail(idx == 0 ? 0 : (idx - 1) * kSnapEvery * 2 + 2, j));
        }
    }

    double W_at(long j) const { return ring[(j / 2) % kRing]; }

    double prefix_max_tail(long from, long to) const {
        double mx = num::neg_inf;
        for (long j = from; j <= to; j += 2) mx = std::max(mx, W_at(j));
        return mx;
    }

    // prefix max over even j in [0, mm]; valid while mm is within ring reach
    double prefix_max(long mm) const {
        if (mm < 0) return num::neg_inf;
        const long idx = mm / 2 / kSnapEvery;
        double mx = idx == 0 ? num::neg_inf : snapshots[idx - 1];
        const long from = idx == 0 ? 0 : (idx - 1) * kSnapEvery * 2 + 2;
        return std::max(mx, prefix_max_tail(from, mm));
    }

    void advance() {  // consume charges n+1, n+2
        P += env.charge(n + 1, n + 2);
        P += env.charge(n + 2, n + 2);
        n += 2;
        W_n = P - q * (double)n;
        store(n, W_n);
    }

    void extend_window_to(long mm) {
        while (m < mm) {
            m += 2;
            runmax = std::max(runmax, W_at(m));
        }
    }

    void rewind_window_to(long mm) {
        if (mm >= m) {
            extend_window_to(mm);
            return;
        }
        if (n - mm > (kRing - kSnapEvery) * 2 - 4)
            throw std::runtime_error("stretch scan: rewind beyond ring");
        runmax = prefix_max(mm);
        m = mm;
    }

    bool triggered() const { return W_n <= runmax; }

    long find_R(long M) const {
        // smallest even k >= M with W_{n-k} >= W_n
        for (long k = M; k <= n; k += 2) {
            if (n - (n - k) > kRing * 2 - 4) break;
            if (W_at(n - k) >= W_n) return k;
        }
        return -1;
    }
};

} // namespace

StretchTime find_stretch(const Environment& env, double q, long M, long scan_cap) {
    if (M < 2 || M % 2 != 0) throw std::invalid_argument("find_stretch: M must be even and >= 2");
    StretchScanner sc(env, q);
    StretchTime out;
    out.q = q;
    out.M = M;
    while (sc.n < scan_cap) {
        sc.advance();
        if (sc.n >= M) {
            sc.extend_window_to(sc.n - M);
            if (sc.triggered()) {
                out.tau = sc.n;
                out.R = sc.find_R(M);
                out.found = true;
                return out;
            }
        }
    }
    return out;
}

Certificate certificate(const Environment& env, const Params& par, long A, double eps, double q,
                        long scan_cap, long transfer_cap) {
    if (A < 2 || A % 2 != 0) throw std::invalid_argument("certificate: A must be even and >= 2");
    if (!(eps > 0.0)) throw std::invalid_argument("certificate: eps must be > 0");
    if (env.is_explicit) throw std::invalid_argument("certificate: needs a law-driven environment");

    const ChargeLaw& law = env.law;
    const double h_low = h_m(law, 2.0 / 3.0, par.lam);
    if (par.h >= h_low)
        throw std::domain_error("certificate not applicable: h >= lower bound curve");

    Certificate cert;
    cert.A = A;
    cert.eps = eps;
    cert.q0 = law.log_mgf_prime(-4.0 * par.lam / 3.0);
    cert.q = std::isnan(q) ? cert.q0 : q;
    if (!(cert.q < -par.h))
        throw std::invalid_argument("certificate: q must be < -h");
    cert.sigma_q = cramer(law, cert.q);

    // analytic A-form bound, with K(t) >= sqrt(2/pi) t^{-3/2}
    const double c_prime = (2.0 / M_PI) / (8.0 * std::sqrt(2.0));
    const double g = (-4.0 * par.lam / 3.0) * cert.q - cert.sigma_q -
                     (4.0 * par.lam / 3.0) * par.h;
    cert.log_bound = std::log(c_prime) +
                     1.5 * (double)A * (g - std::log((double)A) / (double)A - eps);
    cert.C = std::exp(cert.log_bound);

    // scan for ell = first even k >= A with log tau_k / k <= Sigma(q) + eps
    StretchScanner sc(env, cert.q);
    long k = A;
    const double rate = cert.sigma_q + eps;
    while (sc.n < scan_cap) {
        sc.advance();
        if (sc.n < k) continue;
        sc.extend_window_to(sc.n - k);
        while (sc.triggered()) {
            // tau_k = sc.n; check the stopping condition for this k
            if (std::log((double)sc.n) / (double)k <= rate) {
                cert.ell = k;
                cert.T = sc.n;
                cert.R = sc.find_R(k);
                cert.found = true;
                break;
            }
            k += 2;
            sc.rewind_window_to(sc.n - k);
        }
        if (cert.found) break;
    }
    if (!cert.found) return cert;

    if (cert.T <= transfer_cap) {
        const Window win = cert.T <= 20000 ? Window::full() : Window::restricted();
        cert.logZ0_at_T = pinned_logZ(env, par, cert.T, win);
        cert.evaluated = true;
        cert.holds = cert.logZ0_at_T >= cert.log_bound;
    }
    return cert;
}

FirstPassage first_passage_TC(const Environment& env, const Params& par, double C, long N_cap,
                              const Window& win) {
    if (!(C > 1.0)) throw std::invalid_argument("first_passage_TC: C must be > 1");
    const double logC = std::log(C);
    FirstPassage out;
    Profile prof = Profile::initial();
    for (long M = 0; 2 * (M + 1) <= N_cap; ++M) {
        const double w1 = env.charge(2 * M + 1, N_cap);
        const double w2 = env.charge(2 * M + 2, N_cap);
        evolve(prof, w1, w2, par, win);
        const double lz = prof.log_z_total(0);
        if (lz >= logC) {
            out.N = 2 * (M + 1);
            out.found = true;
            out.logZ0 = lz;
            return out;
        }
    }
    return out;
}

} // namespace copoly
