#pragma once

#include "copoly/env.hpp"
#include "copoly/transfer.hpp"

#include <cstdint>
#include <vector>

namespace copoly {

// l1 distance between the endpoint profile under the backward environment
// and the Brownian meander endpoint mass on the parity lattice
double meander_distance(const Environment& env, const Params& par, long twoN, const Window& win);

struct CriticalHResult {
    double h_hat{0.0};
    double residual{0.0};  // |log Z at h_hat|
    bool saturated_low{false}, saturated_high{false};
    int iterations{0};
};

// solves Z_{2N,w}(0) = threshold in h by monotone bisection
CriticalHResult critical_h_estimate(const Environment& env, double lam, long twoN, double tol,
                                    const Window& win, double threshold = 1.0);

// solves h^{(m)}(lam*) = h_hat in m
double fit_m(const ChargeLaw& law, double lam_star, double h_hat);

struct StretchTime {
    double q{0.0};
    long M{0};
    long tau{0};  // endpoint of the first q-atypical stretch of length >= M
    long R{0};    // shortest qualifying suffix length at tau
    bool found{false};
};

// scans even n >= M for the first suffix of even length k >= M with mean <= q
StretchTime find_stretch(const Environment& env, double q, long M, long scan_cap = 100000000);

struct Certificate {
    long A{0};
    double eps{0.0};
    double q{0.0};        // stretch level actually used
    double q0{0.0};       // Legendre-optimal level (log M)'(-4 lam / 3)
    double sigma_q{0.0};  // Cramer functional at q
    long ell{0};
    long T{0};
    long R{0};
    double logZ0_at_T{0.0};
    double log_bound{0.0};  // log of the analytic lower bound (A-form)
    double C{0.0};          // certified constant, exp(log_bound)
    bool found{false};      // stopping index located within the scan cap
    bool evaluated{false};  // transfer value computed (T within the transfer cap)
    bool holds{false};      // logZ0_at_T >= log_bound
};

// lower-bound certificate at (lam, h); pass q = NaN to use q0
Certificate certificate(const Environment& env, const Params& par, long A, double eps, double q,
                        long scan_cap = 1 << 25, long transfer_cap = 4000000);

struct FirstPassage {
    long N{0};
    bool found{false};
    double logZ0{0.0};
};

// smallest even N with Z_{N,w}(0) >= C, scanned incrementally up to N_cap
FirstPassage first_passage_TC(const Environment& env, const Params& par, double C, long N_cap,
                              const Window& win = Window::full());

} // namespace copoly
