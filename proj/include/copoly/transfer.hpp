#pragma once

#include "copoly/env.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace copoly {

struct Params {
    double lam{0.0};
    double h{0.0};
};

struct Window {
    enum class Mode { Full, Restricted };
    Mode mode{Mode::Full};
    double A{3.0}, B{8.0};
    long N0{1000};

    static Window full() { return {}; }
    static Window restricted(double A = 3.0, double B = 8.0, long N0 = 1000) {
        return {Mode::Restricted, A, B, N0};
    }
};

// Endpoint-resolved partition function profile Z_M(y) = Z_{2M}(2y),
// stored rescaled so that max_y Z = 1; true log Z_{2M}(2y) = log z[y] + log_scale.
struct Profile {
    long M{0};
    long y_lo{0}, y_hi{0};
    std::vector<double> z;  // scaled values, z[i] corresponds to y = y_lo + i
    double log_scale{0.0};

    static Profile initial();
    double value(long y) const {
        return (y >= y_lo && y <= y_hi) ? z[y - y_lo] : 0.0;
    }
    double log_z(long y) const;       // log z(y), -inf for zero entries
    double log_z_total(long y) const; // log z(y) + log_scale
};

// one transfer step: consumes the charge pair (w1, w2) = (omega_{2M+1}, omega_{2M+2})
void evolve(Profile& prof, double w1, double w2, const Params& par, const Window& win);

double pinned_logZ(const Environment& env, const Params& par, long N, const Window& win);
double free_logZ(const Environment& env, const Params& par, long N, const Window& win);
double annealed_logZ(const ChargeLaw& law, const Params& par, long N);

// normalized endpoint law; returns (x, P(S_N = x)) for x = 2y over the window
std::vector<std::pair<long, double>> endpoint_distribution(const Environment& env,
                                                           const Params& par, long N,
                                                           const Window& win);

// independent O(N^2) last-return oracle for log Z_{N}(0)
double excursion_oracle_logZ0(const Environment& env, const Params& par, long N,
                              long cap = 5000);

// evolve to half-size M_max, calling cb(profile) after every step
void evolve_trace(const Environment& env, const Params& par, long M_max, const Window& win,
                  const std::function<void(const Profile&)>& cb);

} // namespace copoly
