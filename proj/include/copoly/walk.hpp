#pragma once

#include <cstdint>
#include <vector>

namespace copoly {

enum class WalkKind { SimpleSymmetric, Triple };

struct WalkSpec {
    WalkKind kind{WalkKind::SimpleSymmetric};
    double p{0.5};       // P(step = +1) = P(step = -1); only < 1/2 for Triple
    double sigma2{1.0};  // variance of one step

    static WalkSpec simple() { return {WalkKind::SimpleSymmetric, 0.5, 1.0}; }
    static WalkSpec triple(double p);

    int period() const { return kind == WalkKind::SimpleSymmetric ? 2 : 1; }
    double p_up() const { return kind == WalkKind::SimpleSymmetric ? 0.5 : p; }
    double p_stay() const { return kind == WalkKind::SimpleSymmetric ? 0.0 : 1.0 - 2.0 * p; }
};

// K(n) = P(tau_1 = n), first return to the origin.
struct ReturnLaw {
    WalkSpec spec;
    std::vector<double> k;  // k[n] for n = 0..n_max, k[0] = 0
    double c_k_hat{0.0};    // extrapolated limit of n^{3/2} K(n)
    double a_k_hat{0.0};    // estimated 1/n correction: K(n) ~ c n^{-3/2} + a n^{-5/2}

    double K(long n) const { return (n >= 1 && n < (long)k.size()) ? k[n] : 0.0; }
    long n_max() const { return (long)k.size() - 1; }
    double mass_up_to(long n) const;
};

ReturnLaw return_law(const WalkSpec& spec, long n_max);

// law of S_n; result[x + n] = P(S_n = x) for x in [-n, n]
std::vector<double> endpoint_law(const WalkSpec& spec, long n);

// P(C_n) and the restricted endpoint masses; mass[x] = P(C_n, S_n = x) for x in [1, n]
struct StayPositiveLaw {
    long n;
    double prob;               // P(S_1 > 0, ..., S_n > 0)
    std::vector<double> mass;  // index x, x = 0..n (mass[0] = 0)
};

StayPositiveLaw stay_positive_law(const WalkSpec& spec, long n);

// u(n, x) = P(n is a strict ascending ladder epoch, S_n = x) = P(C_n, S_n = x)
double ladder_renewal_mass(const WalkSpec& spec, long n, long x);

} // namespace copoly
