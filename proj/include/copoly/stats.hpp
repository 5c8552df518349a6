#pragma once

#include "copoly/env.hpp"
#include "copoly/transfer.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace copoly {

struct TestReport {
    double lam{0.0}, h{0.0};
    long S{0};  // number of charge variables (= polymer size, even)
    long n{0};  // sample count
    double u_hat{0.0};
    double p_value{1.0};
    enum class Decision { RejectH0_Localized, Inconclusive } decision{Decision::Inconclusive};
    std::uint64_t master_seed{0};
    bool penalty_factor_4{false};  // bounded non-binary laws get the weaker constant
    std::vector<double> samples;
};

// p = exp(-u^2 n / (16 lam^2 S)), or with 64 in place of 16 under the penalty
double concentration_pvalue(double u_hat, long n, long S, double lam, bool penalty_factor_4 = false);

// Monte Carlo test of H0: E log Z_{S,w}(0) <= 0, rejected when u_hat > 0.
TestReport localization_test(const ChargeLaw& law, double lam, double h, long S, long n,
                             std::uint64_t master_seed, const Window& win, int threads = 0);

// mirror test of H0': E log Z_{S,w}(0) >= 0, rejected when u_hat < 0
TestReport delocalization_side_test(const ChargeLaw& law, double lam, double h, long S, long n,
                                    std::uint64_t master_seed, const Window& win, int threads = 0);

// distribution-free confidence interval for the median from order statistics
std::pair<double, double> median_ci(std::vector<double> sample, double level = 0.95);

// E log( 1/2 + 1/2 exp(-2 lam (w1 + w2 + 2h)) ), the N=1 localization criterion
double small_N_criterion(const ChargeLaw& law, double lam, double h);

} // namespace copoly
