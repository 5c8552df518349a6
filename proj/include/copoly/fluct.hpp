#pragma once

#include "copoly/walk.hpp"

#include <vector>

namespace copoly {

// sup_x | (sqrt(n)/2) P(S_n = x | C_n) - phi+(x / sqrt(n)) | for the simple walk
double conditioned_llt_error(long n);

// max over n <= n_max, x of | u(n,x) - (x/n) P(S_n = x) |, simple walk
double ballot_check(long n_max);

struct UniformityBin {
    double x_over_sqrt_n;
    double error;
    double mass;
};

// LLT error binned over x/sqrt(n) in {0.1, ..., 3.0}
std::vector<UniformityBin> uniformity_report(long n);

} // namespace copoly
