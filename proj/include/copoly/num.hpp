#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace copoly {
namespace num {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

inline double log_sum_exp(std::span<const double> xs) {
    double m = neg_inf;
    for (double x : xs)
        if (x > m) m = x;
    if (m == neg_inf) return neg_inf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

// logphi(t) = log((1 + e^{-2t})/2), stable both directions
inline double log_phi(double t) {
    if (t >= 0.0) return std::log1p(std::exp(-2.0 * t)) - std::log(2.0);
    return -2.0 * t + std::log1p(std::exp(2.0 * t)) - std::log(2.0);
}

// log((1 + e^{u})/2)
inline double log_half_one_plus_exp(double u) {
    if (u <= 0.0) return std::log1p(std::exp(u)) - std::log(2.0);
    return u + std::log1p(std::exp(-u)) - std::log(2.0);
}

// ---- lattice tail sums -------------------------------------------------
//
// S_s(a, h, b) = sum_{k>=0} (a + k h)^{-s} exp(-b (a + k h)),  s in {1/2, 3/2, 5/2}
//
// computed by Euler-Maclaurin against the closed-form integral
//   int_a^inf x^{-1/2} e^{-bx} dx = sqrt(pi/b) erfc(sqrt(ab))
//   int_a^inf x^{-3/2} e^{-bx} dx = 2 a^{-1/2} e^{-ba} - 2 sqrt(pi b) erfc(sqrt(ab))
//   int_a^inf x^{-5/2} e^{-bx} dx = (2/3) a^{-3/2} e^{-ba} - (2b/3) * I_{3/2}
// Accurate to ~1e-13 absolute for a >= 50.

inline double integral_half(double a, double b) {
    // s = 1/2; requires b > 0
    return std::sqrt(M_PI / b) * std::erfc(std::sqrt(a * b));
}

inline double integral_3half(double a, double b) {
    if (b <= 0.0) return 2.0 / std::sqrt(a);
    return 2.0 * std::exp(-b * a) / std::sqrt(a) - 2.0 * std::sqrt(M_PI * b) * std::erfc(std::sqrt(a * b));
}

inline double integral_5half(double a, double b) {
    if (b <= 0.0) return (2.0 / 3.0) * std::pow(a, -1.5);
    return (2.0 / 3.0) * std::pow(a, -1.5) * std::exp(-b * a) - (2.0 * b / 3.0) * integral_3half(a, b);
}

inline double lattice_tail(double s, double a, double h, double b) {
    // f(x) = x^{-s} e^{-bx}
    auto f = [&](double x) { return std::pow(x, -s) * std::exp(-b * x); };
    double integral;
    if (s == 0.5)
        integral = integral_half(a, b);
    else if (s == 1.5)
        integral = integral_3half(a, b);
    else
        integral = integral_5half(a, b);
    const double fa = f(a);
    const double fp = -(s / a + b) * fa;
    const double fppp = -(s * (s + 1) * (s + 2) / (a * a * a) + 3.0 * s * (s + 1) * b / (a * a) +
                          3.0 * s * b * b / a + b * b * b) * fa;
    return integral / h + 0.5 * fa - (h / 12.0) * fp + (h * h * h / 720.0) * fppp;
}

} // namespace num
} // namespace copoly
