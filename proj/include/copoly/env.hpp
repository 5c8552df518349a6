#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace copoly {

enum class ChargeKind { BinarySymmetric, StandardGaussian, FiniteSupport };

struct ChargeLaw {
    ChargeKind kind{ChargeKind::BinarySymmetric};
    std::vector<double> values;  // finite support only
    std::vector<double> probs;

    static ChargeLaw binary() { return {ChargeKind::BinarySymmetric, {}, {}}; }
    static ChargeLaw gaussian() { return {ChargeKind::StandardGaussian, {}, {}}; }
    // centered, and scaled to unit variance unless normalize_variance = false
    static ChargeLaw finite(std::vector<double> values, std::vector<double> probs,
                            bool normalize_variance = true);

    bool bounded() const { return kind != ChargeKind::StandardGaussian; }
    double min_support() const;
    double max_support() const;

    double mgf(double a) const;       // M(a) = E exp(a w)
    double log_mgf(double a) const;
    double log_mgf_prime(double a) const;  // (log M)'(a), strictly increasing
};

// h^{(m)}(lambda) = log M(-2 m lambda) / (2 m lambda)
double h_m(const ChargeLaw& law, double m, double lam);

// Cramer functional  Sigma(q) = sup_a { a q - log M(a) }
double cramer(const ChargeLaw& law, double q);

enum class Direction { Forward, Backward };

// Reproducible charge sequence: either explicit values or derived from
// (law, seed, stream) with a counter RNG, so that charge(n) is a pure
// function of the key and the index.
struct Environment {
    ChargeLaw law;
    std::uint64_t seed{0};
    std::uint64_t stream{0};
    Direction direction{Direction::Forward};
    std::vector<double> explicit_charges;
    bool is_explicit{false};

    static Environment seeded(ChargeLaw law, std::uint64_t seed, std::uint64_t stream = 0,
                              Direction dir = Direction::Forward);
    static Environment explicit_seq(std::vector<double> charges, Direction dir = Direction::Forward);

    Environment with_stream(std::uint64_t s) const;
    Environment reversed() const;

    // charge at 1-based index n; for Backward the sequence is reflected
    // within [1, range_end]: (w^r)_n = w_{range_end + 1 - n}
    double charge(long n, long range_end) const;
    std::vector<double> generate(long a, long b) const;
};

// h_sat = max_{n <= N/2} ( -(w_{2n-1} + w_{2n}) / 2 )
double h_sat(std::span<const double> charges, long N);
double h_sat(const Environment& env, long N);

// T-periodic charge quadruple of the general periodic model
struct PeriodicCharges {
    int T{1};
    std::vector<double> w_plus, w_minus, w0, w0_tilde;  // indexed by residue class n mod T
};

} // namespace copoly
