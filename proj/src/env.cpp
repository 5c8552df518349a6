#include "copoly/env.hpp"

#include "copoly/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace copoly {

ChargeLaw ChargeLaw::finite(std::vector<double> values, std::vector<double> probs,
                            bool normalize_variance) {
    if (values.size() != probs.size() || values.empty())
        throw std::invalid_argument("finite law: values/probs size mismatch");
    double psum = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("finite law: negative probability");
        psum += p;
    }
    if (psum <= 0.0) throw std::invalid_argument("finite law: zero total mass");
    for (double& p : probs) p /= psum;
    double mean = 0.0;
    for (size_t i = 0; i < values.size(); ++i) mean += probs[i] * values[i];
    for (double& v : values) v -= mean;
    if (normalize_variance) {
        double var = 0.0;
        for (size_t i = 0; i < values.size(); ++i) var += probs[i] * values[i] * values[i];
        if (var <= 0.0) throw std::invalid_argument("finite law: degenerate (zero variance)");
        const double s = std::sqrt(var);
        for (double& v : values) v /= s;
    }
    return {ChargeKind::FiniteSupport, std::move(values), std::move(probs)};
}

double ChargeLaw::min_support() const {
    switch (kind) {
        case ChargeKind::BinarySymmetric: return -1.0;
        case ChargeKind::StandardGaussian: throw std::logic_error("unbounded law");
        case ChargeKind::FiniteSupport: return *std::min_element(values.begin(), values.end());
    }
    return 0.0;
}

double ChargeLaw::max_support() const {
    switch (kind) {
        case ChargeKind::BinarySymmetric: return 1.0;
        case ChargeKind::StandardGaussian: throw std::logic_error("unbounded law");
        case ChargeKind::FiniteSupport: return *std::max_element(values.begin(), values.end());
    }
    return 0.0;
}

double ChargeLaw::mgf(double a) const { return std::exp(log_mgf(a)); }

double ChargeLaw::log_mgf(double a) const {
    switch (kind) {
        case ChargeKind::BinarySymmetric: {
            // log cosh(a), stable for large |a|
            const double x = std::fabs(a);
            return x + std::log1p(std::exp(-2.0 * x)) - std::log(2.0);
        }
        case ChargeKind::StandardGaussian:
            return 0.5 * a * a;
        case ChargeKind::FiniteSupport: {
            double m = -1e308;
            for (size_t i = 0; i < values.size(); ++i) m = std::max(m, a * values[i]);
            double s = 0.0;
            for (size_t i = 0; i < values.size(); ++i)
                s += probs[i] * std::exp(a * values[i] - m);
            return m + std::log(s);
        }
    }
    return 0.0;
}

double ChargeLaw::log_mgf_prime(double a) const {
    switch (kind) {
        case ChargeKind::BinarySymmetric: return std::tanh(a);
        case ChargeKind::StandardGaussian: return a;
        case ChargeKind::FiniteSupport: {
            double m = -1e308;
            for (size_t i = 0; i < values.size(); ++i) m = std::max(m, a * values[i]);
            double s = 0.0, sv = 0.0;
            for (size_t i = 0; i < values.size(); ++i) {
                const double w = probs[i] * std::exp(a * values[i] - m);
                s += w;
                sv += w * values[i];
            }
            return sv / s;
        }
    }
    return 0.0;
}

double h_m(const ChargeLaw& law, double m, double lam) {
    if (!(lam > 0.0)) throw std::invalid_argument("h_m: lambda must be > 0");
    if (!(m > 0.0)) throw std::invalid_argument("h_m: m must be > 0");
    return law.log_mgf(-2.0 * m * lam) / (2.0 * m * lam);
}

double cramer(const ChargeLaw& law, double q) {
    if (law.kind == ChargeKind::StandardGaussian) return 0.5 * q * q;

    const double lo = law.min_support(), hi = law.max_support();
    if (q < lo || q > hi) throw std::domain_error("cramer: q outside the support hull");
    if (q == lo || q == hi) {
        // boundary: Sigma = -log P(w = boundary), +inf if that mass is 0
        double mass = 0.0;
        if (law.kind == ChargeKind::BinarySymmetric) {
            mass = 0.5;
        } else {
            for (size_t i = 0; i < law.values.size(); ++i)
                if (law.values[i] == (q == lo ? lo : hi)) mass += law.probs[i];
        }
        if (mass <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log(mass);
    }

    // solve (log M)'(a) = q; the derivative is strictly increasing
    double a_lo = -1.0, a_hi = 1.0;
    while (law.log_mgf_prime(a_lo) > q && a_lo > -750.0) a_lo *= 2.0;
    while (law.log_mgf_prime(a_hi) < q && a_hi < 750.0) a_hi *= 2.0;
    double a = 0.5 * (a_lo + a_hi);
    for (int it = 0; it < 200; ++it) {
        const double g = law.log_mgf_prime(a) - q;
        if (g > 0.0)
            a_hi = a;
        else
            a_lo = a;
        // Newton step with bisection safeguard
        double h = 1e-6 * std::max(1.0, std::fabs(a));
        const double gp = (law.log_mgf_prime(a + h) - law.log_mgf_prime(a - h)) / (2.0 * h);
        double a_next = (gp > 0.0) ? a - g / gp : 0.5 * (a_lo + a_hi);
        if (!(a_next > a_lo && a_next < a_hi)) a_next = 0.5 * (a_lo + a_hi);
        if (std::fabs(a_next - a) < 1e-12 * std::max(1.0, std::fabs(a))) {
            a = a_next;
            break;
        }
        a = a_next;
    }
    return a * q - law.log_mgf(a);
}

Environment Environment::seeded(ChargeLaw law, std::uint64_t seed, std::uint64_t stream,
                                Direction dir) {
    Environment e;
    e.law = std::move(law);
    e.seed = seed;
    e.stream = stream;
    e.direction = dir;
    return e;
}

Environment Environment::explicit_seq(std::vector<double> charges, Direction dir) {
    Environment e;
    e.explicit_charges = std::move(charges);
    e.is_explicit = true;
    e.direction = dir;
    return e;
}

Environment Environment::with_stream(std::uint64_t s) const {
    Environment e = *this;
    e.stream = s;
    return e;
}

Environment Environment::reversed() const {
    Environment e = *this;
    e.direction = (direction == Direction::Forward) ? Direction::Backward : Direction::Forward;
    return e;
}

double Environment::charge(long n, long range_end) const {
    long idx = n;
    if (direction == Direction::Backward) idx = range_end + 1 - n;
    if (is_explicit) {
        if (idx < 1 || idx > (long)explicit_charges.size())
            throw std::invalid_argument("explicit charge sequence too short");
        return explicit_charges[idx - 1];
    }
    switch (law.kind) {
        case ChargeKind::BinarySymmetric:
            return (rng::derive(seed, stream, (std::uint64_t)idx) & 1u) ? 1.0 : -1.0;
        case ChargeKind::StandardGaussian:
            return rng::normal(seed, stream, (std::uint64_t)idx);
        case ChargeKind::FiniteSupport: {
            const double u = rng::uniform01(seed, stream, (std::uint64_t)idx);
            double acc = 0.0;
            for (size_t i = 0; i < law.probs.size(); ++i) {
                acc += law.probs[i];
                if (u <= acc) return law.values[i];
            }
            return law.values.back();
        }
    }
    return 0.0;
}

std::vector<double> Environment::generate(long a, long b) const {
    if (a > b) throw std::invalid_argument("generate: empty range");
    std::vector<double> out;
    out.reserve(b - a + 1);
    for (long n = a; n <= b; ++n) out.push_back(charge(n, b));
    return out;
}

double h_sat(std::span<const double> charges, long N) {
    if (N % 2 != 0 || N < 2) throw std::invalid_argument("h_sat: N must be even and >= 2");
    if ((long)charges.size() < N) throw std::invalid_argument("h_sat: charge array too short");
    double best = -std::numeric_limits<double>::infinity();
    for (long n = 1; n <= N / 2; ++n)
        best = std::max(best, -(charges[2 * n - 2] + charges[2 * n - 1]) / 2.0);
    return best;
}

double h_sat(const Environment& env, long N) {
    std::vector<double> w = env.generate(1, N);
    return h_sat(std::span<const double>(w.data(), w.size()), N);
}

} // namespace copoly
