#include "copoly/cocycle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace copoly {

namespace {
long ipow(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}
constexpr long kTupleCap = 1000000;
} // namespace

CocycleSpec CocycleSpec::make(int gamma, std::vector<double> nu, int k, std::vector<double> F) {
    if (gamma < 2 || gamma > 16) throw std::invalid_argument("cocycle: |Gamma| must be in [2,16]");
    if (k < 0) throw std::invalid_argument("cocycle: order k must be >= 0");
    if ((int)nu.size() != gamma) throw std::invalid_argument("cocycle: nu size mismatch");
    double s = 0.0;
    for (double p : nu) {
        if (!(p > 0.0)) throw std::invalid_argument("cocycle: nu must be strictly positive");
        s += p;
    }
    for (double& p : nu) p /= s;
    const long m = ipow(gamma, k + 1);
    if (m > kTupleCap) throw std::invalid_argument("cocycle: alphabet too large for order k");
    if ((long)F.size() != m) throw std::invalid_argument("cocycle: F table size mismatch");

    // the theorem assumes E F = 0; non-centered tables are rejected
    double mean = 0.0;
    for (long idx = 0; idx < m; ++idx) {
        double w = 1.0;
        long rest = idx;
        for (int pos = k; pos >= 0; --pos) {
            w *= nu[rest % gamma];
            rest /= gamma;
        }
        mean += w * F[idx];
    }
    if (std::fabs(mean) > 1e-12)
        throw std::invalid_argument("cocycle: F is not centered (|E F| = " + std::to_string(mean) + ")");

    CocycleSpec spec;
    spec.gamma = gamma;
    spec.nu = std::move(nu);
    spec.k = k;
    spec.F = std::move(F);
    return spec;
}

long CocycleSpec::tuple_count() const { return ipow(gamma, k + 1); }

long CocycleSpec::tuple_index(const std::vector<int>& t) const {
    long idx = 0;
    for (int v : t) idx = idx * gamma + v;
    return idx;
}

double CocycleSpec::F_at(const std::vector<int>& t) const { return F[tuple_index(t)]; }

std::vector<double> annealed_matrix(const CocycleSpec& spec, double beta) {
    const long m = spec.tuple_count();
    const long gk = m / spec.gamma;  // gamma^k
    std::vector<double> A(m * m, 0.0);
    for (long a = 0; a < m; ++a) {
        const long suffix = a % gk;
        for (int j = 0; j < spec.gamma; ++j) {
            const long c = suffix * spec.gamma + j;
            A[a * m + c] = std::exp(beta * spec.F[c]) * spec.nu[j];
        }
    }
    return A;
}

namespace {

// Perron-Frobenius eigenvalue of A_beta using the de Bruijn structure:
// (A v)[a] depends on a only through its suffix, so one pass costs O(m g).
double pf_eigenvalue(const CocycleSpec& spec, double beta) {
    const long m = spec.tuple_count();
    const long gk = m / spec.gamma;
    std::vector<double> w(m);
    for (long c = 0; c < m; ++c)
        w[c] = std::exp(beta * spec.F[c]) * spec.nu[c % spec.gamma];

    std::vector<double> v(m, 1.0), nv(m);
    double lam = 1.0;
    for (int it = 0; it < 100000; ++it) {
        // row value by suffix class
        std::vector<double> by_suffix(gk, 0.0);
        for (long suf = 0; suf < gk; ++suf) {
            double s = 0.0;
            for (int j = 0; j < spec.gamma; ++j) {
                const long c = suf * spec.gamma + j;
                s += w[c] * v[c];
            }
            by_suffix[suf] = s;
        }
        double norm = 0.0;
        for (long a = 0; a < m; ++a) {
            nv[a] = by_suffix[a % gk];
            norm += nv[a];
        }
        for (long a = 0; a < m; ++a) nv[a] /= norm;
        const double new_lam = norm / (double)1.0;
        // v was normalized to sum 1, so norm is the Rayleigh-type estimate
        double diff = 0.0;
        for (long a = 0; a < m; ++a) diff = std::max(diff, std::fabs(nv[a] - v[a]));
        v.swap(nv);
        if (std::fabs(new_lam - lam) <= 1e-15 * std::max(1.0, std::fabs(new_lam)) && diff < 1e-14)
            return new_lam;
        lam = new_lam;
    }
    return lam;
}

} // namespace

double cocycle_free_energy(const CocycleSpec& spec, double beta) {
    return std::log(pf_eigenvalue(spec, beta));
}

double partition(const CocycleSpec& spec, double beta, long N) {
    if (N < 1) throw std::invalid_argument("partition: N must be >= 1");
    const long m = spec.tuple_count();
    if (m > 4096) throw std::invalid_argument("partition: matrix too large");
    const std::vector<double> A = annealed_matrix(spec, beta);
    std::vector<double> P = A, tmp(m * m);
    for (long step = 1; step < N; ++step) {
        for (long i = 0; i < m; ++i) {
            for (long j = 0; j < m; ++j) {
                double s = 0.0;
                for (long l = 0; l < m; ++l) s += P[i * m + l] * A[l * m + j];
                tmp[i * m + j] = s;
            }
        }
        P.swap(tmp);
    }
    double tr = 0.0;
    for (long i = 0; i < m; ++i) tr += P[i * m + i];
    return tr;
}

CoboundaryResult is_coboundary(const CocycleSpec& spec) {
    const int g = spec.gamma;
    const int k = spec.k;
    CoboundaryResult res;

    if (k == 0) {
        double worst = 0.0;
        int arg = 0;
        for (int a = 0; a < g; ++a)
            if (std::fabs(spec.F[a]) > worst) {
                worst = std::fabs(spec.F[a]);
                arg = a;
            }
        if (worst <= 1e-10) {
            res.yes = true;
            return res;
        }
        res.yes = false;
        res.witness = {arg};
        res.witness_sum = spec.F[arg];
        return res;
    }

    const long gk = ipow(g, k);
    // constructive G from the cyclic-sum identities, anchored at the tuple (0,...,0)
    std::vector<double> G(gk, 0.0);
    std::vector<int> t(k + 1);
    for (long z = 0; z < gk; ++z) {
        // zeta = digits of z
        std::vector<int> zeta(k);
        long rest = z;
        for (int i = k - 1; i >= 0; --i) {
            zeta[i] = (int)(rest % g);
            rest /= g;
        }
        double s = 0.0;
        for (int i = 1; i <= k; ++i) {
            // F(zeta_i, ..., zeta_k, 0, ..., 0) with i zeros
            int pos = 0;
            for (int j = i - 1; j < k; ++j) t[pos++] = zeta[j];
            for (int j = 0; j < i; ++j) t[pos++] = 0;
            s += spec.F_at(t);
        }
        G[z] = -s;
    }

    // verify F(a) = G(tail) - G(head) on every tuple
    const long m = spec.tuple_count();
    double worst = 0.0;
    for (long idx = 0; idx < m; ++idx) {
        const long head = idx / g;        // (a_1..a_k)
        const long tail = idx % gk;       // (a_2..a_{k+1})
        const double r = spec.F[idx] - (G[tail] - G[head]);
        worst = std::max(worst, std::fabs(r));
    }
    if (worst <= 1e-10) {
        res.yes = true;
        res.G = std::move(G);
        return res;
    }

    // non-coboundary: find the cyclic tuple (length 2k or 2k+1) with the
    // largest cyclic sum; the combinatorial lemma guarantees one is nonzero
    res.yes = false;
    double best = 0.0;
    std::vector<int> best_tuple;
    for (int len : {2 * k, 2 * k + 1}) {
        const long count = ipow(g, len);
        if (count > kTupleCap) continue;
        std::vector<int> eta(len);
        for (long code = 0; code < count; ++code) {
            long rest = code;
            for (int i = len - 1; i >= 0; --i) {
                eta[i] = (int)(rest % g);
                rest /= g;
            }
            double s = 0.0;
            for (int i = 0; i < len; ++i) {
                for (int j = 0; j <= k; ++j) t[j] = eta[(i + j) % len];
                s += spec.F_at(t);
            }
            if (std::fabs(s) > std::fabs(best)) {
                best = s;
                best_tuple = eta;
            }
        }
        if (std::fabs(best) > 1e-10) break;
    }
    res.witness = best_tuple;
    res.witness_sum = best;
    return res;
}

} // namespace copoly
