#pragma once

#include <vector>

namespace copoly {

// Local disorder function F : Gamma^{k+1} -> R, centered under nu^{(k+1)},
// with nu a strictly positive law on the finite alphabet Gamma.
struct CocycleSpec {
    int gamma{2};            // |Gamma|
    std::vector<double> nu;  // size gamma, strictly positive, sums to 1
    int k{0};
    std::vector<double> F;   // size gamma^{k+1}, row-major over tuples

    // validates sizes, nu > 0, and centering to 1e-14 (non-centered input rejected)
    static CocycleSpec make(int gamma, std::vector<double> nu, int k, std::vector<double> F);

    long tuple_count() const;                       // gamma^{k+1}
    long tuple_index(const std::vector<int>& t) const;
    double F_at(const std::vector<int>& t) const;
};

// transfer matrix A_beta of size gamma^{k+1} x gamma^{k+1}
std::vector<double> annealed_matrix(const CocycleSpec& spec, double beta);

// L^F(beta) = log of the Perron-Frobenius eigenvalue of A_beta
double cocycle_free_energy(const CocycleSpec& spec, double beta);

// Z_N(beta) = Tr[A_beta^N]
double partition(const CocycleSpec& spec, double beta, long N);

struct CoboundaryResult {
    bool yes{false};
    std::vector<double> G;        // gamma^k values when yes
    std::vector<int> witness;     // cyclic tuple with nonzero cyclic sum when no
    double witness_sum{0.0};
};

CoboundaryResult is_coboundary(const CocycleSpec& spec);

} // namespace copoly
