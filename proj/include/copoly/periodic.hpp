#pragma once

#include "copoly/env.hpp"
#include "copoly/walk.hpp"

#include <vector>

namespace copoly {

// General T-periodic model over the {-1,0,+1} walk, reduced so that
// w_plus == 0; Sigma_{a,b} = v_b - v_a.
struct PeriodicModel {
    PeriodicCharges ch;  // reduced charges, by residue class (w[r] = w_n for n = r mod T)
    WalkSpec walk;
    double h_w{0.0};
    std::vector<double> v;

    static PeriodicModel make(const PeriodicCharges& raw, double p);

    int T() const { return ch.T; }
    double Sigma(int a, int b) const { return v[b] - v[a]; }
    // integrated excursion Hamiltonian; 0 when ell is not in the class b - a
    double phi(int a, int b, long ell) const;
    // same without the interface terms (free-endpoint tail weight)
    double phi_tilde(int a, int b, long ell) const;
};

// charges given in sequence order w_1..w_T are stored by residue class
PeriodicCharges charges_from_sequences(std::vector<double> w_plus, std::vector<double> w_minus,
                                       std::vector<double> w0, std::vector<double> w0_tilde);

// copolymer H = lam * sum (w_n + h) sign(S_n) over a centered T-periodic base sequence
PeriodicModel copolymer_model(const std::vector<double>& omega_seq, double lam, double h, double p);

PeriodicModel pinning_model(const std::vector<double>& rewards_seq, double p);

// Truncated excursion kernel M_{a,b}(x) with x^{ -3/2 } tail data.
struct Kernel {
    PeriodicModel model;
    long X_cut{0};
    std::vector<double> K;    // first-return law of the walk, K[x], x <= X_cut
    double cK{0.0}, aK{0.0};  // K(x) ~ cK x^{-3/2} + aK x^{-5/2}
    std::vector<double> Mx;   // Mx[(x-1)*T + a] = M_{a,(a+x)%T}(x)
    std::vector<double> B;    // T x T, tail-completed column sums
    std::vector<double> L;    // T x T tail coefficients of M
    std::vector<double> Ltil; // T x T tail coefficients of the free-endpoint weight
    double tail_bound{0.0};   // estimated truncation residual carried into B

    int T() const { return model.T(); }
    double Mval(long x, int a) const { return Mx[(x - 1) * T() + a]; }
    // analytic tail of sum_{x > X_cut, [x]=r} M_{a,a+r}(x) e^{-damp x}
    double tail_entry(int a, int r, double damp) const;
    // B(b) = sum_x M(x) e^{-bx}, tail completed
    std::vector<double> B_damped(double damp) const;
};

Kernel build_kernel(const PeriodicModel& model, long X_cut, const ReturnLaw* shared_K = nullptr);

struct PFData {
    double eigval{0.0};
    std::vector<double> zeta, xi;  // left / right, sum_a zeta_a xi_a = 1
    double residual{0.0};
};

// Perron-Frobenius data of a nonnegative irreducible T x T matrix
PFData pf(const std::vector<double>& mat, int T);

struct FreeEnergyResult {
    double F{0.0};
    double mu{0.0};
    double mu_fd{0.0};  // finite-difference cross-check of mu
    PFData pfF;         // eigendata of B damped at F
};

FreeEnergyResult free_energy(const PeriodicModel& model, const Kernel& kernel);

enum class Regime { Localized, StrictlyDeloc, Critical };

struct RegimeReport {
    double delta{0.0};
    Regime regime{Regime::Critical};
    double F{0.0}, mu{0.0};
    std::vector<double> constants;  // C(eta) for eta = 0..T-1
    bool pathological{false};
    PFData pfB;
};

RegimeReport classify(const PeriodicModel& model, const Kernel& kernel, double tol = 1e-9);

double asymptotic_constant(const PeriodicModel& model, const Kernel& kernel, int eta,
                           double tol = 1e-9);

// Z_{a,[a+x]}(x) e^{-damping x} for x = 0..N_max and every starting class a
std::vector<std::vector<double>> exact_partition(const Kernel& kernel, long N_max,
                                                 double damping = 0.0);

struct SemiMarkovKernel {
    int T{1};
    long X_cut{0};
    std::vector<double> G;            // G[(x-1)*T + a] = Gamma_{a,(a+x)%T}(x)
    std::vector<double> escape;       // escape mass per a (strictly delocalized), else empty
    std::vector<double> norm_defect;  // per a: |row sum (tail completed) - 1|
};

SemiMarkovKernel limit_kernel_loc(const Kernel& kernel, const FreeEnergyResult& fe);
SemiMarkovKernel limit_kernel_crit(const Kernel& kernel);
// a = constrained ('c') when constrained = true, else free ('f')
SemiMarkovKernel limit_kernel_del(const Kernel& kernel, int eta, bool constrained);

struct SignParameters {
    double p_eq{0.0};                // critical, excursion sign bias
    std::vector<double> q_eq;        // per eta
    std::vector<double> p_del_c;     // per eta
    std::vector<double> p_del_f;     // per eta
};

SignParameters sign_parameters(const PeriodicModel& model, const Kernel& kernel);

// sign law of a finite excursion of span z from class a to class b
double rho_plus(const PeriodicModel& model, long z, int a, int b);

double c_beta(const PeriodicModel& model, const Kernel& kernel, int beta);

// h_c(lam) for the copolymer family, solving delta(lam, h) = 1 in h
double critical_h_periodic(const std::vector<double>& omega_seq, double p, double lam,
                           long X_cut, double tol = 1e-10, const ReturnLaw* shared_K = nullptr);

} // namespace copoly
