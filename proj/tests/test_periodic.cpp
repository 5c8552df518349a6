#include "copoly/periodic.hpp"

#include "copoly/num.hpp"
#include "copoly/rng.hpp"

#include "doctest.h"

#ifdef HAVE_EIGEN
#include <Eigen/Eigenvalues>
#endif

#include <cmath>
#include <vector>

using namespace copoly;

namespace {

const long kXcut = 10000;

const ReturnLaw& shared_K03() {
    static ReturnLaw rl = return_law(WalkSpec::triple(0.3), kXcut);
    return rl;
}

Kernel pinning_kernel(double beta0, double p = 0.3, long X = kXcut) {
    PeriodicModel m = pinning_model({beta0}, p);
    return build_kernel(m, X, p == 0.3 ? &shared_K03() : nullptr);
}

// independent scalar oracle: solve sum_x K(x) e^{-F x} = e^{-beta0}
double scalar_pinning_F(double beta0, double p, long X) {
    ReturnLaw rl = return_law(p == 0.3 ? WalkSpec::triple(0.3) : WalkSpec::triple(p), X);
    auto phi = [&](double F) {
        double s = 0.0;
        for (long x = 1; x <= X; ++x) s += rl.k[x] * std::exp(-F * (double)x);
        s += rl.c_k_hat * num::lattice_tail(1.5, (double)(X + 1), 1.0, F) +
             rl.a_k_hat * num::lattice_tail(2.5, (double)(X + 1), 1.0, F);
        return s;
    };
    const double target = std::exp(-beta0);
    double lo = 0.0, hi = 1.0;
    while (phi(hi) > target) hi *= 2.0;
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (phi(mid) > target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-18) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("build_phi special cases") {
    PeriodicModel trivial = pinning_model({0.0, 0.0}, 0.3);
    CHECK(trivial.phi(0, 1, 3) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(trivial.phi(0, 1, 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(trivial.phi(0, 0, 3) == 0.0);  // wrong residue class

    PeriodicModel pin = pinning_model({0.7, 0.7}, 0.3);
    CHECK(pin.phi(0, 1, 5) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(pin.phi(1, 0, 1) == doctest::Approx(0.7).epsilon(1e-14));

    // h_w > 0: phi -> w0 - log 2 for long excursions
    PeriodicModel cop = copolymer_model({1.0, -1.0}, 0.5, 0.4, 0.3);
    CHECK(cop.h_w == doctest::Approx(2.0 * 0.5 * 0.4).epsilon(1e-13));
    CHECK(cop.phi(0, 0, 5000) == doctest::Approx(-std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("pf basics and hand values") {
    PFData one = pf({2.5}, 1);
    CHECK(one.eigval == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(one.zeta[0] * one.xi[0] == doctest::Approx(1.0).epsilon(1e-14));

    const double a = 0.7;
    PFData sym = pf({0.0, a, a, 0.0}, 2);
    CHECK(sym.eigval == doctest::Approx(a).epsilon(1e-12));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(sym.zeta[i] * sym.xi[j] == doctest::Approx(0.5).epsilon(1e-10));

    CHECK_THROWS(pf({1.0, 0.0, 0.0, 1.0}, 2));  // reducible
}

#ifdef HAVE_EIGEN
TEST_CASE("pf cross-validated against a direct eigensolver") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::vector<double> m(16);
        for (int i = 0; i < 16; ++i) m[i] = 0.05 + rng::uniform01(seed, 3, i);
        PFData d = pf(m, 4);
        CHECK(d.residual <= 1e-12);
        Eigen::MatrixXd em(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) em(i, j) = m[i * 4 + j];
        Eigen::EigenSolver<Eigen::MatrixXd> es(em);
        double rho = 0.0;
        for (int i = 0; i < 4; ++i) rho = std::max(rho, std::abs(es.eigenvalues()[i]));
        CHECK(d.eigval == doctest::Approx(rho).epsilon(1e-10));
    }
}
#endif

TEST_CASE("homogeneous pinning: delta closed form and tail quality") {
    Kernel k0 = pinning_kernel(0.0);
    const double delta0 = pf(k0.B, 1).eigval;
    CHECK(std::fabs(delta0 - 1.0) <= 1e-8);  // recurrent walk, completed mass 1

    const double beta0 = 0.35;
    Kernel kb = pinning_kernel(beta0);
    const double delta_b = pf(kb.B, 1).eigval;
    // scalar factorization delta(beta0) = e^{beta0} delta(0), exact
    CHECK(delta_b * std::exp(-beta0) == doctest::Approx(delta0).epsilon(1e-12));
    CHECK(std::fabs(delta_b - std::exp(beta0)) < 2e-8);
}

TEST_CASE("homogeneous pinning free energy vs scalar renewal bisection") {
    const double beta0 = 0.35;
    Kernel kb = pinning_kernel(beta0);
    FreeEnergyResult fe = free_energy(kb.model, kb);
    const double oracle = scalar_pinning_F(beta0, 0.3, kXcut);
    CHECK(std::fabs(fe.F - oracle) <= 1e-10);
    // mu: series vs centered finite difference
    CHECK(fe.mu == doctest::Approx(fe.mu_fd).epsilon(1e-6));

    // continuity at criticality
    Kernel k2 = pinning_kernel(1e-2);
    Kernel k3 = pinning_kernel(1e-3);
    const double F2 = free_energy(k2.model, k2).F;
    const double F3 = free_energy(k3.model, k3).F;
    CHECK(F3 > 0.0);
    CHECK(F3 < F2);
}

TEST_CASE("T=2 copolymer with zero-mean charges is localized") {
    for (double lt : {0.1, 0.5, 1.0}) {
        PeriodicModel m = copolymer_model({1.0, -1.0}, lt, 0.0, 0.3);
        Kernel ker = build_kernel(m, kXcut, &shared_K03());
        const double delta = pf(ker.B, 2).eigval;
        CHECK(delta > 1.0);
        RegimeReport rep = classify(m, ker);
        CHECK(rep.regime == Regime::Localized);
        CHECK_FALSE(rep.pathological);
    }
}

TEST_CASE("free energy bracket behavior on the T=2 copolymer") {
    PeriodicModel m = copolymer_model({1.0, -1.0}, 0.5, 0.0, 0.3);
    Kernel ker = build_kernel(m, kXcut, &shared_K03());
    FreeEnergyResult fe = free_energy(m, ker);
    CHECK(pf(ker.B_damped(0.0), 2).eigval > 1.0);
    CHECK(pf(ker.B_damped(fe.F), 2).eigval == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(pf(ker.B_damped(2.0 * fe.F), 2).eigval < 1.0);
    CHECK(fe.mu == doctest::Approx(fe.mu_fd).epsilon(1e-6));
}

TEST_CASE("delta and B entries are nonincreasing in h and damping") {
    double prev_delta = 1e300;
    std::vector<double> prev_B;
    for (double h = 0.0; h <= 0.41; h += 0.1) {
        PeriodicModel m = copolymer_model({1.0, -1.0}, 0.5, h, 0.3);
        Kernel ker = build_kernel(m, kXcut, &shared_K03());
        const double delta = pf(ker.B, 2).eigval;
        CHECK(delta < prev_delta);
        if (!prev_B.empty())
            for (int i = 0; i < 4; ++i) CHECK(ker.B[i] <= prev_B[i] + 1e-14);
        prev_B = ker.B;
        prev_delta = delta;
    }
    PeriodicModel m = copolymer_model({1.0, -1.0}, 0.5, 0.1, 0.3);
    Kernel ker = build_kernel(m, kXcut, &shared_K03());
    CHECK(pf(ker.B_damped(0.05), 2).eigval < pf(ker.B, 2).eigval);
}

TEST_CASE("exact partition: renewal identities and scalar cross-check") {
    Kernel kb = pinning_kernel(0.4, 0.3, 5000);
    auto Z = exact_partition(kb, 60);
    CHECK(Z[0][0] == 1.0);
    CHECK(Z[0][1] == doctest::Approx(kb.Mval(1, 0)).epsilon(1e-14));

    // independent scalar renewal sequence for the homogeneous case
    std::vector<double> z(61, 0.0);
    z[0] = 1.0;
    for (long x = 1; x <= 60; ++x) {
        double s = 0.0;
        for (long y = 1; y <= x; ++y) s += std::exp(0.4) * kb.K[y] * z[x - y];
        z[x] = s;
    }
    for (long x = 0; x <= 60; ++x) CHECK(Z[0][x] == doctest::Approx(z[x]).epsilon(1e-12));
}

TEST_CASE("asymptotic constants match the renewal-convolution oracle per regime") {
    // localized: T=2 copolymer
    {
        PeriodicModel m = copolymer_model({1.0, -1.0}, 0.5, 0.0, 0.3);
        Kernel ker = build_kernel(m, kXcut, &shared_K03());
        FreeEnergyResult fe = free_energy(m, ker);
        auto Z = exact_partition(ker, 4000, fe.F);
        const int eta = (int)(4000 % 2);
        const double c_pred = asymptotic_constant(m, ker, eta);
        CHECK(Z[0][4000] == doctest::Approx(c_pred).epsilon(0.02));
    }
    // critical: zero-reward pinning
    {
        Kernel k0 = pinning_kernel(0.0, 0.3, 6000);
        auto Z = exact_partition(k0, 5000);
        const double c_pred = asymptotic_constant(k0.model, k0, 0);
        const double r5000 = std::sqrt(5000.0) * Z[0][5000];
        const double r1000 = std::sqrt(1000.0) * Z[0][1000];
        CHECK(r5000 == doctest::Approx(c_pred).epsilon(0.05));
        CHECK(std::fabs(r5000 - c_pred) < std::fabs(r1000 - c_pred) + 1e-12);
    }
    // strictly delocalized: negative pinning
    {
        Kernel km = pinning_kernel(-0.5, 0.3, 6000);
        auto Z = exact_partition(km, 5000);
        const double c_pred = asymptotic_constant(km.model, km, 0);
        const double r5000 = std::pow(5000.0, 1.5) * Z[0][5000];
        const double r1000 = std::pow(1000.0, 1.5) * Z[0][1000];
        CHECK(r5000 == doctest::Approx(c_pred).epsilon(0.05));
        CHECK(std::fabs(r5000 - c_pred) < std::fabs(r1000 - c_pred) + 1e-12);
    }
}

TEST_CASE("limit kernels normalize across regimes") {
    // localized T=1
    {
        Kernel kb = pinning_kernel(0.4);
        FreeEnergyResult fe = free_energy(kb.model, kb);
        SemiMarkovKernel G = limit_kernel_loc(kb, fe);
        CHECK(G.norm_defect[0] <= 1e-10);
    }
    // critical: zero-reward pinning has Gamma= equal to K itself
    {
        Kernel k0 = pinning_kernel(0.0);
        SemiMarkovKernel G = limit_kernel_crit(k0);
        CHECK(G.norm_defect[0] <= 1e-6);
        for (long x = 1; x <= 50; ++x)
            CHECK(G.G[(x - 1)] == doctest::Approx(k0.K[x]).epsilon(1e-12));
    }
    // strictly delocalized: escape mass in (0,1), rows normalize
    {
        Kernel km = pinning_kernel(-0.5);
        for (bool constrained : {true, false}) {
            SemiMarkovKernel G = limit_kernel_del(km, 0, constrained);
            CHECK(G.escape[0] > 0.0);
            CHECK(G.escape[0] < 1.0);
            CHECK(G.norm_defect[0] <= 1e-6);
        }
    }
}

TEST_CASE("sign parameter special cases") {
    // h_w > 0: all equal to 1
    {
        PeriodicModel m = copolymer_model({1.0, -1.0}, 0.5, 0.3, 0.3);
        Kernel ker = build_kernel(m, kXcut, &shared_K03());
        SignParameters sp = sign_parameters(m, ker);
        CHECK(sp.p_eq == doctest::Approx(1.0).epsilon(1e-10));
        for (int eta = 0; eta < 2; ++eta) {
            CHECK(sp.q_eq[eta] == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(sp.p_del_c[eta] == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(sp.p_del_f[eta] == doctest::Approx(1.0).epsilon(1e-10));
        }
        CHECK(rho_plus(m, 5000, 0, 0) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // h_w = 0 and Sigma == 0: all equal to 1/2
    {
        PeriodicModel m = pinning_model({0.2, -0.1}, 0.3);
        Kernel ker = build_kernel(m, kXcut, &shared_K03());
        SignParameters sp = sign_parameters(m, ker);
        CHECK(sp.p_eq == doctest::Approx(0.5).epsilon(1e-10));
        for (int eta = 0; eta < 2; ++eta) {
            CHECK(sp.q_eq[eta] == doctest::Approx(0.5).epsilon(1e-10));
            CHECK(sp.p_del_c[eta] == doctest::Approx(0.5).epsilon(1e-10));
            CHECK(sp.p_del_f[eta] == doctest::Approx(0.5).epsilon(1e-10));
        }
        CHECK(rho_plus(m, 7, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    }
    // pathological fixture: copolymer plus strong negative pinning
    {
        std::vector<double> wp{0.5, -0.5}, wm{-0.5, 0.5}, w0{-2.0, -2.0}, wt{0.0, 0.0};
        PeriodicModel m = PeriodicModel::make(charges_from_sequences(wp, wm, w0, wt), 0.3);
        Kernel ker = build_kernel(m, kXcut, &shared_K03());
        RegimeReport rep = classify(m, ker);
        CHECK(rep.regime == Regime::StrictlyDeloc);
        CHECK(rep.pathological);
        SignParameters sp = sign_parameters(m, ker);
        for (int eta = 0; eta < 2; ++eta) {
            CHECK(sp.p_del_c[eta] >= 0.0);
            CHECK(sp.p_del_c[eta] <= 1.0);
            CHECK(sp.p_del_f[eta] >= 0.0);
            CHECK(sp.p_del_f[eta] <= 1.0);
        }
    }
}

TEST_CASE("c_beta identities at a critical T=2 pinning model") {
    // tune the second reward so that delta = 1
    const double b1 = 0.3;
    auto delta_of = [&](double b2) {
        PeriodicModel m = pinning_model({b1, b2}, 0.3);
        Kernel ker = build_kernel(m, kXcut, &shared_K03());
        return pf(ker.B, 2).eigval;
    };
    double lo = -3.0, hi = 0.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (delta_of(mid) < 1.0)
            lo = mid;
        else
            hi = mid;
    }
    const double b2 = 0.5 * (lo + hi);
    PeriodicModel m = pinning_model({b1, b2}, 0.3);
    Kernel ker = build_kernel(m, kXcut, &shared_K03());
    REQUIRE(std::fabs(pf(ker.B, 2).eigval - 1.0) < 1e-9);

    // trivial-model symmetry: c independent of beta for the zero-reward model
    Kernel k0 = pinning_kernel(0.0);
    CHECK(c_beta(k0.model, k0, 0) > 0.0);

    // algebraic identity between c_beta and the critical constant
    const PFData pb = pf(ker.B, 2);
    for (int eta = 0; eta < 2; ++eta) {
        const double c_eta = c_beta(m, ker, eta);
        const double lhs = asymptotic_constant(m, ker, eta);
        const double rhs =
            4.0 / (2.0 * M_PI) * pb.xi[0] * pb.zeta[eta] / (pb.zeta[eta] * pb.xi[eta] * c_eta);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }

    // appendix cross-check: x^{3/2} tail of q^{(beta)} approaches c_beta
    {
        const int beta = 0;
        const long Nq = 4000;
        SemiMarkovKernel G = limit_kernel_crit(ker);
        // V = sum_k (Gamma with the beta-column removed)^{*k}, row beta
        std::vector<std::vector<double>> V(2, std::vector<double>(Nq + 1, 0.0));
        // V[a][x] as a function of the START a; collapse over the de Bruijn path
        // recursion: V[a][0] = 1(a==beta ? 1 : 0)? -- V is started at beta
        // We need V^{(beta)}_{beta,gamma}(y): start at beta, avoid landing on beta.
        // Track vectors over the current class.
        std::vector<std::vector<double>> Vrow(2, std::vector<double>(Nq + 1, 0.0));
        Vrow[beta][0] = 1.0;
        for (long x = 1; x <= Nq; ++x) {
            for (int g = 0; g < 2; ++g) {
                // arrive in class g at time x without touching beta in between
                if (g == beta) {
                    Vrow[g][x] = 0.0;
                    continue;
                }
                double s = 0.0;
                for (long y = 1; y <= x; ++y) {
                    const int from = (int)((g - y) % 2 + 2) % 2;
                    const double gv = (y <= ker.X_cut) ? G.G[(y - 1) * 2 + from] : 0.0;
                    s += Vrow[from][x - y] * gv;
                }
                Vrow[g][x] = s;
            }
        }
        // q^{(beta)}(x) = sum_y sum_g V(y) Gamma_{g,beta}(x-y); x in beta-beta class = even
        const long x_probe = Nq;
        double q = 0.0;
        for (long y = 0; y < x_probe; ++y) {
            for (int g = 0; g < 2; ++g) {
                const long step = x_probe - y;
                if ((g + step) % 2 != (long)beta) continue;
                const double gv = (step >= 1 && step <= ker.X_cut) ? G.G[(step - 1) * 2 + g] : 0.0;
                if (gv == 0.0) continue;
                q += Vrow[g][y] * gv;
            }
        }
        // include the k=0 term: q(x) gets Gamma_{beta,beta}(x) directly
        const double c_emp = std::pow((double)x_probe, 1.5) * q;
        CHECK(c_emp == doctest::Approx(c_beta(m, ker, beta)).epsilon(0.05));
    }
}

TEST_CASE("critical curve: cubic small-lambda law and the strong-coupling limit") {
    const std::vector<double> omega{1.0, -1.0};
    const ReturnLaw& rk = shared_K03();

    const double h1 = critical_h_periodic(omega, 0.3, 0.01, kXcut, 1e-12, &rk);
    const double h2 = critical_h_periodic(omega, 0.3, 0.1, kXcut, 1e-12, &rk);
    const double slope = std::log(h2 / h1) / std::log(10.0);
    CHECK(slope > 2.85);
    CHECK(slope < 3.15);

    // strong coupling: h_c approaches max_n(-w_n) = 1 for the triple walk,
    // at speed O(1/lambda) (single-bond pinning at the favorable residue)
    const double h50 = critical_h_periodic(omega, 0.3, 50.0, kXcut, 1e-10, &rk);
    const double h100 = critical_h_periodic(omega, 0.3, 100.0, kXcut, 1e-10, &rk);
    CHECK(h50 > 0.85);
    CHECK(h50 < 1.0);
    CHECK(h100 > h50);
    CHECK(std::fabs(h100 - 1.0) < 0.06);

    CHECK_THROWS(critical_h_periodic({0.0, 0.0}, 0.3, 0.5, kXcut, 1e-10, &rk));
}

TEST_CASE("pathological set membership") {
    // delta <= 1 with h_w = 0 and nontrivial Sigma requires pinning to delocalize
    std::vector<double> wp{0.5, -0.5}, wm{-0.5, 0.5}, w0{-2.0, -2.0}, wt{0.0, 0.0};
    PeriodicModel m = PeriodicModel::make(charges_from_sequences(wp, wm, w0, wt), 0.3);
    Kernel ker = build_kernel(m, kXcut, &shared_K03());
    RegimeReport rep = classify(m, ker);
    CHECK(rep.pathological == (rep.delta <= 1.0 + 1e-9 && m.h_w == 0.0));

    PeriodicModel pin = pinning_model({-0.4}, 0.3);
    Kernel kp = build_kernel(pin, kXcut, &shared_K03());
    CHECK_FALSE(classify(pin, kp).pathological);  // Sigma == 0
}
