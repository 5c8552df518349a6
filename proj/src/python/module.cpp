#include "copoly/cocycle.hpp"
#include "copoly/deloc.hpp"
#include "copoly/env.hpp"
#include "copoly/fluct.hpp"
#include "copoly/periodic.hpp"
#include "copoly/stats.hpp"
#include "copoly/transfer.hpp"
#include "copoly/walk.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace copoly;

namespace {

ChargeLaw law_from_name(const std::string& name) {
    if (name == "binary") return ChargeLaw::binary();
    if (name == "gaussian") return ChargeLaw::gaussian();
    throw std::invalid_argument("law must be 'binary' or 'gaussian'");
}

Environment env_from_args(const std::string& law, std::uint64_t seed, std::uint64_t stream) {
    return Environment::seeded(law_from_name(law), seed, stream);
}

Window window_from_name(const std::string& mode) {
    if (mode == "full") return Window::full();
    if (mode == "restricted") return Window::restricted();
    throw std::invalid_argument("window must be 'full' or 'restricted'");
}

} // namespace

PYBIND11_MODULE(_copoly, m) {
    m.doc() = "Partition functions, phase-diagram bounds and localization tests "
              "for inhomogeneous polymer models";

    // walk
    m.def(
        "return_law",
        [](bool simple, double p, long n_max) {
            ReturnLaw rl = return_law(simple ? WalkSpec::simple() : WalkSpec::triple(p), n_max);
            return py::make_tuple(rl.k, rl.c_k_hat);
        },
        py::arg("simple") = true, py::arg("p") = 0.3, py::arg("n_max") = 1000);
    m.def(
        "endpoint_law",
        [](bool simple, double p, long n) {
            return endpoint_law(simple ? WalkSpec::simple() : WalkSpec::triple(p), n);
        },
        py::arg("simple") = true, py::arg("p") = 0.3, py::arg("n") = 10);
    m.def(
        "stay_positive_law",
        [](long n) {
            StayPositiveLaw l = stay_positive_law(WalkSpec::simple(), n);
            return py::make_tuple(l.prob, l.mass);
        },
        py::arg("n"));

    // env
    m.def(
        "mgf", [](const std::string& law, double a) { return law_from_name(law).mgf(a); },
        py::arg("law"), py::arg("a"));
    m.def(
        "h_m", [](const std::string& law, double mm, double lam) {
            return h_m(law_from_name(law), mm, lam);
        },
        py::arg("law"), py::arg("m"), py::arg("lam"));
    m.def(
        "cramer", [](const std::string& law, double q) { return cramer(law_from_name(law), q); },
        py::arg("law"), py::arg("q"));
    m.def(
        "generate",
        [](const std::string& law, std::uint64_t seed, long a, long b) {
            return env_from_args(law, seed, 0).generate(a, b);
        },
        py::arg("law"), py::arg("seed"), py::arg("a"), py::arg("b"));

    // transfer
    m.def(
        "pinned_logZ",
        [](const std::string& law, std::uint64_t seed, double lam, double h, long N,
           const std::string& window) {
            return pinned_logZ(env_from_args(law, seed, 0), Params{lam, h}, N,
                               window_from_name(window));
        },
        py::arg("law"), py::arg("seed"), py::arg("lam"), py::arg("h"), py::arg("N"),
        py::arg("window") = "full");
    m.def(
        "pinned_logZ_explicit",
        [](const std::vector<double>& charges, double lam, double h, long N,
           const std::string& window) {
            return pinned_logZ(Environment::explicit_seq(charges), Params{lam, h}, N,
                               window_from_name(window));
        },
        py::arg("charges"), py::arg("lam"), py::arg("h"), py::arg("N"),
        py::arg("window") = "full");
    m.def(
        "free_logZ",
        [](const std::string& law, std::uint64_t seed, double lam, double h, long N,
           const std::string& window) {
            return free_logZ(env_from_args(law, seed, 0), Params{lam, h}, N,
                             window_from_name(window));
        },
        py::arg("law"), py::arg("seed"), py::arg("lam"), py::arg("h"), py::arg("N"),
        py::arg("window") = "full");
    m.def(
        "annealed_logZ",
        [](const std::string& law, double lam, double h, long N) {
            return annealed_logZ(law_from_name(law), Params{lam, h}, N);
        },
        py::arg("law"), py::arg("lam"), py::arg("h"), py::arg("N"));
    m.def(
        "excursion_oracle_logZ0",
        [](const std::string& law, std::uint64_t seed, double lam, double h, long N) {
            return excursion_oracle_logZ0(env_from_args(law, seed, 0), Params{lam, h}, N);
        },
        py::arg("law"), py::arg("seed"), py::arg("lam"), py::arg("h"), py::arg("N"));
    m.def(
        "endpoint_distribution",
        [](const std::string& law, std::uint64_t seed, double lam, double h, long N,
           const std::string& window) {
            return endpoint_distribution(env_from_args(law, seed, 0), Params{lam, h}, N,
                                         window_from_name(window));
        },
        py::arg("law"), py::arg("seed"), py::arg("lam"), py::arg("h"), py::arg("N"),
        py::arg("window") = "full");

    // stats
    m.def("concentration_pvalue", &concentration_pvalue, py::arg("u_hat"), py::arg("n"),
          py::arg("S"), py::arg("lam"), py::arg("penalty_factor_4") = false);
    m.def(
        "localization_test",
        [](const std::string& law, double lam, double h, long S, long n, std::uint64_t seed,
           const std::string& window) {
            TestReport r = localization_test(law_from_name(law), lam, h, S, n, seed,
                                             window_from_name(window));
            py::dict d;
            d["u_hat"] = r.u_hat;
            d["p_value"] = r.p_value;
            d["localized"] = r.decision == TestReport::Decision::RejectH0_Localized;
            return d;
        },
        py::arg("law"), py::arg("lam"), py::arg("h"), py::arg("S"), py::arg("n"),
        py::arg("seed"), py::arg("window") = "restricted");
    m.def(
        "median_ci",
        [](std::vector<double> sample, double level) { return median_ci(sample, level); },
        py::arg("sample"), py::arg("level") = 0.95);
    m.def(
        "small_N_criterion",
        [](const std::string& law, double lam, double h) {
            return small_N_criterion(law_from_name(law), lam, h);
        },
        py::arg("law"), py::arg("lam"), py::arg("h"));

    // deloc
    m.def(
        "meander_distance",
        [](const std::string& law, std::uint64_t seed, double lam, double h, long twoN,
           const std::string& window) {
            return meander_distance(env_from_args(law, seed, 0), Params{lam, h}, twoN,
                                    window_from_name(window));
        },
        py::arg("law"), py::arg("seed"), py::arg("lam"), py::arg("h"), py::arg("twoN"),
        py::arg("window") = "restricted");
    m.def(
        "critical_h_estimate",
        [](const std::string& law, std::uint64_t seed, double lam, long twoN, double tol,
           const std::string& window) {
            CriticalHResult r = critical_h_estimate(env_from_args(law, seed, 0), lam, twoN, tol,
                                                    window_from_name(window));
            py::dict d;
            d["h_hat"] = r.h_hat;
            d["residual"] = r.residual;
            d["saturated"] = r.saturated_low || r.saturated_high;
            return d;
        },
        py::arg("law"), py::arg("seed"), py::arg("lam"), py::arg("twoN"),
        py::arg("tol") = 1e-8, py::arg("window") = "restricted");
    m.def(
        "fit_m",
        [](const std::string& law, double lam_star, double h_hat) {
            return fit_m(law_from_name(law), lam_star, h_hat);
        },
        py::arg("law"), py::arg("lam_star"), py::arg("h_hat"));

    // periodic
    m.def(
        "periodic_delta",
        [](const std::vector<double>& omega, double lam, double h, double p, long X_cut) {
            PeriodicModel mo = copolymer_model(omega, lam, h, p);
            Kernel k = build_kernel(mo, X_cut);
            return pf(k.B, mo.T()).eigval;
        },
        py::arg("omega"), py::arg("lam"), py::arg("h"), py::arg("p") = 0.3,
        py::arg("X_cut") = 2000);
    m.def(
        "pinning_delta",
        [](const std::vector<double>& rewards, double p, long X_cut) {
            PeriodicModel mo = pinning_model(rewards, p);
            Kernel k = build_kernel(mo, X_cut);
            return pf(k.B, mo.T()).eigval;
        },
        py::arg("rewards"), py::arg("p") = 0.3, py::arg("X_cut") = 10000);
    m.def(
        "periodic_free_energy",
        [](const std::vector<double>& omega, double lam, double h, double p, long X_cut) {
            PeriodicModel mo = copolymer_model(omega, lam, h, p);
            Kernel k = build_kernel(mo, X_cut);
            FreeEnergyResult fe = free_energy(mo, k);
            return py::make_tuple(fe.F, fe.mu);
        },
        py::arg("omega"), py::arg("lam"), py::arg("h"), py::arg("p") = 0.3,
        py::arg("X_cut") = 10000);
    m.def("critical_h_periodic",
          [](const std::vector<double>& omega, double p, double lam, long X_cut) {
              return critical_h_periodic(omega, p, lam, X_cut);
          },
          py::arg("omega"), py::arg("p"), py::arg("lam"), py::arg("X_cut") = 10000);

    // cocycle
    m.def(
        "cocycle_free_energy",
        [](int gamma, std::vector<double> nu, int k, std::vector<double> F, double beta) {
            return cocycle_free_energy(CocycleSpec::make(gamma, nu, k, F), beta);
        },
        py::arg("gamma"), py::arg("nu"), py::arg("k"), py::arg("F"), py::arg("beta"));
    m.def(
        "is_coboundary",
        [](int gamma, std::vector<double> nu, int k, std::vector<double> F) {
            CoboundaryResult r = is_coboundary(CocycleSpec::make(gamma, nu, k, F));
            py::dict d;
            d["coboundary"] = r.yes;
            d["witness"] = r.witness;
            d["witness_sum"] = r.witness_sum;
            return d;
        },
        py::arg("gamma"), py::arg("nu"), py::arg("k"), py::arg("F"));

    // fluct
    m.def("conditioned_llt_error", &conditioned_llt_error, py::arg("n"));
    m.def("ballot_check", &ballot_check, py::arg("n_max"));
}
