#include "common.hpp"

#include "copoly/periodic.hpp"

namespace cli {

using namespace copoly;

static PeriodicModel model_from_json(const json& j) {
    if (!j.contains("model")) config_error("periodic config needs a \"model\" object");
    const auto& m = j["model"];
    const double p = m.value("p", 0.3);
    if (m.contains("omega")) {
        // copolymer shorthand: base charges plus (lam, h)
        return copolymer_model(m["omega"].get<std::vector<double>>(), m.value("lam", 1.0),
                               m.value("h", 0.0), p);
    }
    const int T = m.value("T", 0);
    auto arr = [&](const char* k) {
        if (!m.contains(k)) config_error(std::string("model missing ") + k);
        auto v = m[k].get<std::vector<double>>();
        if ((int)v.size() != T) config_error(std::string(k) + " must have length T");
        return v;
    };
    return PeriodicModel::make(
        charges_from_sequences(arr("w_plus"), arr("w_minus"), arr("w0"), arr("w0_tilde")), p);
}

static const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Localized: return "localized";
        case Regime::StrictlyDeloc: return "strictly-delocalized";
        case Regime::Critical: return "critical";
    }
    return "?";
}

int cmd_periodic(const Run& run) {
    const std::string action = run.config.value("action", std::string("delta"));
    const long X_cut = run.config.value("X_cut", (long)10000);

    json summary;
    if (action == "curve") {
        const auto& c = run.config;
        if (!c.contains("omega")) config_error("curve action needs \"omega\"");
        const auto omega = c["omega"].get<std::vector<double>>();
        const double p = c.value("p", 0.3);
        const auto lams = c.value("lams", std::vector<double>{0.01, 0.02, 0.05, 0.1});
        const double tol = c.value("tol", 1e-10);
        const ReturnLaw rl = return_law(WalkSpec::triple(p), X_cut);
        auto f = run.csv("curve.csv", "lam,h_c");
        for (double lam : lams) {
            std::cerr << "periodic curve: lam = " << lam << "\n";
            f << lam << "," << critical_h_periodic(omega, p, lam, X_cut, tol, &rl) << "\n";
        }
        summary["points"] = lams.size();
        run.finish(summary);
        return 0;
    }

    const PeriodicModel model = model_from_json(run.config);
    const Kernel kernel = build_kernel(model, X_cut);
    const RegimeReport rep = classify(model, kernel);
    summary["delta"] = rep.delta;
    summary["regime"] = regime_name(rep.regime);
    summary["pathological"] = rep.pathological;
    summary["h_w"] = model.h_w;
    summary["tail_bound"] = kernel.tail_bound;

    if (action == "delta") {
        // classification only
    } else if (action == "free-energy") {
        if (rep.regime != Regime::Localized) config_error("free-energy needs delta > 1");
        const FreeEnergyResult fe = free_energy(model, kernel);
        summary["F"] = fe.F;
        summary["mu"] = fe.mu;
        summary["mu_fd"] = fe.mu_fd;
    } else if (action == "constants") {
        auto f = run.csv("constants.csv", "eta,C");
        for (int eta = 0; eta < model.T(); ++eta) f << eta << "," << rep.constants[eta] << "\n";
        summary["F"] = rep.F;
    } else if (action == "kernels") {
        SemiMarkovKernel G;
        if (rep.regime == Regime::Localized) {
            G = limit_kernel_loc(kernel, free_energy(model, kernel));
        } else if (rep.regime == Regime::Critical) {
            G = limit_kernel_crit(kernel);
        } else {
            G = limit_kernel_del(kernel, run.config.value("eta", 0),
                                 run.config.value("constrained", true));
        }
        auto f = run.csv("kernel.csv", "x,alpha,Gamma");
        const long x_max = std::min<long>(kernel.X_cut, run.config.value("x_max", (long)1000));
        for (long x = 1; x <= x_max; ++x)
            for (int a = 0; a < G.T; ++a) f << x << "," << a << "," << G.G[(x - 1) * G.T + a] << "\n";
        for (int a = 0; a < G.T; ++a) {
            summary["norm_defect"].push_back(G.norm_defect[a]);
            if (!G.escape.empty()) summary["escape"].push_back(G.escape[a]);
        }
        const SignParameters sp = sign_parameters(model, kernel);
        summary["p_eq"] = sp.p_eq;
        summary["q_eq"] = sp.q_eq;
        summary["p_del_c"] = sp.p_del_c;
        summary["p_del_f"] = sp.p_del_f;
        if (rep.regime == Regime::Critical) {
            for (int b = 0; b < model.T(); ++b)
                summary["c_beta"].push_back(c_beta(model, kernel, b));
        }
    } else {
        config_error("action must be delta, free-energy, constants, kernels or curve");
    }
    run.finish(summary);
    return 0;
}

} // namespace cli
