#include "copoly/periodic.hpp"

#include "copoly/num.hpp"

#include <cmath>
#include <stdexcept>

namespace copoly {

namespace {

// dense solve (I - B) X = RHS for small T
std::vector<double> solve_identity_minus(const std::vector<double>& B, int T,
                                         std::vector<double> rhs_cols, int ncols) {
    std::vector<double> A(T * T);
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < T; ++j) A[i * T + j] = (i == j ? 1.0 : 0.0) - B[i * T + j];
    // Gaussian elimination with partial pivoting; rhs_cols is T x ncols
    std::vector<int> piv(T);
    for (int i = 0; i < T; ++i) piv[i] = i;
    for (int c = 0; c < T; ++c) {
        int best = c;
        for (int r = c + 1; r < T; ++r)
            if (std::fabs(A[r * T + c]) > std::fabs(A[best * T + c])) best = r;
        if (best != c) {
            for (int j = 0; j < T; ++j) std::swap(A[c * T + j], A[best * T + j]);
            for (int j = 0; j < ncols; ++j) std::swap(rhs_cols[c * ncols + j], rhs_cols[best * ncols + j]);
        }
        const double d = A[c * T + c];
        if (std::fabs(d) < 1e-300) throw std::runtime_error("(I-B) is singular");
        for (int r = c + 1; r < T; ++r) {
            const double f = A[r * T + c] / d;
            if (f == 0.0) continue;
            for (int j = c; j < T; ++j) A[r * T + j] -= f * A[c * T + j];
            for (int j = 0; j < ncols; ++j) rhs_cols[r * ncols + j] -= f * rhs_cols[c * ncols + j];
        }
    }
    for (int c = T - 1; c >= 0; --c) {
        for (int j = 0; j < ncols; ++j) {
            double s = rhs_cols[c * ncols + j];
            for (int l = c + 1; l < T; ++l) s -= A[c * T + l] * rhs_cols[l * ncols + j];
            rhs_cols[c * ncols + j] = s / A[c * T + c];
        }
    }
    return rhs_cols;
}

std::vector<double> inverse_identity_minus(const std::vector<double>& B, int T) {
    std::vector<double> eye(T * T, 0.0);
    for (int i = 0; i < T; ++i) eye[i * T + i] = 1.0;
    return solve_identity_minus(B, T, eye, T);
}

} // namespace

PeriodicModel PeriodicModel::make(const PeriodicCharges& raw, double p) {
    const int T = raw.T;
    if (T < 1 || T > 64) throw std::invalid_argument("periodic model: T must be in [1,64]");
    auto check = [&](const std::vector<double>& w) {
        if ((int)w.size() != T) throw std::invalid_argument("periodic model: charge array size != T");
    };
    check(raw.w_plus);
    check(raw.w_minus);
    check(raw.w0);
    check(raw.w0_tilde);

    PeriodicModel m;
    m.walk = WalkSpec::triple(p);
    m.ch.T = T;
    m.ch.w_plus.assign(T, 0.0);
    m.ch.w_minus.resize(T);
    m.ch.w0 = raw.w0;
    m.ch.w0_tilde.resize(T);
    for (int r = 0; r < T; ++r) {
        m.ch.w_minus[r] = raw.w_minus[r] - raw.w_plus[r];
        m.ch.w0_tilde[r] = raw.w0_tilde[r] - raw.w_plus[r];
    }
    double s = 0.0;
    for (int r = 0; r < T; ++r) s += m.ch.w_minus[r];
    m.h_w = -s / (double)T;
    if (m.h_w < -1e-9)
        throw std::invalid_argument("periodic model: h_w < 0 after reduction (swap solvents first)");
    if (std::fabs(m.h_w) < 1e-14) m.h_w = 0.0;

    // v_a = sum_{n=1..a} (w_minus_n - w_plus_n) + a h_w, representative a in {0..T-1}
    m.v.assign(T, 0.0);
    double acc = 0.0;
    for (int a = 1; a < T; ++a) {
        acc += m.ch.w_minus[a % T] + m.h_w;
        m.v[a] = acc;
    }
    return m;
}

double PeriodicModel::phi(int a, int b, long ell) const {
    if (ell < 1) return 0.0;
    if ((a + ell) % T() != b % T()) return 0.0;
    if (ell == 1) return ch.w0[b] + ch.w0_tilde[b];
    return ch.w0[b] + num::log_half_one_plus_exp(-(double)ell * h_w + Sigma(a, b));
}

double PeriodicModel::phi_tilde(int a, int b, long ell) const {
    if (ell <= 1) return 0.0;
    if ((a + ell) % T() != b % T()) return 0.0;
    return num::log_half_one_plus_exp(-(double)ell * h_w + Sigma(a, b));
}

PeriodicCharges charges_from_sequences(std::vector<double> w_plus, std::vector<double> w_minus,
                                       std::vector<double> w0, std::vector<double> w0_tilde) {
    const int T = (int)w_plus.size();
    if ((int)w_minus.size() != T || (int)w0.size() != T || (int)w0_tilde.size() != T || T < 1)
        throw std::invalid_argument("charges_from_sequences: inconsistent lengths");
    PeriodicCharges ch;
    ch.T = T;
    ch.w_plus.assign(T, 0.0);
    ch.w_minus.assign(T, 0.0);
    ch.w0.assign(T, 0.0);
    ch.w0_tilde.assign(T, 0.0);
    for (int n = 1; n <= T; ++n) {
        const int r = n % T;
        ch.w_plus[r] = w_plus[n - 1];
        ch.w_minus[r] = w_minus[n - 1];
        ch.w0[r] = w0[n - 1];
        ch.w0_tilde[r] = w0_tilde[n - 1];
    }
    return ch;
}

PeriodicModel copolymer_model(const std::vector<double>& omega_seq, double lam, double h, double p) {
    const int T = (int)omega_seq.size();
    double mean = 0.0;
    for (double w : omega_seq) mean += w;
    if (std::fabs(mean) > 1e-12 * T)
        throw std::invalid_argument("copolymer_model: base charges must be centered");
    std::vector<double> wp(T), wm(T), z(T, 0.0);
    for (int n = 0; n < T; ++n) {
        wp[n] = lam * (omega_seq[n] + h);
        wm[n] = -lam * (omega_seq[n] + h);
    }
    return PeriodicModel::make(charges_from_sequences(wp, wm, z, z), p);
}

PeriodicModel pinning_model(const std::vector<double>& rewards_seq, double p) {
    const int T = (int)rewards_seq.size();
    std::vector<double> z(T, 0.0);
    return PeriodicModel::make(charges_from_sequences(z, z, rewards_seq, z), p);
}

double Kernel::tail_entry(int a, int r, double damp) const {
    const int Tn = T();
    const int b = (a + r) % Tn;
    long a0 = X_cut + 1;
    while ((a0 - r) % Tn != 0) ++a0;  // first x > X_cut with [x] = r
    const double w0b = std::exp(model.ch.w0[b]);
    const double sig = model.Sigma(a, b);
    const double s32_plain = num::lattice_tail(1.5, (double)a0, (double)Tn, damp);
    const double s52_plain = num::lattice_tail(2.5, (double)a0, (double)Tn, damp);
    const double s32_drift = num::lattice_tail(1.5, (double)a0, (double)Tn, damp + model.h_w);
    const double s52_drift = num::lattice_tail(2.5, (double)a0, (double)Tn, damp + model.h_w);
    const double esig = std::exp(sig);
    return 0.5 * w0b *
           (cK * (s32_plain + esig * s32_drift) + aK * (s52_plain + esig * s52_drift));
}

std::vector<double> Kernel::B_damped(double damp) const {
    const int Tn = T();
    std::vector<double> out(Tn * Tn, 0.0);
    for (long x = 1; x <= X_cut; ++x) {
        const double e = std::exp(-damp * (double)x);
        for (int a = 0; a < Tn; ++a) {
            const int b = (int)((a + x) % Tn);
            out[a * Tn + b] += Mval(x, a) * e;
        }
    }
    for (int a = 0; a < Tn; ++a)
        for (int r = 0; r < Tn; ++r) out[a * Tn + (a + r) % Tn] += tail_entry(a, r, damp);
    return out;
}

Kernel build_kernel(const PeriodicModel& model, long X_cut, const ReturnLaw* shared_K) {
    const int T = model.T();
    if (X_cut < 10 * T) throw std::invalid_argument("build_kernel: X_cut must be >= 10 T");
    Kernel ker;
    ker.model = model;
    ker.X_cut = X_cut;
    if (shared_K && shared_K->n_max() >= X_cut && shared_K->spec.kind == model.walk.kind &&
        shared_K->spec.p == model.walk.p) {
        ker.K.assign(shared_K->k.begin(), shared_K->k.begin() + X_cut + 1);
        ker.cK = shared_K->c_k_hat;
        ker.aK = shared_K->a_k_hat;
    } else {
        ReturnLaw rl = return_law(model.walk, X_cut);
        ker.K = rl.k;
        ker.cK = rl.c_k_hat;
        ker.aK = rl.a_k_hat;
    }

    ker.Mx.assign(X_cut * T, 0.0);
    for (long x = 1; x <= X_cut; ++x) {
        for (int a = 0; a < T; ++a) {
            const int b = (int)((a + x) % T);
            ker.Mx[(x - 1) * T + a] = ker.K[x] * std::exp(model.phi(a, b, x));
        }
    }

    ker.B = ker.B_damped(0.0);

    ker.L.assign(T * T, 0.0);
    ker.Ltil.assign(T * T, 0.0);
    for (int a = 0; a < T; ++a) {
        for (int b = 0; b < T; ++b) {
            if (model.h_w > 0.0) {
                ker.L[a * T + b] = ker.cK * 0.5 * std::exp(model.ch.w0[b]);
                ker.Ltil[a * T + b] = ker.cK;
            } else {
                const double e = std::exp(model.Sigma(a, b));
                ker.L[a * T + b] = ker.cK * 0.5 * (1.0 + e) * std::exp(model.ch.w0[b]);
                ker.Ltil[a * T + b] = ker.cK * (1.0 + e);
            }
        }
    }

    // truncation quality: relative defect of the K tail expansion at the cut
    long xl = X_cut;
    if (model.walk.kind == WalkKind::SimpleSymmetric && xl % 2 != 0) --xl;
    const double approx = ker.cK * std::pow((double)xl, -1.5) + ker.aK * std::pow((double)xl, -2.5);
    const double rel = std::fabs(ker.K[xl] - approx) / std::max(ker.K[xl], 1e-300);
    double tail_mass = 0.0;
    for (int a = 0; a < T; ++a)
        for (int r = 0; r < T; ++r) tail_mass = std::max(tail_mass, ker.tail_entry(a, r, 0.0));
    ker.tail_bound = rel * tail_mass;
    return ker;
}

PFData pf(const std::vector<double>& mat, int T) {
    if ((int)mat.size() != T * T) throw std::invalid_argument("pf: matrix size mismatch");
    if (T > 64) throw std::invalid_argument("pf: T capped at 64");
    for (double v : mat)
        if (v < 0.0) throw std::invalid_argument("pf: negative entry");

    // irreducibility: reachability closure on the positivity pattern
    std::vector<char> reach(T * T, 0);
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < T; ++j) reach[i * T + j] = mat[i * T + j] > 0.0;
    for (int k = 0; k < T; ++k)
        for (int i = 0; i < T; ++i)
            if (reach[i * T + k])
                for (int j = 0; j < T; ++j)
                    if (reach[k * T + j]) reach[i * T + j] = 1;
    for (int i = 0; i < T; ++i)
        for (int j = 0; j < T; ++j)
            if (!reach[i * T + j]) throw std::invalid_argument("pf: matrix is reducible");

    // iterate on the primitive shift B + sI; PF(B) = PF(B + sI) - s
    double max_entry = 0.0;
    for (double v : mat) max_entry = std::max(max_entry, v);
    const double shift = 0.5 * max_entry;

    auto iterate = [&](bool left) {
        std::vector<double> v(T, 1.0 / T), nv(T);
        double lam = 0.0;
        for (long it = 0; it < 500000; ++it) {
            double norm = 0.0;
            for (int i = 0; i < T; ++i) {
                double s = shift * v[i];
                for (int j = 0; j < T; ++j)
                    s += left ? v[j] * mat[j * T + i] : mat[i * T + j] * v[j];
                nv[i] = s;
                norm += s;
            }
            for (int i = 0; i < T; ++i) nv[i] /= norm;
            double diff = 0.0;
            for (int i = 0; i < T; ++i) diff = std::max(diff, std::fabs(nv[i] - v[i]));
            v.swap(nv);
            if (std::fabs(norm - lam) <= 1e-16 * std::max(1.0, norm) && diff < 5e-16) {
                lam = norm;
                break;
            }
            lam = norm;
        }
        return std::make_pair(lam - shift, v);
    };

    auto [lam_r, xi] = iterate(false);
    auto [lam_l, zeta] = iterate(true);
    PFData out;
    out.eigval = 0.5 * (lam_r + lam_l);
    out.xi = xi;
    out.zeta = zeta;
    double dot = 0.0;
    for (int i = 0; i < T; ++i) dot += out.zeta[i] * out.xi[i];
    for (int i = 0; i < T; ++i) out.zeta[i] /= dot;

    double res = 0.0;
    for (int i = 0; i < T; ++i) {
        double sr = 0.0, sl = 0.0;
        for (int j = 0; j < T; ++j) {
            sr += mat[i * T + j] * out.xi[j];
            sl += out.zeta[j] * mat[j * T + i];
        }
        res = std::max(res, std::fabs(sr - out.eigval * out.xi[i]));
        res = std::max(res, std::fabs(sl - out.eigval * out.zeta[i]));
    }
    out.residual = res;
    return out;
}

FreeEnergyResult free_energy(const PeriodicModel& model, const Kernel& kernel) {
    const int T = model.T();
    const double delta = pf(kernel.B, T).eigval;
    if (!(delta > 1.0)) throw std::domain_error("free_energy: delta <= 1 (not localized)");

    auto Delta = [&](double b) { return pf(kernel.B_damped(b), T).eigval; };

    double lo = 0.0, hi = 1.0;
    while (Delta(hi) > 1.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 700.0) throw std::runtime_error("free_energy: bracket failure");
    }
    double F = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        F = 0.5 * (lo + hi);
        const double d = Delta(F);
        if (std::fabs(d - 1.0) <= 1e-12) break;
        if (d > 1.0)
            lo = F;
        else
            hi = F;
        if (hi - lo < 1e-16 * std::max(1.0, F)) break;
    }

    FreeEnergyResult out;
    out.F = F;
    out.pfF = pf(kernel.B_damped(F), T);

    // mu = sum_x x e^{-Fx} zeta M(x) xi, with analytic x^{-1/2} tail completion
    double mu = 0.0;
    for (long x = 1; x <= kernel.X_cut; ++x) {
        const double e = (double)x * std::exp(-F * (double)x);
        for (int a = 0; a < T; ++a) {
            const int b = (int)((a + x) % T);
            mu += out.pfF.zeta[a] * kernel.Mval(x, a) * out.pfF.xi[b] * e;
        }
    }
    for (int a = 0; a < T; ++a) {
        for (int r = 0; r < T; ++r) {
            const int b = (a + r) % T;
            long a0 = kernel.X_cut + 1;
            while ((a0 - r) % T != 0) ++a0;
            const double w0b = std::exp(model.ch.w0[b]);
            const double esig = std::exp(model.Sigma(a, b));
            const double s12_plain = num::lattice_tail(0.5, (double)a0, (double)T, F);
            const double s32t = num::lattice_tail(1.5, (double)a0, (double)T, F);
            const double s12_drift = num::lattice_tail(0.5, (double)a0, (double)T, F + model.h_w);
            const double s32t_drift = num::lattice_tail(1.5, (double)a0, (double)T, F + model.h_w);
            const double tail = 0.5 * w0b *
                                (kernel.cK * (s12_plain + esig * s12_drift) +
                                 kernel.aK * (s32t + esig * s32t_drift));
            mu += out.pfF.zeta[a] * tail * out.pfF.xi[b];
        }
    }
    out.mu = mu;

    // Delta has a sqrt singularity at b = 0, so the step must stay well
    // inside (0, F); Richardson extrapolation removes the leading curvature.
    const double db = std::min(1e-5 * std::max(F, 1.0), F / 16.0);
    const double d1 = -(Delta(F + db) - Delta(F - db)) / (2.0 * db);
    const double d2 = -(Delta(F + 0.5 * db) - Delta(F - 0.5 * db)) / db;
    out.mu_fd = (4.0 * d2 - d1) / 3.0;
    return out;
}

RegimeReport classify(const PeriodicModel& model, const Kernel& kernel, double tol) {
    RegimeReport rep;
    rep.pfB = pf(kernel.B, model.T());
    rep.delta = rep.pfB.eigval;
    if (std::fabs(rep.delta - 1.0) <= tol)
        rep.regime = Regime::Critical;
    else if (rep.delta > 1.0)
        rep.regime = Regime::Localized;
    else
        rep.regime = Regime::StrictlyDeloc;

    double max_sigma = 0.0;
    for (int a = 0; a < model.T(); ++a)
        for (int b = 0; b < model.T(); ++b)
            max_sigma = std::max(max_sigma, std::fabs(model.Sigma(a, b)));
    rep.pathological =
        (rep.regime != Regime::Localized) && model.h_w == 0.0 && max_sigma > 1e-12;

    if (rep.regime == Regime::Localized) {
        const FreeEnergyResult fe = free_energy(model, kernel);
        rep.F = fe.F;
        rep.mu = fe.mu;
    }
    for (int eta = 0; eta < model.T(); ++eta)
        rep.constants.push_back(asymptotic_constant(model, kernel, eta, tol));
    return rep;
}

double asymptotic_constant(const PeriodicModel& model, const Kernel& kernel, int eta, double tol) {
    const int T = model.T();
    const PFData pb = pf(kernel.B, T);
    const double delta = pb.eigval;
    const double dist = std::fabs(delta - 1.0);
    if (dist > tol && dist < 100.0 * tol)
        throw std::runtime_error("asymptotic_constant: ambiguous regime (delta too close to 1)");

    if (dist <= tol) {
        // critical: C= = T^2/(2 pi) xi_0 zeta_eta / (zeta L xi)
        double zLx = 0.0;
        for (int a = 0; a < T; ++a)
            for (int b = 0; b < T; ++b) zLx += pb.zeta[a] * kernel.L[a * T + b] * pb.xi[b];
        return (double)T * (double)T / (2.0 * M_PI) * pb.xi[0] * pb.zeta[eta] / zLx;
    }
    if (delta > 1.0) {
        const FreeEnergyResult fe = free_energy(model, kernel);
        return fe.pfF.xi[0] * fe.pfF.zeta[eta] * (double)T / fe.mu;
    }
    // strictly delocalized: C< = [(1-B)^{-1} L (1-B)^{-1}]_{0,eta}
    const std::vector<double> inv = inverse_identity_minus(kernel.B, T);
    double c = 0.0;
    for (int a = 0; a < T; ++a)
        for (int b = 0; b < T; ++b)
            c += inv[0 * T + a] * kernel.L[a * T + b] * inv[b * T + eta];
    return c;
}

std::vector<std::vector<double>> exact_partition(const Kernel& kernel, long N_max, double damping) {
    if (N_max > kernel.X_cut)
        throw std::invalid_argument("exact_partition: N_max exceeds the kernel cut");
    const int T = kernel.T();
    std::vector<double> Md((N_max + 1) * T, 0.0);  // damped kernel values
    for (long x = 1; x <= N_max; ++x) {
        const double e = std::exp(-damping * (double)x);
        for (int a = 0; a < T; ++a) Md[x * T + a] = kernel.Mval(x, a) * e;
    }
    std::vector<std::vector<double>> Z(T, std::vector<double>(N_max + 1, 0.0));
    for (int a = 0; a < T; ++a) Z[a][0] = 1.0;
    for (long x = 1; x <= N_max; ++x) {
        for (int a = 0; a < T; ++a) {
            double s = 0.0;
            for (long y = 1; y <= x; ++y) s += Md[y * T + a] * Z[(a + y) % T][x - y];
            Z[a][x] = s;
        }
    }
    return Z;
}

namespace {

SemiMarkovKernel make_kernel_common(const Kernel& kernel) {
    SemiMarkovKernel s;
    s.T = kernel.T();
    s.X_cut = kernel.X_cut;
    s.G.assign(kernel.X_cut * s.T, 0.0);
    return s;
}

} // namespace

SemiMarkovKernel limit_kernel_loc(const Kernel& kernel, const FreeEnergyResult& fe) {
    SemiMarkovKernel s = make_kernel_common(kernel);
    const int T = s.T;
    std::vector<double> rowsum(T, 0.0);
    for (long x = 1; x <= kernel.X_cut; ++x) {
        const double e = std::exp(-fe.F * (double)x);
        for (int a = 0; a < T; ++a) {
            const int b = (int)((a + x) % T);
            const double g = kernel.Mval(x, a) * e * fe.pfF.xi[b] / fe.pfF.xi[a];
            s.G[(x - 1) * T + a] = g;
            rowsum[a] += g;
        }
    }
    s.norm_defect.assign(T, 0.0);
    for (int a = 0; a < T; ++a) {
        double tail = 0.0;
        for (int r = 0; r < T; ++r)
            tail += kernel.tail_entry(a, r, fe.F) * fe.pfF.xi[(a + r) % T] / fe.pfF.xi[a];
        s.norm_defect[a] = std::fabs(rowsum[a] + tail - 1.0);
    }
    return s;
}

SemiMarkovKernel limit_kernel_crit(const Kernel& kernel) {
    SemiMarkovKernel s = make_kernel_common(kernel);
    const int T = s.T;
    const PFData pb = pf(kernel.B, T);
    std::vector<double> rowsum(T, 0.0);
    for (long x = 1; x <= kernel.X_cut; ++x) {
        for (int a = 0; a < T; ++a) {
            const int b = (int)((a + x) % T);
            const double g = kernel.Mval(x, a) * pb.xi[b] / pb.xi[a];
            s.G[(x - 1) * T + a] = g;
            rowsum[a] += g;
        }
    }
    s.norm_defect.assign(T, 0.0);
    for (int a = 0; a < T; ++a) {
        double tail = 0.0;
        for (int r = 0; r < T; ++r)
            tail += kernel.tail_entry(a, r, 0.0) * pb.xi[(a + r) % T] / pb.xi[a];
        s.norm_defect[a] = std::fabs(rowsum[a] + tail - 1.0);
    }
    return s;
}

SemiMarkovKernel limit_kernel_del(const Kernel& kernel, int eta, bool constrained) {
    SemiMarkovKernel s = make_kernel_common(kernel);
    const int T = s.T;
    const std::vector<double> inv = inverse_identity_minus(kernel.B, T);

    // Lambda^c = (1-B)^{-1} L (1-B)^{-1},  mu^c = L (1-B)^{-1}
    // Lambda^f = (1-B)^{-1} Ltil,          mu^f = Ltil
    std::vector<double> Lam(T * T, 0.0), Mu(T * T, 0.0);
    if (constrained) {
        std::vector<double> LI(T * T, 0.0);
        for (int i = 0; i < T; ++i)
            for (int j = 0; j < T; ++j) {
                double v = 0.0;
                for (int l = 0; l < T; ++l) v += kernel.L[i * T + l] * inv[l * T + j];
                LI[i * T + j] = v;
            }
        Mu = LI;
        for (int i = 0; i < T; ++i)
            for (int j = 0; j < T; ++j) {
                double v = 0.0;
                for (int l = 0; l < T; ++l) v += inv[i * T + l] * LI[l * T + j];
                Lam[i * T + j] = v;
            }
    } else {
        Mu = kernel.Ltil;
        for (int i = 0; i < T; ++i)
            for (int j = 0; j < T; ++j) {
                double v = 0.0;
                for (int l = 0; l < T; ++l) v += inv[i * T + l] * kernel.Ltil[l * T + j];
                Lam[i * T + j] = v;
            }
    }

    std::vector<double> rowsum(T, 0.0);
    for (long x = 1; x <= kernel.X_cut; ++x) {
        for (int a = 0; a < T; ++a) {
            const int b = (int)((a + x) % T);
            const double g = kernel.Mval(x, a) * Lam[b * T + eta] / Lam[a * T + eta];
            s.G[(x - 1) * T + a] = g;
            rowsum[a] += g;
        }
    }
    s.escape.assign(T, 0.0);
    s.norm_defect.assign(T, 0.0);
    for (int a = 0; a < T; ++a) {
        s.escape[a] = Mu[a * T + eta] / Lam[a * T + eta];
        double tail = 0.0;
        for (int r = 0; r < T; ++r)
            tail += kernel.tail_entry(a, r, 0.0) * Lam[((a + r) % T) * T + eta] / Lam[a * T + eta];
        s.norm_defect[a] = std::fabs(rowsum[a] + tail + s.escape[a] - 1.0);
    }
    return s;
}

double rho_plus(const PeriodicModel& model, long z, int a, int b) {
    return 1.0 / (1.0 + std::exp(-(double)z * model.h_w + model.Sigma(a, b)));
}

SignParameters sign_parameters(const PeriodicModel& model, const Kernel& kernel) {
    const int T = model.T();
    SignParameters sp;

    const PFData pb = pf(kernel.B, T);
    double num = 0.0, den = 0.0, zsum = 0.0;
    for (int a = 0; a < T; ++a) {
        zsum += pb.zeta[a];
        for (int b = 0; b < T; ++b) {
            num += pb.zeta[a] * kernel.cK * 0.5 * std::exp(model.ch.w0[b]) * pb.xi[b];
            den += pb.zeta[a] * kernel.L[a * T + b] * pb.xi[b];
        }
    }
    sp.p_eq = num / den;

    sp.q_eq.assign(T, 0.0);
    for (int eta = 0; eta < T; ++eta) {
        double d = 0.0;
        for (int g = 0; g < T; ++g) d += pb.zeta[g] * kernel.Ltil[g * T + eta];
        sp.q_eq[eta] = kernel.cK * zsum / d;
    }

    const std::vector<double> inv = inverse_identity_minus(kernel.B, T);
    sp.p_del_c.assign(T, 0.0);
    sp.p_del_f.assign(T, 0.0);
    // Lambda^c and Lambda^f columns
    for (int eta = 0; eta < T; ++eta) {
        double numc = 0.0, denc = 0.0, numf = 0.0, denf = 0.0;
        for (int a = 0; a < T; ++a) {
            for (int b = 0; b < T; ++b) {
                numc += inv[0 * T + a] * kernel.cK * 0.5 * std::exp(model.ch.w0[b]) *
                        inv[b * T + eta];
                denc += inv[0 * T + a] * kernel.L[a * T + b] * inv[b * T + eta];
            }
            numf += inv[0 * T + a] * kernel.cK;
            denf += inv[0 * T + a] * kernel.Ltil[a * T + eta];
        }
        sp.p_del_c[eta] = numc / denc;
        sp.p_del_f[eta] = numf / denf;
    }
    return sp;
}

double c_beta(const PeriodicModel& model, const Kernel& kernel, int beta) {
    const int T = model.T();
    const PFData pb = pf(kernel.B, T);
    if (std::fabs(pb.eigval - 1.0) > 1e-6)
        throw std::domain_error("c_beta: defined in the critical regime");
    double s = 0.0;
    for (int a = 0; a < T; ++a)
        for (int g = 0; g < T; ++g) s += pb.zeta[a] * kernel.L[a * T + g] * pb.xi[g];
    return s / (pb.zeta[beta] * pb.xi[beta]);
}

double critical_h_periodic(const std::vector<double>& omega_seq, double p, double lam,
                           long X_cut, double tol, const ReturnLaw* shared_K) {
    auto delta_at = [&](double h) {
        const PeriodicModel m = copolymer_model(omega_seq, lam, h, p);
        const Kernel ker = build_kernel(m, X_cut, shared_K);
        return pf(ker.B, m.T()).eigval;
    };
    double lo = 0.0;
    if (delta_at(lo) <= 1.0 + tol)
        throw std::domain_error("critical_h_periodic: delta(h=0) <= 1 (degenerate model)");
    double hi = 0.125;
    while (delta_at(hi) > 1.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e4) throw std::runtime_error("critical_h_periodic: bracket failure");
    }
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double d = delta_at(mid);
        if (std::fabs(d - 1.0) <= tol) return mid;
        if (d > 1.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-9 * std::max(hi, 1e-12)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace copoly
