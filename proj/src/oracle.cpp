#include "wqed/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "wqed/parallel.hpp"

namespace wqed {

namespace {

using Vec = std::vector<cplx>;

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

// J_0..J_nmax by the downward recurrence, x >= 0
std::vector<double> bessel_j(int nmax, double x) {
    std::vector<double> out(nmax + 1, 0.0);
    if (x < 1e-12) {
        out[0] = 1.0;
        return out;
    }
    const int start = nmax + 18 + int(x);
    std::vector<double> f(start + 2, 0.0);
    f[start + 1] = 0.0;
    f[start] = 1e-30;
    for (int n = start; n >= 1; --n) {
        f[n - 1] = (2.0 * n / x) * f[n] - f[n + 1];
        if (std::abs(f[n - 1]) > 1e240) { // rescale to avoid overflow
            for (int m = n - 1; m <= start + 1; ++m) f[m] *= 1e-240;
        }
    }
    double sum = f[0];
    for (int n = 2; n <= start; n += 2) sum += 2.0 * f[n];
    for (int n = 0; n <= nmax; ++n) out[n] = f[n] / sum;
    return out;
}

// in-place radix-2 FFT with e^{+2 pi i jn / M} convention
void fft_plus(Vec& a) {
    const size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * PI / double(len);
        const cplx wl = std::exp(I * ang);
        for (size_t i = 0; i < n; i += len) {
            cplx w = 1.0;
            for (size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

double vec_norm2(const Vec& v) {
    double s = 0.0;
    for (const cplx& c : v) s += std::norm(c);
    return s;
}

// --- block Hamiltonians (rotating frame, matrix-free) ----------------------

// one even excitation: [photon modes | qubit]
struct BlockN1 {
    const DiscretizedModel& m;

    size_t dim() const { return size_t(m.modes) + 1; }
    double radius() const {
        return m.window * m.params.v_g + 4.0 * m.coupling * std::sqrt(double(m.modes));
    }
    void apply(const Vec& v, Vec& out) const {
        const int M = m.modes;
        const double g = m.coupling;
        cplx qacc = 0.0;
        for (int j = 0; j < M; ++j) {
            out[j] = m.detuning[j] * v[j] + g * v[M];
            qacc += g * v[j];
        }
        out[M] = qacc; // qubit detuning vanishes in the rotating frame
    }
};

// two even excitations: [pairs (i<=j) | photon+superradiant | doubly excited]
struct BlockN2 {
    const DiscretizedModel& m;

    size_t npairs() const { return size_t(m.modes) * (m.modes + 1) / 2; }
    size_t dim() const { return npairs() + m.modes + 1; }
    size_t pidx(int i, int j) const { // i <= j
        return size_t(i) * m.modes - size_t(i) * (i - 1) / 2 + size_t(j - i);
    }
    double radius() const {
        return 2.0 * m.window * m.params.v_g +
               6.0 * m.coupling * std::sqrt(double(m.modes));
    }
    void apply(const Vec& v, Vec& out) const {
        const int M = m.modes;
        const double g = m.coupling;
        const double s2 = std::sqrt(2.0);
        const size_t P = npairs();
        const cplx vee = v[P + M];

        // rows i and M-1-i together cost M+1 entries, so chunking over row
        // pairs keeps the workers balanced
        auto pair_row = [&](int i) {
            size_t idx = pidx(i, i);
            out[idx] = (m.detuning[i] + m.detuning[i]) * v[idx] + g * s2 * v[P + i];
            ++idx;
            for (int j = i + 1; j < M; ++j, ++idx)
                out[idx] = (m.detuning[i] + m.detuning[j]) * v[idx] +
                           g * (v[P + i] + v[P + j]);
        };
        parallel_for(size_t(M + 1) / 2, [&](size_t lo, size_t hi) {
            for (size_t c = lo; c < hi; ++c) {
                pair_row(int(c));
                if (int(c) != M - 1 - int(c)) pair_row(M - 1 - int(c));
            }
        }, 64);
        parallel_for(size_t(M), [&](size_t lo, size_t hi) {
            for (size_t ll = lo; ll < hi; ++ll) {
                const int l = int(ll);
                cplx acc = m.detuning[l] * v[P + l] + g * vee;
                for (int j = 0; j < l; ++j) acc += g * v[pidx(j, l)];
                acc += g * s2 * v[pidx(l, l)];
                for (int j = l + 1; j < M; ++j) acc += g * v[pidx(l, j)];
                out[P + l] = acc;
            }
        }, 64);
        cplx eacc = 0.0;
        for (int l = 0; l < M; ++l) eacc += g * v[P + l];
        out[P + M] = eacc;
    }
};

// Chebyshev propagation of v by time dt for a Hermitian block with spectrum
// inside [-radius, radius]; truncation kept near round-off
template <class Block>
void propagate(const Block& blk, double dt, Vec& v) {
    if (dt == 0.0) return;
    if (vec_norm2(v) == 0.0) return;
    const double r = blk.radius() * 1.03;
    double remaining = dt;
    const double max_chunk = 250.0 / r;
    Vec phi0(v.size()), phi1(v.size()), tmp(v.size());
    while (remaining > 1e-300) {
        const double step = std::min(remaining, max_chunk);
        remaining -= step;
        const double x = r * step;
        int nmax = int(x) + 50 + int(10.0 * std::cbrt(x + 1.0));
        const auto jn = bessel_j(nmax, x);
        phi0 = v;
        blk.apply(phi0, phi1);
        for (size_t q = 0; q < v.size(); ++q) phi1[q] /= r;
        Vec y(v.size());
        for (size_t q = 0; q < v.size(); ++q)
            y[q] = jn[0] * phi0[q] + 2.0 * (-I) * jn[1] * phi1[q];
        cplx coef = -1.0; // (-i)^n
        for (int n = 2; n <= nmax; ++n) {
            blk.apply(phi1, tmp);
            for (size_t q = 0; q < v.size(); ++q) {
                const cplx next = 2.0 * tmp[q] / r - phi0[q];
                phi0[q] = phi1[q];
                phi1[q] = next;
            }
            for (size_t q = 0; q < v.size(); ++q) y[q] += 2.0 * coef * jn[n] * phi1[q];
            coef *= -I;
            if (std::abs(jn[n]) < 1e-16 && n > int(x) + 6) break;
        }
        v = std::move(y);
    }
}

// normalized mode projection of a folded pulse
Vec pulse_modes(const DiscretizedModel& m, const WavepacketSpec& s) {
    const WavepacketSpec folded(s.mu, s.omega, s.front);
    Vec amps(m.modes);
    const double root = std::sqrt(m.spacing / (2.0 * PI));
    for (int j = 0; j < m.modes; ++j) {
        const double k = m.params.k0() + m.detuning[j] / m.params.v_g;
        amps[j] = wavepacket_momentum_amplitude(folded, m.params.v_g, k) * root;
    }
    const double nrm = std::sqrt(vec_norm2(amps));
    for (auto& a : amps) a /= nrm;
    return amps;
}

// carrier-stripped field on the box grid from mode amplitudes
Vec field_on_grid(const DiscretizedModel& m, const Vec& amps) {
    Vec f(amps.begin(), amps.end());
    fft_plus(f);
    const int M = m.modes;
    for (int n = 0; n < M; ++n) {
        const double phase = PI * double(n) * (1.0 / double(M) - 1.0);
        f[n] *= std::exp(I * phase) / std::sqrt(m.box_length());
    }
    return f;
}

} // namespace

DiscretizedModel build_discretized(const PhysicalParams& p, int modes, double window) {
    if (modes < 256) throw InvalidInput("build_discretized: need at least 256 modes");
    if (next_pow2(modes) != modes)
        throw InvalidInput("build_discretized: mode count must be a power of two");
    if (!(window > 0.0)) throw InvalidInput("build_discretized: window must be > 0");
    DiscretizedModel m{p, modes, window, 2.0 * window / modes, 0.0, {}};
    m.coupling = p.coupling_v() * std::sqrt(m.spacing / (2.0 * PI));
    m.detuning.resize(modes);
    for (int j = 0; j < modes; ++j)
        m.detuning[j] = p.v_g * (double(j) - 0.5 * modes + 0.5) * m.spacing;
    return m;
}

DiscretizedModel oracle_model_for(const PhysicalParams& p, double mu, double extent,
                                  double width_linewidths) {
    const double rate_min = std::min(p.gamma, 2.0 * mu);
    double spacing = rate_min / (10.0 * p.v_g);
    if (extent > 0.0) spacing = std::min(spacing, 2.0 * PI / extent);
    const double half = width_linewidths * std::max(p.gamma, 2.0 * mu) / p.v_g;
    int modes = std::max(256, next_pow2(int(std::ceil(2.0 * half / spacing))));
    return build_discretized(p, modes, 0.5 * modes * spacing);
}

double oracle_resonance_width(const DiscretizedModel& m) {
    BlockN1 blk{m};
    const int d = int(blk.dim());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < m.modes; ++j) {
        h(j, j) = m.detuning[j];
        h(j, m.modes) = m.coupling;
        h(m.modes, j) = m.coupling;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    // quartiles of the qubit-weighted spectral measure; a Lorentzian has
    // q75 - q25 equal to its full width
    std::vector<std::pair<double, double>> wts(d);
    for (int n = 0; n < d; ++n)
        wts[n] = {es.eigenvalues()(n), std::norm(es.eigenvectors()(m.modes, n))};
    double total = 0.0;
    for (auto& [e, w] : wts) total += w;
    double acc = 0.0, q25 = 0.0, q75 = 0.0;
    for (auto& [e, w] : wts) {
        const double before = acc;
        acc += w;
        if (before < 0.25 * total && acc >= 0.25 * total) q25 = e;
        if (before < 0.75 * total && acc >= 0.75 * total) q75 = e;
    }
    return q75 - q25;
}

OracleResult oracle_evolve(const DiscretizedModel& model, const OracleInitial& initial,
                           const std::vector<double>& times, bool want_prr) {
    const PhysicalParams& p = model.params;
    double mu_min = p.gamma;
    std::visit([&](const auto& ini) {
        using T = std::decay_t<decltype(ini)>;
        if constexpr (std::is_same_v<T, WavepacketSpec>) mu_min = ini.mu;
        else if constexpr (std::is_same_v<T, TwoPhotonInitial>)
            mu_min = std::min(ini.right.mu, ini.left.mu);
        else mu_min = ini.photon.mu;
    }, initial);
    if (model.spacing * p.v_g > std::min(p.gamma, 2.0 * mu_min) / 10.0 + 1e-15)
        throw NumericsError("oracle_evolve: mode spacing too coarse for the rates involved");

    OracleResult res;
    res.trace.times = times;

    auto record = [&](const QubitBasisPopulations& pops, bool dark_empty) {
        res.trace.pops.push_back(pops);
        if (dark_empty) {
            const double comp = 2.0 * std::sqrt(std::max(0.0, pops.rho_beta) *
                                                std::max(0.0, pops.rho_gs));
            res.trace.competitor.push_back(comp);
            res.trace.concurrence.push_back(std::max(0.0, pops.rho_plus - comp));
        } else {
            res.trace.competitor.push_back(0.0);
            res.trace.concurrence.push_back(0.0);
        }
    };

    if (std::holds_alternative<WavepacketSpec>(initial)) {
        const auto& photon = std::get<WavepacketSpec>(initial);
        BlockN1 blk{model};
        Vec v(blk.dim(), cplx{0.0});
        const Vec amps = pulse_modes(model, photon);
        for (int j = 0; j < model.modes; ++j) v[j] = amps[j] / std::sqrt(2.0);
        const double n0 = vec_norm2(v) + 0.5; // odd channel rides along freely
        double tcur = 0.0;
        for (double t : times) {
            propagate(blk, t - tcur, v);
            tcur = t;
            QubitBasisPopulations pops;
            pops.rho_plus = std::norm(v[model.modes]);
            pops.rho_gs = 1.0 - pops.rho_plus;
            record(pops, true);
            res.norm_drift = std::max(res.norm_drift, std::abs(vec_norm2(v) + 0.5 - n0));
        }
        return res;
    }

    if (std::holds_alternative<TwoPhotonInitial>(initial)) {
        const auto& tp = std::get<TwoPhotonInitial>(initial);
        const Vec u = pulse_modes(model, tp.right);
        const Vec w = pulse_modes(model, tp.left);
        cplx overlap = 0.0; // free spectator envelopes keep their overlap
        for (int j = 0; j < model.modes; ++j) overlap += std::conj(w[j]) * u[j];

        BlockN2 blk2{model};
        const size_t P = blk2.npairs();
        Vec v2(blk2.dim(), cplx{0.0});
        for (int i = 0; i < model.modes; ++i) {
            v2[blk2.pidx(i, i)] = u[i] * w[i] / std::sqrt(2.0);
            for (int j = i + 1; j < model.modes; ++j)
                v2[blk2.pidx(i, j)] = 0.5 * (u[i] * w[j] + u[j] * w[i]);
        }
        BlockN1 blk1{model};
        Vec vu(blk1.dim(), cplx{0.0}), vw(blk1.dim(), cplx{0.0});
        for (int j = 0; j < model.modes; ++j) {
            vu[j] = u[j];
            vw[j] = w[j];
        }
        const double n0 = vec_norm2(v2) + 0.25 * (vec_norm2(vu) + vec_norm2(vw));

        double tcur = 0.0;
        for (double t : times) {
            propagate(blk2, t - tcur, v2);
            propagate(blk1, t - tcur, vu);
            propagate(blk1, t - tcur, vw);
            tcur = t;
            const cplx qu = vu[model.modes], qw = vw[model.modes];
            QubitBasisPopulations pops;
            double plus_even = 0.0;
            for (int l = 0; l < model.modes; ++l) plus_even += std::norm(v2[P + l]);
            const double plus_odd =
                0.25 * (std::norm(qw) + std::norm(qu) -
                        2.0 * (qw * std::conj(qu) * overlap).real());
            pops.rho_plus = plus_even + plus_odd;
            pops.rho_beta = std::norm(v2[P + model.modes]);
            pops.rho_gs = 1.0 - pops.rho_plus - pops.rho_beta;
            record(pops, true);
            res.norm_drift = std::max(
                res.norm_drift,
                std::abs(vec_norm2(v2) + 0.25 * (vec_norm2(vu) + vec_norm2(vw)) - n0));
        }
        return res;
    }

    const auto& pq = std::get<PhotonQubitInitial>(initial);
    const double wt = 1.0 + std::norm(pq.xi);
    const cplx pe = (1.0 + pq.xi) / std::sqrt(2.0 * wt);
    const cplx mo = (1.0 - pq.xi) / std::sqrt(2.0 * wt);
    const Vec amps = pulse_modes(model, pq.photon);

    BlockN2 blk2{model};
    const size_t P = blk2.npairs();
    Vec v2(blk2.dim(), cplx{0.0});
    for (int j = 0; j < model.modes; ++j) v2[P + j] = pe / std::sqrt(2.0) * amps[j];
    BlockN1 blk1{model};
    Vec v1(blk1.dim(), cplx{0.0});
    v1[model.modes] = 1.0; // bare superradiant excitation beside the odd spectator
    const double rho_minus = std::norm(mo);
    const double n0 = vec_norm2(v2) + 0.5 * std::norm(pe) * vec_norm2(v1) + rho_minus;

    double tcur = 0.0;
    for (double t : times) {
        propagate(blk2, t - tcur, v2);
        propagate(blk1, t - tcur, v1);
        tcur = t;
        QubitBasisPopulations pops;
        double plus_even = 0.0;
        for (int l = 0; l < model.modes; ++l) plus_even += std::norm(v2[P + l]);
        pops.rho_plus = plus_even + 0.5 * std::norm(pe) * std::norm(v1[model.modes]);
        pops.rho_beta = std::norm(v2[P + model.modes]);
        pops.rho_minus = rho_minus;
        pops.rho_gs = 1.0 - pops.rho_plus - pops.rho_minus - pops.rho_beta;
        record(pops, false);
        res.norm_drift = std::max(
            res.norm_drift,
            std::abs(vec_norm2(v2) + 0.5 * std::norm(pe) * vec_norm2(v1) + rho_minus - n0));
    }

    if (want_prr) {
        // reconstruct the two-photon output on the box grid at times.back();
        // every single-photon field carries its own 1/sqrt(L)
        const int M = model.modes;
        const double T = times.back();
        const double dx = model.box_length() / M;

        // <0| c_e(x) c_e(x') |pairs> = 2 sum_ij G_ij phi_i(x) phi_j(x')
        std::vector<Vec> gee(M, Vec(M, cplx{0.0}));
        for (int i = 0; i < M; ++i) {
            gee[i][i] = v2[blk2.pidx(i, i)] / std::sqrt(2.0);
            for (int j = i + 1; j < M; ++j)
                gee[i][j] = gee[j][i] = 0.5 * v2[blk2.pidx(i, j)];
        }
        for (int i = 0; i < M; ++i) gee[i] = field_on_grid(model, gee[i]);
        for (int n = 0; n < M; ++n) {
            Vec col(M);
            for (int i = 0; i < M; ++i) col[i] = gee[i][n];
            col = field_on_grid(model, col);
            for (int i = 0; i < M; ++i) gee[i][n] = col[i];
        }

        Vec em(M);
        for (int j = 0; j < M; ++j) em[j] = v1[j];
        em = field_on_grid(model, em);
        Vec spec(M);
        for (int j = 0; j < M; ++j)
            spec[j] = amps[j] * std::exp(-I * model.detuning[j] * T);
        spec = field_on_grid(model, spec);

        // unwrap the periodic coordinate: leftover weight near the qubits is
        // exponentially small by T, content sits right of -margin
        const double margin = 12.0 / (2.0 * pq.photon.mu) * p.v_g;
        auto coord = [&](int n) {
            double x = n * dx;
            if (x > model.box_length() - margin) x -= model.box_length();
            return x;
        };
        const cplx kfac = 0.5 * pe / std::sqrt(2.0);
        double prr = 0.0, pll = 0.0, prl = 0.0;
        for (int a = 0; a < M; ++a) {
            if (coord(a) <= 0.0) continue;
            for (int b = 0; b < M; ++b) {
                if (coord(b) <= 0.0) continue;
                const cplx phi_half = gee[a][b]; // half of <c_e c_e>
                const cplx kab = kfac * em[a] * spec[b];
                const cplx kba = kfac * em[b] * spec[a];
                const double wcell = (a == b) ? 0.5 : 1.0;
                if (b >= a) {
                    prr += wcell * std::norm(phi_half + kab + kba) * dx * dx;
                    pll += wcell * std::norm(phi_half - kab - kba) * dx * dx;
                }
                prl += std::norm(phi_half - kab + kba) * dx * dx;
            }
        }
        res.p_rr = prr;
        res.p_ll = pll;
        res.p_rl = prl;
    }
    return res;
}

} // namespace wqed
