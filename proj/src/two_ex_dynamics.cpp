#include <cmath>

#include "wqed/single_ex.hpp"
#include "wqed/two_ex.hpp"

namespace wqed {

using detail::LineFactor;
using detail::PulseFactor;
using detail::RankFactor;

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();
constexpr double W5 = 1.0 / (32.0 * PI * PI);
constexpr double W1 = 1.0 / (4.0 * PI * PI);

// folded (rightward-convention) envelope of a pulse
PulseFactor folded(const WavepacketSpec& s, cplx coeff = {1.0, 0.0}) {
    return {coeff, s.mu, s.omega, s.front};
}

} // namespace

KGrid2 n2_default_grid(const PhysicalParams& p, double mu, int n_nodes) {
    const double scale = std::max(p.gamma, 2.0 * mu) / p.v_g;
    return KGrid2(std::make_shared<KGrid>(KGrid::tan_mapped(p.k0(), scale, n_nodes)));
}

double SpectralStateN2::quadrature_norm() const {
    const auto& g = *grid.axis;
    const int n = g.size();
    double s5 = 0.0, s1 = 0.0, s4 = 0.0, s23 = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double ww = g.weights[i] * g.weights[j];
            const size_t idx = size_t(i) * n + j;
            s5 += ww * std::norm(f5[idx]);
            s1 += ww * std::norm(f1[idx]);
            s4 += ww * std::norm(f4[idx]);
        }
        s23 += g.weights[i] * (std::norm(f2[i]) + std::norm(f3[i]));
    }
    return W5 * (s5 + s4) + W1 * s1 + s23 / (2.0 * PI);
}

SpectralStateN2 n2_project(const PhysicalParams& p, const TwoExInitial& initial,
                           const KGrid2& grid, double horizon) {
    SpectralStateN2 st{grid};
    const int n = grid.size();
    st.f5.assign(size_t(n) * n, cplx{0.0});
    st.f1.assign(size_t(n) * n, cplx{0.0});
    st.f4.assign(size_t(n) * n, cplx{0.0});
    st.f2.assign(n, cplx{0.0});
    st.f3.assign(n, cplx{0.0});

    double front_max = 0.0;
    double rate_min = p.gamma;

    if (std::holds_alternative<TwoPhotonInitial>(initial)) {
        const auto& tp = std::get<TwoPhotonInitial>(initial);
        if (tp.right.direction != Direction::rightward ||
            tp.left.direction != Direction::leftward)
            throw InvalidInput("n2_project: photon pair must counter-propagate");
        if (tp.right.front < 0.0 || tp.left.front < 0.0)
            throw InvalidInput("n2_project: photon fronts must not have passed the qubits");
        const RankFactor u = folded(tp.right);
        const RankFactor w = folded(tp.left);
        st.f5_rank.push_back({u, w});
        st.f1_rank.push_back({scale_factor(w, 0.5), u});
        st.f1_rank.push_back({scale_factor(u, -0.5), w});
        st.f4_rank.push_back({scale_factor(u, -1.0), w});
        front_max = std::max(tp.right.front, tp.left.front);
        rate_min = std::min({p.gamma, 2.0 * tp.right.mu, 2.0 * tp.left.mu});
    } else {
        const auto& pq = std::get<PhotonQubitInitial>(initial);
        if (pq.photon.direction != Direction::rightward)
            throw InvalidInput("n2_project: probe photon must travel rightward");
        if (pq.photon.front < 0.0)
            throw InvalidInput("n2_project: probe front must not have passed the qubits");
        const double nrm = std::sqrt(2.0 * (1.0 + std::norm(pq.xi)));
        const cplx pe = (1.0 + pq.xi) / nrm;
        const cplx mo = (1.0 - pq.xi) / nrm;
        const RankFactor u = folded(pq.photon);
        const double sg = std::sqrt(p.gamma / p.v_g);
        st.f5_rank.push_back({scale_factor(u, pe * std::sqrt(2.0) * sg), LineFactor{1.0}});
        st.f1_rank.push_back(
            {LineFactor{pe / std::sqrt(2.0) * p.coupling_v() / p.v_g}, u});
        st.f2_rank.push_back(scale_factor(u, mo / std::sqrt(2.0)));
        st.f3_rank.push_back(scale_factor(u, mo / std::sqrt(2.0)));
        front_max = pq.photon.front;
        rate_min = std::min(p.gamma, 2.0 * pq.photon.mu);
    }

    st.zscale = (horizon > 0.0) ? horizon : front_max + 60.0 * p.v_g / rate_min;

    const auto& g = *grid.axis;
    for (int i = 0; i < n; ++i) {
        const double ki = g.nodes[i];
        for (const auto& pr : st.f5_rank) {
            const cplx ai = factor_value(p, pr.a, ki), bi = factor_value(p, pr.b, ki);
            for (int j = 0; j < n; ++j) {
                const double kj = g.nodes[j];
                st.f5[size_t(i) * n + j] += ai * factor_value(p, pr.b, kj) +
                                            bi * factor_value(p, pr.a, kj);
            }
        }
        for (const auto& pr : st.f4_rank) {
            const cplx ai = factor_value(p, pr.a, ki), bi = factor_value(p, pr.b, ki);
            for (int j = 0; j < n; ++j) {
                const double kj = g.nodes[j];
                st.f4[size_t(i) * n + j] += ai * factor_value(p, pr.b, kj) +
                                            bi * factor_value(p, pr.a, kj);
            }
        }
        for (const auto& pr : st.f1_rank) {
            const cplx ei = factor_value(p, pr.even_part, ki);
            for (int j = 0; j < n; ++j)
                st.f1[size_t(i) * n + j] += ei * factor_value(p, pr.odd_part, g.nodes[j]);
        }
        for (const auto& f : st.f2_rank) st.f2[i] += factor_value(p, f, ki);
        for (const auto& f : st.f3_rank) st.f3[i] += factor_value(p, f, ki);
    }

    const double captured = st.quadrature_norm();
    if (captured < 1.0 - 1e-6)
        throw NumericsError("n2_project: grid captures only " + std::to_string(captured) +
                            " of the state norm");
    return st;
}

// ---------------------------------------------------------------------------

struct N2Evaluator::Channel {
    PiecewiseExp T; // factor on the earlier coordinate
    PiecewiseExp U; // factor on the later coordinate
};

N2Evaluator::N2Evaluator(const PhysicalParams& p, const SpectralStateN2& state)
    : params_(p), state_(state) {
    const double zs = state.zscale;
    auto gram = [](const PiecewiseExp& x, const PiecewiseExp& y) {
        return (x * y.conjugate()).integral_all() / (2.0 * PI);
    };

    PiecewiseExp xi_total, pair_line_total;
    for (const auto& pr : state.f5_rank) {
        PairFns f;
        f.Ea = detail::transform_plain(p, pr.a, zs);
        f.Eb = detail::transform_plain(p, pr.b, zs);
        f.Eca = detail::transform_invc(p, pr.a, zs);
        f.Ecb = detail::transform_invc(p, pr.b, zs);
        f.Eta = detail::transform_trans(p, pr.a, zs);
        f.Etb = detail::transform_trans(p, pr.b, zs);
        PiecewiseExp xi_m = f.Ea * f.Ecb + f.Eb * f.Eca + f.Eca * f.Etb + f.Ecb * f.Eta;
        PiecewiseExp psi_m = (f.Eca * f.Eb + f.Ecb * f.Ea).scaled(2.0);
        xi_total = xi_total.empty() ? xi_m : xi_total + xi_m;
        pair_line_total = pair_line_total.empty() ? psi_m : pair_line_total + psi_m;
        f5_fns_.push_back(std::move(f));
    }
    const cplx kappa = p.gamma / (2.0 * p.v_g) + 2.0 * I * p.omega_q / p.v_g;
    if (!xi_total.empty()) {
        bound_kernel_ = xi_total.filtered_tail(kappa);
        ee_kernel_ = pair_line_total.filtered_tail(kappa);
    }

    for (const auto& pr : state.f1_rank) {
        OrdFns f;
        f.Ec_even = detail::transform_invc(p, pr.even_part, zs)
                        .scaled(p.coupling_v() / p.v_g);
        f.E_odd = detail::transform_plain(p, pr.odd_part, zs);
        f.gram_norm = 0.0;
        f1_fns_.push_back(std::move(f));
    }
    const size_t m1 = f1_fns_.size();
    f1_gram_.assign(m1, std::vector<cplx>(m1, cplx{0.0}));
    for (size_t a = 0; a < m1; ++a)
        for (size_t b = 0; b < m1; ++b)
            f1_gram_[a][b] = gram(f1_fns_[a].E_odd, f1_fns_[b].E_odd);

    for (const auto& pr : state.f4_rank) {
        PairFns f;
        f.Ea = detail::transform_plain(p, pr.a, zs);
        f.Eb = detail::transform_plain(p, pr.b, zs);
        f4_fns_.push_back(std::move(f));
    }

    // sector totals from factored Grams
    auto pair_total = [&](const std::vector<SpectralStateN2::SymPair>& pairs,
                          const std::vector<PairFns>& fns) {
        cplx total = 0.0;
        for (size_t m = 0; m < pairs.size(); ++m)
            for (size_t n = 0; n < pairs.size(); ++n) {
                total += 2.0 * (gram(fns[m].Ea, fns[n].Ea) * gram(fns[m].Eb, fns[n].Eb) +
                                gram(fns[m].Ea, fns[n].Eb) * gram(fns[m].Eb, fns[n].Ea));
            }
        return total.real();
    };
    n5_ = W5 * pair_total(state.f5_rank, f5_fns_);
    n4_ = W5 * pair_total(state.f4_rank, f4_fns_);
    cplx t1 = 0.0;
    for (size_t a = 0; a < m1; ++a)
        for (size_t b = 0; b < m1; ++b) {
            PiecewiseExp ea = detail::transform_plain(p, state.f1_rank[a].even_part, zs);
            PiecewiseExp eb = detail::transform_plain(p, state.f1_rank[b].even_part, zs);
            t1 += gram(ea, eb) * f1_gram_[a][b];
        }
    n1_ = W1 * t1.real();
    cplx t23 = 0.0;
    for (const auto* lst : {&state.f2_rank, &state.f3_rank})
        for (size_t a = 0; a < lst->size(); ++a)
            for (size_t b = 0; b < lst->size(); ++b) {
                PiecewiseExp ea = detail::transform_plain(p, (*lst)[a], zs);
                PiecewiseExp eb = detail::transform_plain(p, (*lst)[b], zs);
                t23 += gram(ea, eb);
            }
    n23_ = t23.real() / (2.0 * PI);
}

double N2Evaluator::norm_exact() const { return n5_ + n1_ + n4_ + n23_; }
double N2Evaluator::rho_minus() const { return n23_; }

QubitBasisPopulations N2Evaluator::populations(double t) const {
    const PhysicalParams& p = params_;
    const double eta0 = -p.v_g * t;

    // doubly excited amplitude
    cplx a_ee = 0.0;
    if (!ee_kernel_.empty())
        a_ee = -I * p.gamma / (16.0 * PI * PI * p.v_g) * ee_kernel_.value(eta0);
    const double rho_beta = std::norm(a_ee);

    // superradiant weight beside an odd photon
    double rho_plus_odd = 0.0;
    {
        const size_t m = f1_fns_.size();
        std::vector<cplx> c(m);
        for (size_t i = 0; i < m; ++i) c[i] = f1_fns_[i].Ec_even.value(eta0);
        cplx acc = 0.0;
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j) acc += c[i] * std::conj(c[j]) * f1_gram_[i][j];
        rho_plus_odd = acc.real() / (8.0 * PI * PI * PI);
    }

    // superradiant weight beside an even photon
    double rho_plus_even = 0.0;
    if (!f5_fns_.empty()) {
        const double c1 = 4.0 * std::sqrt(p.gamma / p.v_g) * W5;
        std::vector<const PiecewiseExp*> left, right;
        std::vector<cplx> cl, cr;
        for (const auto& f : f5_fns_) {
            const cplx ha = f.Eca.value(eta0), hb = f.Ecb.value(eta0);
            left.push_back(&f.Ea);
            cl.push_back(c1 * hb);
            left.push_back(&f.Eb);
            cl.push_back(c1 * ha);
            right.push_back(&f.Eta);
            cr.push_back(c1 * hb);
            right.push_back(&f.Etb);
            cr.push_back(c1 * ha);
        }
        // stimulated-emission cloud rides behind the transmitted front
        const cplx decay = I * p.omega_q / p.v_g + p.gamma / (2.0 * p.v_g);
        PiecewiseExp rb = bound_kernel_.times_global_exp(1.0, -decay);
        const cplx c2 = 2.0 * std::pow(p.gamma / p.v_g, 1.5) * W5 *
                        std::exp(-decay * p.v_g * t);
        right.push_back(&rb);
        cr.push_back(c2);

        cplx acc = 0.0;
        for (size_t i = 0; i < left.size(); ++i)
            for (size_t j = 0; j < left.size(); ++j)
                acc += cl[i] * std::conj(cl[j]) *
                       ((*left[i]) * left[j]->conjugate()).integral(-INF, eta0);
        for (size_t i = 0; i < right.size(); ++i)
            for (size_t j = 0; j < right.size(); ++j)
                acc += cr[i] * std::conj(cr[j]) *
                       ((*right[i]) * right[j]->conjugate()).integral(eta0, INF);
        rho_plus_even = acc.real();
    }

    QubitBasisPopulations pops;
    pops.rho_beta = rho_beta;
    pops.rho_minus = n23_;
    pops.rho_plus = rho_plus_even + rho_plus_odd;
    pops.rho_gs = (n5_ - rho_plus_even - rho_beta) + (n1_ - rho_plus_odd) + n4_;
    if (pops.rho_gs < 0.0 && pops.rho_gs > -1e-9) pops.rho_gs = 0.0;
    return pops;
}

double N2Evaluator::rho_beta_dense(double t) const {
    const auto& g = *state_.grid.axis;
    const int n = g.size();
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double eps = params_.v_g * (g.nodes[i] + g.nodes[j]);
            acc += g.weights[i] * g.weights[j] * state_.f5[size_t(i) * n + j] *
                   std::exp(-I * eps * t) * eigen_beta(params_, g.nodes[i], g.nodes[j]);
        }
    return std::norm(W5 * acc);
}

double N2Evaluator::rho_plus_odd_dense(double t) const {
    const auto& g = *state_.grid.axis;
    const int n = g.size();
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        cplx gj = 0.0;
        for (int i = 0; i < n; ++i) {
            gj += g.weights[i] * state_.f1[size_t(i) * n + j] *
                  n1_eigenstate_qubit_amplitude(params_, g.nodes[i]) *
                  std::exp(-I * params_.v_g * g.nodes[i] * t);
        }
        acc += g.weights[j] * std::norm(gj);
    }
    return acc / (8.0 * PI * PI * PI);
}

// --- two-photon output channels -------------------------------------------

std::vector<N2Evaluator::Channel> N2Evaluator::rr_channels(int k12_sign, int k21_sign,
                                                           int odd_sign) const {
    const PhysicalParams& p = params_;
    std::vector<Channel> ch;
    // transmitted pair part of the interacting family; the symmetric
    // coefficient meets both orderings of the pair plane wave, hence the 2
    for (const auto& f : f5_fns_) {
        ch.push_back({f.Eta.scaled(2.0 * W5), f.Etb});
        ch.push_back({f.Etb.scaled(2.0 * W5), f.Eta});
    }
    // bound cloud: e^{(i Omega/v_g + gamma/2 v_g)(eta1 - eta2)} FXi(eta2)
    if (!bound_kernel_.empty()) {
        const cplx decay = I * p.omega_q / p.v_g + p.gamma / (2.0 * p.v_g);
        const double hi = bound_kernel_.support_hi() + 1.0;
        const cplx w = W5 * std::pow(p.gamma / p.v_g, 2.0) * cplx{0.0, -1.0};
        // anchored at the top so the growing exponential keeps a tame coefficient
        PiecewiseExp tb;
        tb.add_segment(-2.5 * state_.zscale, hi, hi, {{w * std::exp(decay * hi), decay, 0}});
        ch.push_back({tb, bound_kernel_.times_global_exp(1.0, -decay)});
    }
    // mixed-parity photon beside the scattered one; the two exchange orders
    // carry independent signs in the left-right channel
    for (const auto& pr : state_.f1_rank) {
        PiecewiseExp et = detail::transform_trans(p, pr.even_part, state_.zscale);
        PiecewiseExp eo = detail::transform_plain(p, pr.odd_part, state_.zscale);
        ch.push_back({et.scaled(k12_sign / (8.0 * PI * PI)), eo});
        ch.push_back({eo.scaled(k21_sign / (8.0 * PI * PI)), et});
    }
    // free odd pair (same symmetrization doubling)
    for (const auto& f : f4_fns_) {
        ch.push_back({f.Ea.scaled(2.0 * odd_sign * W5), f.Eb});
        ch.push_back({f.Eb.scaled(2.0 * odd_sign * W5), f.Ea});
    }
    return ch;
}

double N2Evaluator::triangle(const std::vector<Channel>& ch, double lo) const {
    cplx acc = 0.0;
    for (size_t a = 0; a < ch.size(); ++a)
        for (size_t b = 0; b < ch.size(); ++b) {
            PiecewiseExp tt = ch[a].T * ch[b].T.conjugate();
            if (tt.empty()) continue;
            PiecewiseExp w = tt.prefix(lo);
            PiecewiseExp uu = ch[a].U * ch[b].U.conjugate();
            if (uu.empty()) continue;
            acc += (uu * w).integral(lo, INF);
        }
    return acc.real();
}

double N2Evaluator::rr_probability(double T) const {
    return triangle(rr_channels(+1, +1, +1), -params_.v_g * T);
}

double N2Evaluator::ll_probability(double T) const {
    return triangle(rr_channels(-1, -1, +1), -params_.v_g * T);
}

double N2Evaluator::rl_probability(double T) const {
    // the bound cloud straddles the coordinate ordering, so the rectangle
    // splits along the diagonal into two ordered triangles with the exchange
    // signs mirrored
    return triangle(rr_channels(-1, +1, -1), -params_.v_g * T) +
           triangle(rr_channels(+1, -1, -1), -params_.v_g * T);
}

// ---------------------------------------------------------------------------

QubitBasisPopulations n2_populations(const PhysicalParams& p, const SpectralStateN2& state,
                                     double t) {
    return N2Evaluator(p, state).populations(t);
}

ConcurrenceTrace n2_concurrence_trace(const PhysicalParams& p, const SpectralStateN2& state,
                                      const std::vector<double>& times) {
    N2Evaluator ev(p, state);
    if (ev.rho_minus() > 1e-9)
        throw InvalidInput("n2_concurrence_trace: requires an empty dark state");
    ConcurrenceTrace tr;
    tr.times = times;
    for (double t : times) {
        QubitBasisPopulations pops = ev.populations(t);
        pops.rho_minus = 0.0;
        const double comp = 2.0 * std::sqrt(std::max(0.0, pops.rho_beta) *
                                            std::max(0.0, pops.rho_gs));
        tr.pops.push_back(pops);
        tr.competitor.push_back(comp);
        tr.concurrence.push_back(std::max(0.0, pops.rho_plus - comp));
    }
    return tr;
}

double two_photon_rr_probability(const PhysicalParams& p, const SpectralStateN2& state,
                                 double T_end) {
    N2Evaluator ev(p, state);
    const double p1 = ev.rr_probability(T_end);
    const double p2 = ev.rr_probability(2.0 * T_end);
    if (std::abs(p1 - p2) > 1e-3)
        throw NumericsError("two_photon_rr_probability: not converged by T_end");
    return p2;
}

std::vector<DetectionPoint> detection_ratio(const PhysicalParams& p,
                                            const std::vector<cplx>& xi_list,
                                            const WavepacketSpec& photon) {
    if (p.gamma * photon.front / p.v_g > 1e-3 + 1e-12)
        throw InvalidInput("detection_ratio: probe front too far, qubits would decay first");
    const double t_end = photon.front / p.v_g +
                         std::max(20.0 / p.gamma, 10.0 / (2.0 * photon.mu));
    const KGrid2 grid = n2_default_grid(p, photon.mu);
    const double horizon = photon.front + 2.2 * p.v_g * t_end;

    auto p_rr_for = [&](cplx xi) {
        const auto state =
            n2_project(p, PhotonQubitInitial{photon, xi}, grid, horizon);
        return two_photon_rr_probability(p, state, t_end);
    };

    const double p0 = p_rr_for({0.0, 0.0});
    if (p0 < 1e-12) throw NumericsError("detection_ratio: vanishing reference P_RR");

    std::vector<DetectionPoint> out;
    out.reserve(xi_list.size());
    for (cplx xi : xi_list) {
        DetectionPoint pt;
        pt.xi = xi;
        pt.p_rr = p_rr_for(xi);
        pt.ratio = std::abs(pt.p_rr / p0 - 1.0);
        pt.bound = 2.0 * xi.real() / (1.0 + std::norm(xi));
        out.push_back(pt);
    }
    return out;
}

} // namespace wqed
