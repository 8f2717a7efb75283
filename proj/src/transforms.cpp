#include "wqed/detail/transforms.hpp"

#include <cmath>
#include <limits>

namespace wqed::detail {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

cplx pole_pulse(const PulseFactor& f, double v_g) { // k_u = omega/v_g - i mu/v_g
    return {f.omega / v_g, -f.mu / v_g};
}

cplx pole_plus(const PhysicalParams& p) { // c^+ zero, lower half plane
    return {p.omega_q / p.v_g, -p.gamma / (2.0 * p.v_g)};
}

cplx pole_minus(const PhysicalParams& p) { // c^- zero, upper half plane
    return {p.omega_q / p.v_g, p.gamma / (2.0 * p.v_g)};
}

void require_positive_front(const PulseFactor& f) {
    if (f.front < 0.0)
        throw InvalidInput("transforms: pulse front must sit left of the coupling point");
}

} // namespace

RankFactor scale_factor(const RankFactor& f, cplx s) {
    if (std::holds_alternative<PulseFactor>(f)) {
        PulseFactor g = std::get<PulseFactor>(f);
        g.coeff *= s;
        return g;
    }
    LineFactor g = std::get<LineFactor>(f);
    g.coeff *= s;
    return g;
}

cplx factor_value(const PhysicalParams& p, const RankFactor& f, double k) {
    if (std::holds_alternative<PulseFactor>(f)) {
        const auto& g = std::get<PulseFactor>(f);
        WavepacketSpec spec(g.mu, g.omega, g.front);
        return g.coeff * wavepacket_momentum_amplitude(spec, p.v_g, k);
    }
    const auto& g = std::get<LineFactor>(f);
    return g.coeff / (k - pole_minus(p));
}

PiecewiseExp transform_plain(const PhysicalParams& p, const RankFactor& f, double zscale) {
    (void)zscale;
    PiecewiseExp out;
    if (std::holds_alternative<PulseFactor>(f)) {
        const auto& g = std::get<PulseFactor>(f);
        require_positive_front(g);
        // 2 pi * coeff * psi(eta; a)
        const cplx c0 = 2.0 * PI * g.coeff * std::sqrt(2.0 * g.mu / p.v_g) *
                        std::exp(-I * g.omega * g.front / p.v_g);
        const cplx rate = (g.mu + I * g.omega) / p.v_g;
        out.add_segment(-INF, -g.front, -g.front, {{c0, rate, 0}});
        return out;
    }
    const auto& g = std::get<LineFactor>(f);
    // single upper-half pole: 2 pi i coeff e^{i k_- eta} for eta > 0
    out.add_segment(0.0, INF, 0.0, {{2.0 * PI * I * g.coeff, I * pole_minus(p), 0}});
    return out;
}

PiecewiseExp transform_invc(const PhysicalParams& p, const RankFactor& f, double zscale) {
    PiecewiseExp out;
    if (std::holds_alternative<PulseFactor>(f)) {
        const auto& g = std::get<PulseFactor>(f);
        require_positive_front(g);
        const cplx ku = pole_pulse(g, p.v_g);
        const cplx kc = pole_plus(p);
        // residue pair over (k - k_u)(k - k_c); the rate difference below is
        // i (k_u - k_c), hence the extra factor of i in the coefficient
        const cplx C = 2.0 * PI * I * g.coeff * std::sqrt(2.0 * g.mu / p.v_g) *
                       std::exp(-I * g.omega * g.front / p.v_g);
        auto terms = PiecewiseExp::exp_difference(C, I * ku, I * kc, zscale);
        out.add_segment(-INF, -g.front, -g.front, std::move(terms));
        return out;
    }
    const auto& g = std::get<LineFactor>(f);
    // poles on both sides of the real axis, exponential peak at eta = 0
    const cplx base = 2.0 * PI * g.coeff * p.v_g / p.gamma;
    const cplx rate_up = I * p.omega_q / p.v_g;
    const double dec = p.gamma / (2.0 * p.v_g);
    out.add_segment(-INF, 0.0, 0.0, {{base, rate_up + dec, 0}});
    out.add_segment(0.0, INF, 0.0, {{base, rate_up - dec, 0}});
    return out;
}

PiecewiseExp transform_trans(const PhysicalParams& p, const RankFactor& f, double zscale) {
    // c^-/c^+ = 1 - i (gamma / v_g) / c^+
    const cplx w = -I * p.gamma / p.v_g;
    return transform_plain(p, f, zscale) + transform_invc(p, f, zscale).scaled(w);
}

} // namespace wqed::detail
