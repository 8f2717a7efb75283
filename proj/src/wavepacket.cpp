#include "wqed/wavepacket.hpp"

#include <cmath>

namespace wqed {

namespace {

// Rightward-convention amplitude evaluated literally from the definition.
cplx folded_amplitude(const WavepacketSpec& s, double v_g, double x) {
    if (x > -s.front) return {0.0, 0.0}; // theta(0) = 1: the front itself is included
    const double norm = std::sqrt(2.0 * s.mu / v_g);
    const double env = std::exp(s.mu * s.front / v_g) * std::exp(-s.mu * std::abs(x) / v_g);
    return norm * env * std::exp(I * (s.omega * x / v_g));
}

// FT of the rightward-convention envelope, \int dx psi(x;a) e^{-ikx}.
cplx folded_momentum(const WavepacketSpec& s, double v_g, double k) {
    const double norm = std::sqrt(2.0 * s.mu / v_g);
    const cplx iq = I * (s.omega / v_g - k);
    const double upper = std::min(0.0, -s.front);
    // tail x < min(0, -a), where |x| = -x
    cplx result = std::exp((s.mu / v_g + iq) * upper) / (s.mu / v_g + iq);
    if (s.front < 0.0) {
        // segment 0 < x <= -a present only for a < 0
        const cplx r = -s.mu / v_g + iq;
        result += (std::exp(r * (-s.front)) - 1.0) / r;
    }
    return norm * std::exp(s.mu * s.front / v_g) * result;
}

} // namespace

cplx wavepacket_amplitude(const WavepacketSpec& spec, double v_g, double x) {
    if (spec.direction == Direction::rightward) return folded_amplitude(spec, v_g, x);
    return folded_amplitude(spec, v_g, -x);
}

cplx wavepacket_momentum_amplitude(const WavepacketSpec& spec, double v_g, double k) {
    if (spec.direction == Direction::rightward) return folded_momentum(spec, v_g, k);
    return folded_momentum(spec, v_g, -k);
}

} // namespace wqed
