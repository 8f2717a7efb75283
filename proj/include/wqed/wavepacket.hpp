#ifndef WQED_WAVEPACKET_HPP
#define WQED_WAVEPACKET_HPP

#include "wqed/common.hpp"
#include "wqed/params.hpp"

namespace wqed {

enum class Direction { rightward, leftward };

// Single-photon pulse with an exponential envelope and a sharp wavefront,
//   psi(x; a) = sqrt(2 mu / v_g) e^{mu a / v_g} e^{-mu |x| / v_g} e^{i omega x / v_g} theta(-x - a),
// the profile emitted by a source qubit of linewidth mu. A rightward packet
// with front offset `front` has support x <= -front and unit norm for
// front >= 0; a leftward packet is the spatial mirror (support x >= front).
struct WavepacketSpec {
    double mu;      // envelope rate (half the spectral linewidth)
    double omega;   // carrier frequency
    double front;   // wavefront offset a
    Direction direction = Direction::rightward;

    WavepacketSpec(double mu_, double omega_, double front_,
                   Direction dir = Direction::rightward)
        : mu(mu_), omega(omega_), front(front_), direction(dir) {
        if (!(mu > 0.0)) throw InvalidInput("WavepacketSpec: mu must be > 0");
        if (!(omega > 0.0)) throw InvalidInput("WavepacketSpec: omega must be > 0");
    }
};

// psi(x) for the packet, theta(0) = 1 at the wavefront.
cplx wavepacket_amplitude(const WavepacketSpec& spec, double v_g, double x);

// Fourier transform psi~(k) = \int dx psi(x; a) e^{-ikx} of a rightward packet
// (for a leftward packet, of its mirror envelope). Satisfies the Parseval
// identity \int |psi~(k)|^2 dk / 2pi = 1 for front >= 0.
cplx wavepacket_momentum_amplitude(const WavepacketSpec& spec, double v_g, double k);

} // namespace wqed

#endif
