#ifndef WQED_PARAMS_HPP
#define WQED_PARAMS_HPP

#include <cmath>

#include "wqed/common.hpp"

namespace wqed {

// Two identical qubits side-coupled to a lossless linear-dispersion waveguide
// at a common point x = 0 (separation small compared to the guided wavelength).
// Energies are in units with hbar = 1; the qubit pair couples only through the
// even field combination, with coupling energy gamma = V^2 / v_g.
struct PhysicalParams {
    double omega_q; // qubit transition frequency
    double gamma;   // qubit-waveguide coupling energy (superradiant linewidth)
    double v_g;     // group velocity

    PhysicalParams(double omega_q_, double gamma_, double v_g_)
        : omega_q(omega_q_), gamma(gamma_), v_g(v_g_) {
        if (!(omega_q > 0.0)) throw InvalidInput("PhysicalParams: omega_q must be > 0");
        if (!(gamma > 0.0)) throw InvalidInput("PhysicalParams: gamma must be > 0");
        if (!(v_g > 0.0)) throw InvalidInput("PhysicalParams: v_g must be > 0");
        if (!(gamma < omega_q))
            throw InvalidInput("PhysicalParams: weak coupling requires gamma < omega_q");
    }

    // Point-coupling amplitude V = sqrt(gamma * v_g).
    double coupling_v() const { return std::sqrt(gamma * v_g); }

    // Guided wavelength at the qubit transition.
    double lambda() const { return 2.0 * PI * v_g / omega_q; }

    // Resonant wavevector.
    double k0() const { return omega_q / v_g; }

    static PhysicalParams standard(double gamma = 0.01) {
        return PhysicalParams(1.0, gamma, 1.0);
    }
};

} // namespace wqed

#endif
