#ifndef WQED_SINGLE_EX_HPP
#define WQED_SINGLE_EX_HPP

#include <memory>
#include <vector>

#include "wqed/expsum.hpp"
#include "wqed/kgrid.hpp"
#include "wqed/params.hpp"
#include "wqed/trace.hpp"
#include "wqed/wavepacket.hpp"

namespace wqed {

// Single-photon transmission through the pair in the even channel,
// t(k) = c^-/c^+ with c^± = k - Omega/v_g ± i gamma/(2 v_g); unit modulus.
cplx n1_transmission(const PhysicalParams& p, double k);

// Qubit amplitude of the even-sector one-excitation scattering state whose
// photon part is e^{ikx} [theta(-x) + t(k) theta(x)]:  V / (v_g k - Omega + i gamma/2).
cplx n1_eigenstate_qubit_amplitude(const PhysicalParams& p, double k);

// One-excitation state resolved over the even scattering eigenstates and the
// free odd plane waves (measure dk/2pi each), plus the dark-state amplitude.
struct SpectralStateN1 {
    std::shared_ptr<const KGrid> kgrid;
    std::vector<cplx> even_coeffs;
    std::vector<cplx> odd_photon_coeffs;
    cplx odd_qubit_amp{0.0, 0.0};

    // closed-form evolution kernel for the superradiant amplitude
    PiecewiseExp qubit_kernel;

    double norm() const;
};

// Split a normalized incident photon into even/odd channels and project onto
// the scattering eigenbasis. Throws NumericsError if the grid captures less
// than 1 - 1e-6 of the norm.
SpectralStateN1 n1_project(const PhysicalParams& p, const WavepacketSpec& photon,
                           std::shared_ptr<const KGrid> kgrid);

// Reconstruct the incident-channel envelope at t = 0 from the dense
// projection (round-trip identity check).
cplx n1_reconstruct_incident(const PhysicalParams& p, const SpectralStateN1& state, double x);

// Superradiant amplitude at time t (closed form).
cplx n1_qubit_amplitude(const PhysicalParams& p, const SpectralStateN1& state, double t);

// C(t) = rho_+(t) for a photon scattering off ground-state qubits.
ConcurrenceTrace n1_evolve_trace(const PhysicalParams& p, const SpectralStateN1& state,
                                 const std::vector<double>& times);

// Default grid for a pulse: centered on the qubit line, scaled to the wider
// of the qubit and pulse linewidths.
std::shared_ptr<const KGrid> n1_default_grid(const PhysicalParams& p, double mu,
                                             int n_nodes = 1024);

} // namespace wqed

#endif
