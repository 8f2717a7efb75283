#ifndef WQED_ORACLE_HPP
#define WQED_ORACLE_HPP

#include <variant>
#include <vector>

#include "wqed/params.hpp"
#include "wqed/trace.hpp"
#include "wqed/two_ex.hpp"
#include "wqed/wavepacket.hpp"

namespace wqed {

// Brute-force cross-check engine: the even-channel continuum is replaced by M
// discrete modes on a wavevector window, the sparse Hamiltonian is applied
// matrix-free, and the Schroedinger equation is integrated by a Chebyshev
// propagator in the frame rotating at the qubit frequency. Exists to
// arbitrate the spectral engine, so clarity beats speed.
struct DiscretizedModel {
    PhysicalParams params;
    int modes;                    // power of two
    double window;                // wavevector half-width around k0
    double spacing;               // mode spacing
    double coupling;              // mode-qubit coupling V sqrt(spacing / 2pi)
    std::vector<double> detuning; // v_g k_j - Omega

    double box_length() const { return 2.0 * PI / spacing; }
};

// pre: modes >= 256 (and a power of two for the output reconstruction)
DiscretizedModel build_discretized(const PhysicalParams& p, int modes, double window);

// qubit-weighted spectral width of the one-excitation block (quartile FWHM)
double oracle_resonance_width(const DiscretizedModel& model);

using OracleInitial = std::variant<WavepacketSpec, TwoPhotonInitial, PhotonQubitInitial>;

struct OracleResult {
    ConcurrenceTrace trace; // populations at the requested times; concurrence
                            // filled when the dark state is empty
    double norm_drift = 0.0;
    // output-channel probabilities at times.back() when requested
    double p_rr = -1.0;
    double p_ll = -1.0;
    double p_rl = -1.0;
};

// Direct integration of the discretized model. The mode spacing must resolve
// a tenth of the slowest rate in the initial state.
OracleResult oracle_evolve(const DiscretizedModel& model, const OracleInitial& initial,
                           const std::vector<double>& times, bool want_prr = false);

// Window and mode count adequate for a pulse of rate mu evolved until t_max.
DiscretizedModel oracle_model_for(const PhysicalParams& p, double mu, double extent,
                                  double width_linewidths = 30.0);

} // namespace wqed

#endif
