#include "wqed/single_ex.hpp"

#include <cmath>

#include "wqed/detail/transforms.hpp"

namespace wqed {

namespace {

cplx c_pm(const PhysicalParams& p, double k, int sign) {
    return {k - p.omega_q / p.v_g, sign * p.gamma / (2.0 * p.v_g)};
}

} // namespace

cplx n1_transmission(const PhysicalParams& p, double k) {
    return c_pm(p, k, -1) / c_pm(p, k, +1);
}

cplx n1_eigenstate_qubit_amplitude(const PhysicalParams& p, double k) {
    return p.coupling_v() / (p.v_g * c_pm(p, k, +1));
}

double SpectralStateN1::norm() const {
    double s = std::norm(odd_qubit_amp);
    for (int i = 0; i < kgrid->size(); ++i)
        s += kgrid->weights[i] *
             (std::norm(even_coeffs[i]) + std::norm(odd_photon_coeffs[i])) / (2.0 * PI);
    return s;
}

std::shared_ptr<const KGrid> n1_default_grid(const PhysicalParams& p, double mu, int n_nodes) {
    const double scale = std::max(p.gamma, 2.0 * mu) / p.v_g;
    return std::make_shared<KGrid>(KGrid::tan_mapped(p.k0(), scale, n_nodes));
}

SpectralStateN1 n1_project(const PhysicalParams& p, const WavepacketSpec& photon,
                           std::shared_ptr<const KGrid> kgrid) {
    SpectralStateN1 st;
    st.kgrid = std::move(kgrid);
    const int n = st.kgrid->size();
    st.even_coeffs.resize(n);
    st.odd_photon_coeffs.resize(n);

    // A rightward photon splits evenly over the two parity channels; a
    // leftward one flips the odd sign. In folded coordinates both look like
    // the same left-incident envelope.
    const double odd_sign = (photon.direction == Direction::rightward) ? 1.0 : -1.0;
    const WavepacketSpec folded(photon.mu, photon.omega, photon.front);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
        const cplx amp =
            wavepacket_momentum_amplitude(folded, p.v_g, st.kgrid->nodes[i]) * inv_sqrt2;
        st.even_coeffs[i] = amp;
        st.odd_photon_coeffs[i] = odd_sign * amp;
    }

    const double captured = st.norm();
    if (captured < 1.0 - 1e-6)
        throw NumericsError("n1_project: grid captures only " + std::to_string(captured) +
                            " of the pulse norm");

    const double zscale = photon.front + 100.0 / std::min(photon.mu, p.gamma) * p.v_g;
    detail::PulseFactor fac{inv_sqrt2, photon.mu, photon.omega, photon.front};
    st.qubit_kernel = detail::transform_invc(p, fac, zscale)
                          .scaled(p.coupling_v() / (2.0 * PI * p.v_g));
    return st;
}

cplx n1_reconstruct_incident(const PhysicalParams& p, const SpectralStateN1& state, double x) {
    // incident-channel amplitude (c_e + c_o)/sqrt(2) from the dense coefficients
    cplx even = 0.0, odd = 0.0;
    const auto& g = *state.kgrid;
    for (int i = 0; i < g.size(); ++i) {
        const double k = g.nodes[i];
        const cplx phase = std::exp(I * k * x);
        const cplx photon_part =
            (x < 0.0) ? phase : phase * n1_transmission(p, k); // theta(0): average not needed off 0
        even += g.weights[i] * state.even_coeffs[i] * photon_part;
        odd += g.weights[i] * state.odd_photon_coeffs[i] * phase;
    }
    return (even + odd) / (2.0 * PI * std::sqrt(2.0));
}

cplx n1_qubit_amplitude(const PhysicalParams& p, const SpectralStateN1& state, double t) {
    return state.qubit_kernel.value(-p.v_g * t);
}

ConcurrenceTrace n1_evolve_trace(const PhysicalParams& p, const SpectralStateN1& state,
                                 const std::vector<double>& times) {
    ConcurrenceTrace tr;
    tr.times = times;
    tr.pops.reserve(times.size());
    tr.concurrence.reserve(times.size());
    tr.competitor.reserve(times.size());
    const double rho_minus = std::norm(state.odd_qubit_amp);
    for (double t : times) {
        const cplx e = state.qubit_kernel.value(-p.v_g * t);
        QubitBasisPopulations pops;
        pops.rho_plus = std::norm(e);
        pops.rho_minus = rho_minus;
        pops.rho_beta = 0.0;
        pops.rho_gs = 1.0 - pops.rho_plus - pops.rho_minus;
        tr.pops.push_back(pops);
        tr.competitor.push_back(0.0);
        tr.concurrence.push_back(pops.rho_plus);
    }
    return tr;
}

} // namespace wqed
