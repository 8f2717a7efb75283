#ifndef WQED_CONCURRENCE_HPP
#define WQED_CONCURRENCE_HPP

#include <array>

#include "wqed/common.hpp"

namespace wqed {

// Reduced two-qubit density matrix in the ordered basis {|gg>, |+>, |->, |ee>},
// where |+-> = (|eg> +- |ge>)/sqrt(2) are the super- and subradiant states.
struct TwoQubitDensityMatrix {
    std::array<std::array<cplx, 4>, 4> entries{};

    cplx& operator()(int r, int c) { return entries[r][c]; }
    const cplx& operator()(int r, int c) const { return entries[r][c]; }

    // Hermiticity, unit trace and positivity within the stated tolerances.
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-12,
                  double psd_tol = 1e-10) const;
};

// Populations of {|gg>, |+>, |->, |ee>} plus the only coherence that survives
// the scattering scenarios (between |+> and |->); photon sectors of different
// number trace to orthogonal environments, so everything else vanishes.
struct QubitBasisPopulations {
    double rho_gs = 0.0;
    double rho_plus = 0.0;
    double rho_minus = 0.0;
    double rho_beta = 0.0; // population of |ee>
    cplx coh_pm{0.0, 0.0};

    void validate(double tol = 1e-9) const;
};

// Wootters concurrence of a general two-qubit state: C = max(0, l1-l2-l3-l4)
// with l_i the decreasing square roots of the eigenvalues of rho * rho~,
// rho~ the spin-flipped conjugate in the computational basis.
double wootters_concurrence(const TwoQubitDensityMatrix& rho);

// Concurrence of the diagonal scattering states, C = max(0, rho_+ - 2 sqrt(rho_ee rho_gg)).
// Valid only when rho_minus and the +- coherence vanish; rejected otherwise.
double x_state_concurrence(const QubitBasisPopulations& pops, double precond_tol = 1e-9);

// Concurrence of the one-excitation qubit state (s1+ + xi s2+)|0>/sqrt(1+|xi|^2):
// C(xi) = 2|xi| / (1 + |xi|^2). The limit xi -> inf gives 0.
double xi_concurrence(cplx xi);

// Diagonal density matrix from populations plus the single +- coherence pair.
TwoQubitDensityMatrix assemble_density_matrix(const QubitBasisPopulations& pops);

} // namespace wqed

#endif
