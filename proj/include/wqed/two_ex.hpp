#ifndef WQED_TWO_EX_HPP
#define WQED_TWO_EX_HPP

#include <memory>
#include <variant>
#include <vector>

#include "wqed/detail/transforms.hpp"
#include "wqed/expsum.hpp"
#include "wqed/kgrid.hpp"
#include "wqed/params.hpp"
#include "wqed/trace.hpp"
#include "wqed/wavepacket.hpp"

namespace wqed {

// --- closed-form two-excitation eigenfunctions (even interacting family) ---

// c^{+-}(k) = k - Omega/v_g +- i gamma/(2 v_g)
cplx cpm(const PhysicalParams& p, double k, int sign);

// doubly-excited amplitude of the interacting even pair eigenstate
cplx eigen_beta(const PhysicalParams& p, double k1, double k2);

// photon-with-superradiant-excitation amplitude alpha(x); the bound
// contribution can be dropped to expose the negative control
cplx eigen_alpha(const PhysicalParams& p, double x, double k1, double k2,
                 bool include_bound = true);

// two-photon wavefunction phi(x1, x2), symmetric under exchange; carries the
// transmission-linear part and the exponentially correlated bound part
cplx eigen_phi(const PhysicalParams& p, double x1, double x2, double k1, double k2,
               bool include_bound = true);

// residuals of the stationary two-excitation system at random samples
struct JumpSuiteReport {
    double beta_row = 0.0;       // (eps - 2 Omega) beta = V alpha(0)
    double phi_jump = 0.0;       // i v_g (phi(0+,x) - phi(0-,x)) = V/2 alpha(x)
    double alpha_jump = 0.0;     // i v_g (alpha(0+) - alpha(0-)) = V beta
    double free_pde = 0.0;       // (eps + i v_g d1 + i v_g d2) phi = 0 off the axes
    double phi_deriv_rel = 0.0;  // relation between phi derivatives across x1 = 0

    double max_residual() const;
};

JumpSuiteReport run_jump_suite(const PhysicalParams& p, int samples, unsigned seed,
                               bool include_bound = true);

// --- initial states ---

// two counter-propagating photons onto ground-state qubits
struct TwoPhotonInitial {
    WavepacketSpec right; // earlier photon, front = x0 - delta
    WavepacketSpec left;  // later photon, front = x0
};

// one rightward photon onto the prepared one-excitation qubit state xi
struct PhotonQubitInitial {
    WavepacketSpec photon;
    cplx xi;
};

using TwoExInitial = std::variant<TwoPhotonInitial, PhotonQubitInitial>;

// --- spectral state over the five two-excitation families ---

// Coefficient functions over the eigenstate families, stored dense on the
// tensor grid for checks and kept in factored closed form for evaluation.
// Family content: f5 interacting even pair, f1 even excitation x odd photon,
// f4 symmetrized odd photon pair, f2/f3 even/odd photon beside the dark state.
struct SpectralStateN2 {
    KGrid2 grid;
    std::vector<cplx> f5, f1, f4; // row-major n x n
    std::vector<cplx> f2, f3;     // length n

    struct SymPair {
        detail::RankFactor a, b; // contributes a(k1) b(k2) + b(k1) a(k2)
    };
    struct OrdPair {
        detail::RankFactor even_part, odd_part; // contributes even(k1) odd(k2)
    };
    std::vector<SymPair> f5_rank, f4_rank;
    std::vector<OrdPair> f1_rank;
    std::vector<detail::RankFactor> f2_rank, f3_rank;

    double zscale = 0.0; // retarded-coordinate span the closed forms cover

    double quadrature_norm() const; // dense-grid norm
};

// Decompose an initial state over the eigenstate families. horizon is the
// largest |x - v_g t| the closed forms must stay accurate for (defaults to a
// generous multiple of the slowest decay time).
SpectralStateN2 n2_project(const PhysicalParams& p, const TwoExInitial& initial,
                           const KGrid2& grid, double horizon = 0.0);

// Prepared evaluator: builds the closed-form kernels once, then samples
// populations and detection probabilities cheaply.
class N2Evaluator {
public:
    N2Evaluator(const PhysicalParams& p, const SpectralStateN2& state);

    QubitBasisPopulations populations(double t) const;
    double norm_exact() const;   // sector totals, should be 1
    double rho_minus() const;    // constant in time

    // probability that both photons end up in the named output channels,
    // integrated over the detector half-line at time T
    double rr_probability(double T) const;
    double ll_probability(double T) const;
    double rl_probability(double T) const;

    // dense-grid cross-checks of the closed-form path
    double rho_beta_dense(double t) const;
    double rho_plus_odd_dense(double t) const;

private:
    struct Channel; // paired (T(eta1), U(eta2)) field factorization
    double triangle(const std::vector<Channel>& ch, double lo) const;
    std::vector<Channel> rr_channels(int k12_sign, int k21_sign, int odd_sign) const;

    const PhysicalParams params_;
    const SpectralStateN2& state_;

    // per-pair transforms of the factored coefficients
    struct PairFns {
        PiecewiseExp Ea, Eb, Eca, Ecb, Eta, Etb;
    };
    std::vector<PairFns> f5_fns_;
    struct OrdFns {
        PiecewiseExp Ec_even; // (V/v_g)-weighted line response of the even factor
        PiecewiseExp E_odd;
        cplx gram_norm;
    };
    std::vector<OrdFns> f1_fns_;
    std::vector<PairFns> f4_fns_;

    PiecewiseExp bound_kernel_;   // filtered bound source (stimulated-emission cloud)
    PiecewiseExp ee_kernel_;      // filtered pair-line overlap, gives A_ee

    std::vector<std::vector<cplx>> f1_gram_; // odd-factor Gram matrix
    double n5_ = 0.0, n1_ = 0.0, n4_ = 0.0, n23_ = 0.0;
};

// populations of {gg, +, -, ee} at time t (convenience wrapper)
QubitBasisPopulations n2_populations(const PhysicalParams& p, const SpectralStateN2& state,
                                     double t);

// C(t) trace for scenarios with the dark state empty
ConcurrenceTrace n2_concurrence_trace(const PhysicalParams& p, const SpectralStateN2& state,
                                      const std::vector<double>& times);

// P_RR with a doubling convergence check against 2 T_end
double two_photon_rr_probability(const PhysicalParams& p, const SpectralStateN2& state,
                                 double T_end);

struct DetectionPoint {
    cplx xi;
    double p_rr = 0.0;
    double ratio = 0.0; // |P_RR(xi)/P_RR(0) - 1|
    double bound = 0.0; // 2 Re(xi) / (1 + |xi|^2)
};

// scan the prepared-state parameter; for real xi the ratio reproduces the
// initial concurrence, otherwise it bounds it from below
std::vector<DetectionPoint> detection_ratio(const PhysicalParams& p,
                                            const std::vector<cplx>& xi_list,
                                            const WavepacketSpec& photon);

// default tensor grid for two-excitation runs
KGrid2 n2_default_grid(const PhysicalParams& p, double mu, int n_nodes = 512);

} // namespace wqed

#endif
