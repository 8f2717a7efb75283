#include <cmath>
#include <random>

#include "wqed/two_ex.hpp"

namespace wqed {

cplx cpm(const PhysicalParams& p, double k, int sign) {
    return {k - p.omega_q / p.v_g, sign * p.gamma / (2.0 * p.v_g)};
}

namespace {

// shared coefficient of the bound (exponentially correlated) part
cplx bound_weight(const PhysicalParams& p, double k1, double k2) {
    const cplx c1p = cpm(p, k1, +1);
    const cplx c2m = cpm(p, k2, -1);
    const cplx denom = cpm(p, k1, +1) + cpm(p, k2, +1) - I * p.gamma / (2.0 * p.v_g);
    return (c1p + c2m) / denom;
}

} // namespace

cplx eigen_beta(const PhysicalParams& p, double k1, double k2) {
    const cplx c1p = cpm(p, k1, +1);
    const cplx c2p = cpm(p, k2, +1);
    return (2.0 * p.gamma / p.v_g) / (c1p * c2p) * (c1p + c2p) /
           (c1p + c2p - I * p.gamma / (2.0 * p.v_g));
}

cplx eigen_alpha(const PhysicalParams& p, double x, double k1, double k2,
                 bool include_bound) {
    const cplx c1p = cpm(p, k1, +1);
    const cplx c2p = cpm(p, k2, +1);
    const double pref = 2.0 * std::sqrt(p.gamma / p.v_g);
    auto left = [&](double xx) {
        return pref * (std::exp(I * k1 * xx) / c2p + std::exp(I * k2 * xx) / c1p);
    };
    auto right = [&](double xx) {
        cplx val = cpm(p, k1, -1) * std::exp(I * k1 * xx) +
                   cpm(p, k2, -1) * std::exp(I * k2 * xx);
        if (include_bound) {
            val += I * (p.gamma / p.v_g) * bound_weight(p, k1, k2) *
                   std::exp(I * (k1 + k2) * xx) *
                   std::exp(-(I * p.omega_q / p.v_g + p.gamma / (2.0 * p.v_g)) * xx);
        }
        return pref * val / (c1p * c2p);
    };
    if (x < 0.0) return left(x);
    if (x > 0.0) return right(x);
    return 0.5 * (left(0.0) + right(0.0)); // two-sided average at the coupling point
}

cplx eigen_phi(const PhysicalParams& p, double x1, double x2, double k1, double k2,
               bool include_bound) {
    if (x1 > x2) std::swap(x1, x2); // boson symmetry
    const cplx plane = std::exp(I * (k1 * x1 + k2 * x2)) + std::exp(I * (k1 * x2 + k2 * x1));
    if (x2 <= 0.0) return plane;
    const cplx t1 = cpm(p, k1, -1) / cpm(p, k1, +1);
    const cplx t2 = cpm(p, k2, -1) / cpm(p, k2, +1);
    if (x1 < 0.0)
        return t2 * std::exp(I * (k1 * x1 + k2 * x2)) + t1 * std::exp(I * (k1 * x2 + k2 * x1));
    cplx val = t1 * t2 * plane;
    if (include_bound) {
        const double eps = p.v_g * (k1 + k2);
        const cplx g2 = (p.gamma / p.v_g) * (p.gamma / p.v_g) /
                        (cpm(p, k1, +1) * cpm(p, k2, +1));
        val += g2 * bound_weight(p, k1, k2) * std::exp(I * p.omega_q * x1 / p.v_g) *
               std::exp(I * (eps - p.omega_q) * x2 / p.v_g) *
               std::exp(-p.gamma * std::abs(x2 - x1) / (2.0 * p.v_g));
    }
    return val;
}

double JumpSuiteReport::max_residual() const {
    return std::max({beta_row, phi_jump, alpha_jump, free_pde, phi_deriv_rel});
}

JumpSuiteReport run_jump_suite(const PhysicalParams& p, int samples, unsigned seed,
                               bool include_bound) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> detu(-25.0, 25.0);
    std::uniform_real_distribution<double> pos(0.3, 60.0);
    const double V = p.coupling_v();
    const double eps_side = 1e-12; // one-sided limits at the coupling point
    const double h = 1e-5;         // finite-difference step

    JumpSuiteReport rep;
    for (int s = 0; s < samples; ++s) {
        const double k1 = p.k0() + detu(rng) * p.gamma / p.v_g;
        const double k2 = p.k0() + detu(rng) * p.gamma / p.v_g;
        const double energy = p.v_g * (k1 + k2);
        const cplx beta = eigen_beta(p, k1, k2);

        // (eps - 2 Omega) beta = V alpha(0), alpha(0) the two-sided average
        {
            const cplx lhs = (energy - 2.0 * p.omega_q) * beta;
            const cplx rhs = V * eigen_alpha(p, 0.0, k1, k2, include_bound);
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
            rep.beta_row = std::max(rep.beta_row, std::abs(lhs - rhs) / scale);
        }
        // i v_g (alpha(0+) - alpha(0-)) = V beta
        {
            const cplx lhs = I * p.v_g *
                             (eigen_alpha(p, eps_side, k1, k2, include_bound) -
                              eigen_alpha(p, -eps_side, k1, k2, include_bound));
            const cplx rhs = V * beta;
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
            rep.alpha_jump = std::max(rep.alpha_jump, std::abs(lhs - rhs) / scale);
        }
        for (double sgn : {1.0, -1.0}) {
            const double x = sgn * pos(rng);
            // i v_g (phi(0+, x) - phi(0-, x)) = (V/2) alpha(x)
            const cplx jump = I * p.v_g *
                              (eigen_phi(p, eps_side, x, k1, k2, include_bound) -
                               eigen_phi(p, -eps_side, x, k1, k2, include_bound));
            const cplx rhs = 0.5 * V * eigen_alpha(p, x, k1, k2, include_bound);
            const double scale = std::max({std::abs(jump), std::abs(rhs), 1e-30});
            rep.phi_jump = std::max(rep.phi_jump, std::abs(jump - rhs) / scale);
        }
        // transport equation away from the coupling point and the diagonal
        {
            const double x1 = -pos(rng), x2 = pos(rng);
            auto phi = [&](double a, double b) {
                return eigen_phi(p, a, b, k1, k2, include_bound);
            };
            const cplx d1 = (phi(x1 + h, x2) - phi(x1 - h, x2)) / (2.0 * h);
            const cplx d2 = (phi(x1, x2 + h) - phi(x1, x2 - h)) / (2.0 * h);
            const cplx resid = energy * phi(x1, x2) + I * p.v_g * (d1 + d2);
            rep.free_pde = std::max(rep.free_pde,
                                    std::abs(resid) / std::abs(energy * phi(x1, x2)));
        }
        // (eps - Omega + i gamma/2 + i v_g d/dx) phi(0+, x) matches the 0- side
        {
            const double x = pos(rng);
            auto phi_side = [&](double side, double xx) {
                return eigen_phi(p, side, xx, k1, k2, include_bound);
            };
            const cplx dp =
                (phi_side(eps_side, x + h) - phi_side(eps_side, x - h)) / (2.0 * h);
            const cplx dm =
                (phi_side(-eps_side, x + h) - phi_side(-eps_side, x - h)) / (2.0 * h);
            const cplx lhs = (energy - p.omega_q + I * p.gamma / 2.0) *
                                 phi_side(eps_side, x) +
                             I * p.v_g * dp;
            const cplx rhs = (energy - p.omega_q - I * p.gamma / 2.0) *
                                 phi_side(-eps_side, x) +
                             I * p.v_g * dm;
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
            rep.phi_deriv_rel = std::max(rep.phi_deriv_rel, std::abs(lhs - rhs) / scale);
        }
    }
    return rep;
}

} // namespace wqed
