#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wqed/single_ex.hpp"
#include "wqed/two_ex.hpp"

using namespace wqed;

namespace {
const PhysicalParams P = PhysicalParams::standard();
}

TEST_CASE("c_pm coefficients") {
    CHECK(std::abs(cpm(P, P.k0(), +1) - cplx{0.0, P.gamma / 2.0}) < 1e-15);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> U(-20.0, 20.0);
    for (int i = 0; i < 30; ++i) {
        const double k = P.k0() + U(rng) * P.gamma;
        CHECK(std::abs(std::conj(cpm(P, k, +1)) - cpm(P, k, -1)) < 1e-15);
        CHECK(std::abs(cpm(P, k, -1) / cpm(P, k, +1) - n1_transmission(P, k)) < 1e-14);
    }
}

TEST_CASE("doubly excited amplitude at resonance") {
    // both wavevectors on the line: beta = -16/gamma
    const cplx b = eigen_beta(P, P.k0(), P.k0());
    CHECK(std::abs(b - cplx{-16.0 / P.gamma, 0.0}) < 1e-9 / P.gamma);
    // exchange symmetry and high-detuning falloff
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> U(-15.0, 15.0);
    for (int i = 0; i < 30; ++i) {
        const double k1 = P.k0() + U(rng) * P.gamma, k2 = P.k0() + U(rng) * P.gamma;
        CHECK(std::abs(eigen_beta(P, k1, k2) - eigen_beta(P, k2, k1)) < 1e-12 * std::abs(b));
    }
    CHECK(std::abs(eigen_beta(P, P.k0() + 3000.0 * P.gamma, P.k0())) < 1e-3 * std::abs(b));
}

TEST_CASE("alpha: incident branch and exchange symmetry") {
    const double k1 = P.k0() + 1.7 * P.gamma, k2 = P.k0() - 0.4 * P.gamma;
    for (double x : {-9.3, -0.7}) {
        const cplx want = 2.0 * std::sqrt(P.gamma / P.v_g) *
                          (std::exp(I * k1 * x) / cpm(P, k2, +1) +
                           std::exp(I * k2 * x) / cpm(P, k1, +1));
        CHECK(std::abs(eigen_alpha(P, x, k1, k2) - want) < 1e-12 * std::abs(want));
        CHECK(std::abs(eigen_alpha(P, x, k1, k2) - eigen_alpha(P, x, k2, k1)) < 1e-13);
    }
    // gamma -> 0: transmitted branch joins the incident one continuously
    PhysicalParams weak(1.0, 1e-10, 1.0);
    const double kk1 = weak.k0() + 0.005, kk2 = weak.k0() - 0.003;
    const cplx below = eigen_alpha(weak, -1e-9, kk1, kk2);
    const cplx above = eigen_alpha(weak, +1e-9, kk1, kk2);
    CHECK(std::abs(above - below) < 1e-7 * std::abs(below));
}

TEST_CASE("phi: plane-wave region, resonance transmission, boson symmetry") {
    const double k1 = P.k0() + 0.9 * P.gamma, k2 = P.k0() - 2.1 * P.gamma;
    // coincident coordinates in the incident region
    for (double x : {-4.0, -0.2}) {
        CHECK(std::abs(eigen_phi(P, x, x, k1, k2) -
                       2.0 * std::exp(I * (k1 + k2) * x)) < 1e-12);
    }
    // one photon transmitted at resonance picks up a sign flip
    const double kr = P.k0();
    const cplx mixed = eigen_phi(P, -2.0, 3.0, kr, kr);
    const cplx incident = std::exp(I * kr * (-2.0 + 3.0));
    CHECK(std::abs(mixed + 2.0 * incident) < 1e-9);
    // exchange symmetry across the full plane
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> X(-30.0, 30.0);
    for (int i = 0; i < 40; ++i) {
        const double a = X(rng), b = X(rng);
        const cplx d = eigen_phi(P, a, b, k1, k2) - eigen_phi(P, b, a, k1, k2);
        CHECK(std::abs(d) < 1e-12);
    }
}

TEST_CASE("stationary system: all five relations") {
    const auto rep = run_jump_suite(P, 20, 123, true);
    CHECK(rep.beta_row < 1e-8);
    CHECK(rep.alpha_jump < 1e-8);
    CHECK(rep.phi_jump < 1e-8);
    CHECK(rep.free_pde < 1e-8);
    CHECK(rep.phi_deriv_rel < 1e-8);
}

TEST_CASE("negative control: dropping the bound part breaks the system") {
    const auto rep = run_jump_suite(P, 20, 123, false);
    CHECK(rep.max_residual() > 1e-3);
}

TEST_CASE("jump relations hold off the default parameter point") {
    PhysicalParams q(1.0, 0.07, 1.0);
    const auto rep = run_jump_suite(q, 20, 77, true);
    CHECK(rep.max_residual() < 1e-8);
}
