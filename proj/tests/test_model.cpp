#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wqed/concurrence.hpp"
#include "wqed/params.hpp"
#include "wqed/wavepacket.hpp"

using namespace wqed;

TEST_CASE("physical parameters: invariants and derived quantities") {
    PhysicalParams p(1.0, 0.01, 1.0);
    CHECK(p.coupling_v() == doctest::Approx(0.1));
    CHECK(p.lambda() == doctest::Approx(2.0 * PI));
    CHECK_THROWS_AS(PhysicalParams(1.0, -0.1, 1.0), InvalidInput);
    CHECK_THROWS_AS(PhysicalParams(1.0, 2.0, 1.0), InvalidInput); // gamma >= omega_q
    CHECK_THROWS_AS(PhysicalParams(0.0, 0.01, 1.0), InvalidInput);
}

TEST_CASE("wavepacket amplitude: support, front value, normalization") {
    PhysicalParams p = PhysicalParams::standard();
    const double mu = p.gamma / 2.0;
    const double a = 200.0 * p.lambda();
    WavepacketSpec spec(mu, p.omega_q, a);

    CHECK(wavepacket_amplitude(spec, p.v_g, -a + 1e-9) == cplx{0.0, 0.0});
    CHECK(std::abs(wavepacket_amplitude(spec, p.v_g, -a)) ==
          doctest::Approx(std::sqrt(2.0 * mu / p.v_g)));

    // numeric norm over the support (Simpson)
    const int n = 400000;
    const double L = 32.0 / mu;
    const double h = L / n;
    auto dens = [&](double x) { return std::norm(wavepacket_amplitude(spec, p.v_g, x)); };
    double norm = dens(-a) + dens(-a - L);
    for (int i = 1; i < n; ++i) norm += (i % 2 ? 4.0 : 2.0) * dens(-a - i * h);
    norm *= h / 3.0;
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("wavepacket momentum amplitude: closed form vs quadrature, Parseval") {
    PhysicalParams p = PhysicalParams::standard();
    const double mu = p.gamma / 2.0;
    WavepacketSpec spec(mu, p.omega_q, 7.5);

    // defining integral by quadrature at a few k
    for (double k : {p.k0(), p.k0() + 3.0 * mu, p.k0() - 0.7 * mu}) {
        cplx q = 0.0;
        const int n = 800000;
        const double h = 25.0 / mu / n;
        for (int i = 0; i < n; ++i) {
            const double x = -spec.front - (i + 0.5) * h;
            q += h * wavepacket_amplitude(spec, p.v_g, x) * std::exp(-I * k * x);
        }
        const cplx c = wavepacket_momentum_amplitude(spec, p.v_g, k);
        CHECK(std::abs(c - q) < 1e-6 * std::abs(c));
    }

    // |psi~|^2 peaks at the carrier
    const double pk = std::norm(wavepacket_momentum_amplitude(spec, p.v_g, p.k0()));
    CHECK(pk > std::norm(wavepacket_momentum_amplitude(spec, p.v_g, p.k0() + 0.5 * mu)));
    CHECK(pk > std::norm(wavepacket_momentum_amplitude(spec, p.v_g, p.k0() - 0.5 * mu)));

    // Parseval via the substitution k = k0 + mu tan(u), which carries the
    // Lorentzian tails out to |k - k0| ~ mu / delta
    double par = 0.0;
    const int n = 2000000;
    const double delta = 1e-8;
    const double h = (PI - 2.0 * delta) / n;
    for (int i = 0; i < n; ++i) {
        const double u = -PI / 2.0 + delta + (i + 0.5) * h;
        const double cu = std::cos(u);
        const double k = p.k0() + mu * std::tan(u);
        par += h * (mu / (cu * cu)) *
               std::norm(wavepacket_momentum_amplitude(spec, p.v_g, k)) / (2.0 * PI);
    }
    CHECK(par == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("wavepacket randomized normalization and Parseval") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double mu = 0.002 + 0.02 * U(rng);
        const double om = 0.8 + 0.4 * U(rng);
        const double a = 400.0 * U(rng);
        WavepacketSpec spec(mu, om, a);
        double norm = 0.0;
        const int n = 200000;
        const double h = 25.0 / mu / n;
        for (int i = 0; i < n; ++i)
            norm += h * std::norm(wavepacket_amplitude(spec, 1.0, -a - (i + 0.5) * h));
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("leftward packets mirror rightward ones") {
    WavepacketSpec r(0.01, 1.0, 5.0, Direction::rightward);
    WavepacketSpec l(0.01, 1.0, 5.0, Direction::leftward);
    for (double x : {-9.0, -5.0, -1.0, 2.0, 5.0, 9.0})
        CHECK(wavepacket_amplitude(l, 1.0, x) == wavepacket_amplitude(r, 1.0, -x));
    CHECK(wavepacket_momentum_amplitude(l, 1.0, -1.2) ==
          wavepacket_momentum_amplitude(r, 1.0, 1.2));
}

TEST_CASE("xi concurrence") {
    CHECK(xi_concurrence({1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(xi_concurrence({-1.0, 0.0}) == doctest::Approx(1.0));
    CHECK(xi_concurrence({0.0, 0.0}) == doctest::Approx(0.0));
    CHECK(xi_concurrence({2.0, 0.0}) == doctest::Approx(0.8));
    CHECK(xi_concurrence(cplx{std::numeric_limits<double>::infinity(), 0.0}) == 0.0);
    // relabeling symmetry C(xi) = C(1/conj(xi))
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        const cplx xi{U(rng), U(rng)};
        if (std::abs(xi) < 1e-3) continue;
        CHECK(std::abs(xi_concurrence(xi) - xi_concurrence(1.0 / std::conj(xi))) < 1e-12);
    }
}

TEST_CASE("x-state concurrence formula and guards") {
    QubitBasisPopulations g;
    g.rho_gs = 1.0;
    CHECK(x_state_concurrence(g) == 0.0);

    QubitBasisPopulations h;
    h.rho_gs = 0.5;
    h.rho_plus = 0.5;
    CHECK(x_state_concurrence(h) == doctest::Approx(0.5));

    QubitBasisPopulations c;
    c.rho_gs = 0.4;
    c.rho_plus = 0.2;
    c.rho_beta = 0.4;
    CHECK(x_state_concurrence(c) == 0.0); // clamped branch

    QubitBasisPopulations bad = h;
    bad.rho_minus = 0.1;
    bad.rho_plus = 0.4;
    CHECK_THROWS_AS(x_state_concurrence(bad), InvalidInput);
}

TEST_CASE("wootters concurrence on reference states") {
    QubitBasisPopulations plus;
    plus.rho_plus = 1.0;
    CHECK(wootters_concurrence(assemble_density_matrix(plus)) == doctest::Approx(1.0));

    QubitBasisPopulations gg;
    gg.rho_gs = 1.0;
    CHECK(wootters_concurrence(assemble_density_matrix(gg)) == doctest::Approx(0.0));

    QubitBasisPopulations mix; // 1/2 |+><+| + 1/2 |gg><gg|
    mix.rho_gs = 0.5;
    mix.rho_plus = 0.5;
    CHECK(wootters_concurrence(assemble_density_matrix(mix)) == doctest::Approx(0.5));

    QubitBasisPopulations quarter;
    quarter.rho_gs = quarter.rho_plus = quarter.rho_minus = quarter.rho_beta = 0.25;
    CHECK(wootters_concurrence(assemble_density_matrix(quarter)) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("general Wootters equals the diagonal formula on 1000 random states") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double w[3] = {U(rng), U(rng), U(rng)};
        std::sort(w, w + 3);
        QubitBasisPopulations pops;
        pops.rho_gs = w[0];
        pops.rho_plus = w[1] - w[0];
        pops.rho_beta = w[2] - w[1];
        pops.rho_minus = 1.0 - w[2];
        // the diagonal formula is established only with the dark state empty
        pops.rho_gs += pops.rho_minus;
        pops.rho_minus = 0.0;
        const double a = x_state_concurrence(pops);
        const double b = wootters_concurrence(assemble_density_matrix(pops));
        worst = std::max(worst, std::abs(a - b));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("density matrix validation rejects bad input") {
    TwoQubitDensityMatrix rho{};
    rho(0, 0) = 0.9; // trace != 1
    CHECK_THROWS_AS(wootters_concurrence(rho), InvalidInput);
    rho(0, 0) = 1.0;
    rho(0, 1) = {0.2, 0.1}; // not Hermitian
    CHECK_THROWS_AS(wootters_concurrence(rho), InvalidInput);
}
