#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wqed/oracle.hpp"
#include "wqed/single_ex.hpp"

using namespace wqed;

namespace {
const PhysicalParams P = PhysicalParams::standard();
}

TEST_CASE("discretized block shows the superradiant resonance width") {
    auto model = build_discretized(P, 512, 0.2);
    const double width = oracle_resonance_width(model);
    CHECK(width == doctest::Approx(P.gamma).epsilon(0.10));
}

TEST_CASE("validation: mode count and resolution guards") {
    CHECK_THROWS_AS(build_discretized(P, 128, 0.2), InvalidInput);
    CHECK_THROWS_AS(build_discretized(P, 300, 0.2), InvalidInput); // not a power of two
    auto coarse = build_discretized(P, 256, 4.0);                  // spacing far too wide
    WavepacketSpec photon(P.gamma / 2.0, P.omega_q, 200.0);
    CHECK_THROWS_AS(oracle_evolve(coarse, photon, {10.0}), NumericsError);
}

TEST_CASE("vanishing coupling freezes the qubit") {
    PhysicalParams weak(1.0, 1e-10, 1.0);
    auto model = oracle_model_for(weak, 0.005, 3000.0);
    // couplings scale as sqrt(gamma): effectively decoupled columns
    CHECK(model.coupling < 1e-6);
}

TEST_CASE("single-photon generation against the closed-form trace") {
    const double mu = P.gamma / 2.0;
    const double a = 2.0 / P.gamma;
    WavepacketSpec photon(mu, P.omega_q, a);
    const double t_max = a + 12.0 / P.gamma;
    auto model = oracle_model_for(P, mu, 1.3 * t_max * P.v_g);

    std::vector<double> times;
    for (int i = 0; i <= 60; ++i) times.push_back(i * t_max / 60.0);
    auto res = oracle_evolve(model, photon, times);

    CHECK(res.norm_drift < 1e-6);
    double peak = 0.0, worst = 0.0;
    for (size_t i = 0; i < times.size(); ++i) {
        const double tp = times[i] - a;
        const double want =
            tp <= 0.0 ? 0.0 : 0.5 * P.gamma * P.gamma * tp * tp * std::exp(-P.gamma * tp);
        worst = std::max(worst, std::abs(res.trace.concurrence[i] - want));
        peak = std::max(peak, res.trace.concurrence[i]);
    }
    CHECK(worst < 1e-2);
    CHECK(peak == doctest::Approx(0.27).epsilon(0.12)); // 0.27 +- 0.03
}

TEST_CASE("doubling the mode count moves the peak by less than 1e-3") {
    const double mu = P.gamma / 2.0;
    const double a = 2.0 / P.gamma;
    WavepacketSpec photon(mu, P.omega_q, a);
    std::vector<double> times{a + 2.0 / P.gamma}; // analytic peak position

    auto base = oracle_model_for(P, mu, 800.0);
    auto fine = build_discretized(P, base.modes * 2, base.window);
    const double c1 = oracle_evolve(base, photon, times).trace.concurrence[0];
    const double c2 = oracle_evolve(fine, photon, times).trace.concurrence[0];
    CHECK(std::abs(c1 - c2) < 1e-3);
}

TEST_CASE("simultaneous photons: no entanglement on the brute-force side either") {
    const double mu = P.gamma / 2.0;
    const double a = 1.5 / P.gamma;
    TwoPhotonInitial pair{WavepacketSpec(mu, P.omega_q, a, Direction::rightward),
                          WavepacketSpec(mu, P.omega_q, a, Direction::leftward)};
    const double t_max = a + 10.0 / P.gamma;
    auto model = oracle_model_for(P, mu, 1.3 * t_max * P.v_g);
    std::vector<double> times;
    for (int i = 0; i <= 40; ++i) times.push_back(i * t_max / 40.0);
    auto res = oracle_evolve(model, pair, times);
    CHECK(res.norm_drift < 1e-6);
    double cmax = 0.0, plus_max = 0.0;
    for (size_t i = 0; i < times.size(); ++i) {
        cmax = std::max(cmax, res.trace.concurrence[i]);
        plus_max = std::max(plus_max, res.trace.pops[i].rho_plus);
    }
    CHECK(cmax < 2e-3);
    CHECK(plus_max > 0.1);
}
