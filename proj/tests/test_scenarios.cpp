#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wqed/scenarios.hpp"
#include "wqed/single_ex.hpp"

using namespace wqed;

TEST_CASE("generation driver: defaults and ordering") {
    ScenarioConfig cfg;
    cfg.samples = 700;
    auto result = run_generation(cfg);
    REQUIRE(result.traces.size() == 3);
    const double peak_matched = result.traces[0].trace.peak_concurrence();
    CHECK(peak_matched == doctest::Approx(0.27).epsilon(0.075)); // 0.27 +- 0.02
    CHECK(result.traces[1].trace.peak_concurrence() < peak_matched);
    CHECK(result.traces[2].trace.peak_concurrence() < peak_matched);
    // reported axis starts before arrival with a flat zero baseline
    const auto tg = result.traces[0].t_gamma(cfg.params.gamma);
    CHECK(tg.front() == doctest::Approx(-1.0));
    CHECK(result.traces[0].trace.concurrence.front() == 0.0);
}

TEST_CASE("vanishing coupling produces a flat trace") {
    // fixed pulse, coupling sent toward zero: the qubits stop responding
    PhysicalParams weak(1.0, 1e-7, 1.0);
    const double mu = 0.005;
    auto st = n1_project(weak, WavepacketSpec(mu, 1.0, 400.0), n1_default_grid(weak, mu));
    std::vector<double> times;
    for (int i = 0; i <= 200; ++i) times.push_back(i * 4000.0 / 200.0);
    CHECK(n1_evolve_trace(weak, st, times).peak_concurrence() < 1e-4);
}

TEST_CASE("death and revival detector on synthetic traces") {
    LabeledTrace lt;
    lt.arrival = 0.0;
    lt.trace.times = {0.0, 1.0, 2.0, 3.0, 4.0};
    auto mk = [](double c, double plus) {
        QubitBasisPopulations p;
        p.rho_plus = plus;
        p.rho_gs = 1.0 - plus;
        return p;
    };
    lt.trace.concurrence = {0.1, 0.0, 0.0, 0.05, 0.04};
    lt.trace.competitor = {0.0, 0.3, 0.3, 0.0, 0.0};
    for (double c : lt.trace.concurrence) lt.trace.pops.push_back(mk(c, 0.2));
    auto rep = detect_death_revival(lt, 1.0);
    CHECK(rep.death_intervals.size() == 1);
    CHECK(rep.revival);
    CHECK(!rep.never_entangled);

    // single-photon style trace: competitor always zero, no death
    LabeledTrace solo;
    solo.arrival = 0.0;
    solo.trace.times = {0.0, 1.0, 2.0};
    solo.trace.concurrence = {0.05, 0.2, 0.1};
    solo.trace.competitor = {0.0, 0.0, 0.0};
    for (double c : solo.trace.concurrence) solo.trace.pops.push_back(mk(c, c));
    auto rep2 = detect_death_revival(solo, 1.0);
    CHECK(rep2.death_intervals.empty());
    CHECK(!rep2.revival);

    // all-dead trace classifies as never entangled
    LabeledTrace flat;
    flat.arrival = 0.0;
    flat.trace.times = {0.0, 1.0};
    flat.trace.concurrence = {0.0, 0.0};
    flat.trace.competitor = {0.5, 0.5};
    for (int i = 0; i < 2; ++i) flat.trace.pops.push_back(mk(0.0, 0.4));
    auto rep3 = detect_death_revival(flat, 1.0);
    CHECK(rep3.never_entangled);
}

TEST_CASE("manipulation scan covers the delay phenomenology") {
    ScenarioConfig cfg;
    cfg.mu = cfg.params.gamma / 2.0;
    cfg.samples = 700;
    auto result = run_manipulation(cfg);
    REQUIRE(result.traces.size() == 16);
    CHECK(result.reports.front().never_entangled); // zero delay
    bool death_with_revival = false, death_without = false;
    for (size_t i = 1; i < result.reports.size(); ++i) {
        const auto& rep = result.reports[i];
        if (!rep.death_intervals.empty() && rep.revival) death_with_revival = true;
        if (!rep.death_intervals.empty() && !rep.revival && !rep.never_entangled)
            death_without = true;
    }
    CHECK(death_with_revival);
    CHECK(death_without);
    // the largest delay factorizes into two matched single-photon peaks
    const auto& far = result.reports.back();
    REQUIRE(far.peak_values.size() == 2);
    for (double pk : far.peak_values)
        CHECK(pk == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(0.05));
}

TEST_CASE("detection scan: universal curve and strongest coupling") {
    ScenarioConfig cfg;
    cfg.scenario = ScenarioKind::detection;
    cfg.mu = 1.0 / 3000.0;
    cfg.gamma_grid = {cfg.mu / 2.0, 2.0 * cfg.mu};
    cfg.xi_grid = {{-2.0, 0.0}, {-1.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {3.0, 0.0}};
    auto result = run_detection(cfg);
    REQUIRE(result.rows.size() == 10);
    for (const auto& row : result.rows) {
        const double c = xi_concurrence(row.xi);
        if (row.xi.real() >= 0.0)
            CHECK(std::abs(row.ratio - c) < 1e-6);
        CHECK(std::abs(row.ratio - std::abs(row.bound)) < 1e-9);
    }
    CHECK(result.gamma_at_max == doctest::Approx(cfg.mu / 2.0));
}

TEST_CASE("determinism: identical configurations give identical numbers") {
    ScenarioConfig cfg;
    cfg.samples = 300;
    auto a = run_generation(cfg);
    auto b = run_generation(cfg);
    for (size_t m = 0; m < a.traces.size(); ++m)
        for (size_t i = 0; i < a.traces[m].trace.size(); ++i)
            CHECK(a.traces[m].trace.concurrence[i] == b.traces[m].trace.concurrence[i]);
}
