#ifndef WQED_SCENARIOS_HPP
#define WQED_SCENARIOS_HPP

#include <optional>
#include <string>
#include <vector>

#include "wqed/oracle.hpp"
#include "wqed/params.hpp"
#include "wqed/trace.hpp"
#include "wqed/two_ex.hpp"
#include "wqed/wavepacket.hpp"

namespace wqed {

enum class ScenarioKind { generation, manipulation, detection };
enum class EngineKind { analytic, oracle, both };

struct ScenarioConfig {
    PhysicalParams params = PhysicalParams::standard();
    ScenarioKind scenario = ScenarioKind::generation;
    double mu = 0.005;    // pulse rate; generation also runs its standard set
    double omega = 1.0;   // carrier
    double x0 = 0.0;      // nominal front distance; 0 = scenario default
    std::vector<double> delta_scan; // manipulation delays; empty = default scan
    std::vector<cplx> xi_grid;      // detection; empty = default real grid
    std::vector<double> gamma_grid; // detection couplings; empty = default
    std::vector<double> mu_grid;    // detection pulse rates; empty = {mu}
    EngineKind engine = EngineKind::analytic;
    int samples = 900;              // trace samples
    double horizon = 14.0;          // trace span past last arrival, units 1/gamma
    int grid_nodes = 512;           // dense spectral grid per axis
    int oracle_modes = 0;           // 0 = automatic
};

// deviation between the two engines on a common time axis
struct EngineDeviation {
    double max_pop = 0.0;
    double max_conc = 0.0;
};

struct LabeledTrace {
    double mu = 0.0;
    double delta = 0.0;
    double arrival = 0.0; // first-photon arrival, raw time units
    ConcurrenceTrace trace;
    std::optional<ConcurrenceTrace> oracle_trace;
    std::optional<EngineDeviation> deviation;

    // reported axis: gamma (t - arrival)
    std::vector<double> t_gamma(double gamma) const;
};

// Entanglement collapse bookkeeping: stretches where the clamped concurrence
// sits at zero while the superradiant state is still populated, and whether
// the entanglement returns afterwards.
struct DeathRevivalReport {
    std::vector<std::pair<double, double>> death_intervals; // in gamma (t - arrival)
    bool revival = false;
    bool never_entangled = false;
    std::vector<double> peak_values;
};

DeathRevivalReport detect_death_revival(const LabeledTrace& lt, double gamma,
                                        double threshold = 0.01);

struct GenerationResult {
    std::vector<LabeledTrace> traces; // one per pulse rate
};

struct ManipulationResult {
    std::vector<LabeledTrace> traces; // one per delay
    std::vector<DeathRevivalReport> reports;
};

struct DetectionResult {
    struct Row {
        double gamma;
        double mu;
        cplx xi;
        double p_rr;
        double ratio;
        double bound;
    };
    std::vector<Row> rows;
    double gamma_at_max = 0.0; // coupling maximizing max_xi P_RR
    std::optional<EngineDeviation> deviation;
    double oracle_p_rr_dev = 0.0; // only when cross-checked
};

GenerationResult run_generation(const ScenarioConfig& config);
ManipulationResult run_manipulation(const ScenarioConfig& config);
DetectionResult run_detection(const ScenarioConfig& config);

std::vector<double> default_delta_scan(double gamma);
std::vector<double> default_gamma_grid(double mu);
std::vector<cplx> default_xi_grid();

} // namespace wqed

#endif
