#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "idde/lyapunov.hpp"
#include "idde/scenarios.hpp"

namespace idde {

/// Everything needed to run one scenario: the system to integrate, its
/// initial history and bound input, the impulse schedule, and the analysis
/// projection (the component slice norms, envelopes and Lyapunov checks
/// apply to; co-simulated scenarios carry auxiliary components).
struct ScenarioRun {
    std::string name;
    ImpulsiveSystem system;
    History initial;
    InputSignal input;
    ImpulseSchedule schedule;
    double t_end = 0.0;
    double step = 0.0;
    std::optional<LyapunovPair> pair;   // defined on the analysis slice
    int analysis_offset = 0;
    int analysis_dim = 0;
    std::optional<Example1Params> ex1;
    std::optional<Example2Params> ex2;

    ScenarioRun() : initial(1, 0.0, 0.0) {}
};

/// Parses the run configuration. Top-level keys: system, input, schedule,
/// initial_history, integration. Unknown keys are rejected at every level.
ScenarioRun load_run_config(const nlohmann::json& j);
ScenarioRun load_run_config_file(const std::string& path);

/// Runs the configured scenario and returns the analysis-slice trajectory
/// (the full trajectory too, for co-simulated scenarios).
struct ScenarioResult {
    Trajectory full;
    Trajectory analysis;
};
ScenarioResult run_scenario(const ScenarioRun& cfg, const SimOptions& opt = {});

} // namespace idde
