#pragma once

#include <optional>

#include "idde/integrator.hpp"

namespace idde {

/// Candidate pair V(t, x_t) = V1(t, x(t)) + V2(t, x_t): a pointwise function
/// part that sees the jumps plus a history functional that is continuous
/// along trajectories. alpha1/alpha2 sandwich V1, alpha3 bounds V2; kappa
/// compares V2 against a windowed sup of V1; chi_flow / chi_jump are the
/// input gains of the flow and jump conditions (absent means zero gain).
struct LyapunovPair {
    std::function<double(double t, std::span<const double> x)> V1;
    std::function<double(double t, const StateView& xt)> V2; // null => 0
    std::function<double(double)> alpha1, alpha2, alpha3;
    std::optional<double> kappa;
    std::function<double(double)> chi_flow, chi_jump;
    double lookback = 0.0;   // window V2 reads; must not exceed the system delay bound
    double mu = 0.0;         // scenario-attached flow rate metadata
};

struct VTriple {
    double V = 0.0;
    double V1 = 0.0;
    double V2 = 0.0;
};

/// V at the right-continuous state x(t); V2 through the trajectory's history
/// view (windowed integrals use the history quadrature).
VTriple eval_V(const LyapunovPair& p, const Trajectory& traj, double t);

/// Forward-difference estimate [V(t+h) - V(t)] / h of the upper right-hand
/// derivative; (t, t+h] must not contain an impulse time.
double dini_estimate(const LyapunovPair& p, const Trajectory& traj, double t, double h);

enum class FlowConditionMode {
    Decay,  // D+V <= -mu V + chi(||w||)
    Growth, // D+V <= +mu V + chi(||w||)
};

/// Which argument the jump gain receives: the input's left limit at the
/// impulse, or the sup of ||w|| over the lookback window ending there.
enum class JumpGainArg { LeftValue, WindowSup };

struct FlowConditionReport {
    double max_excess = 0.0;
    double time_of_max = 0.0;
    long violations = 0;      // points with excess > tol_scale * (1 + |V|)
    long points = 0;
    double tol_scale = 0.0;

    bool pass() const { return violations == 0; }
};

/// Scans every inter-impulse grid interval of the finalized trajectory and
/// reports the worst excess of the flow condition.
FlowConditionReport check_flow_condition(const LyapunovPair& p, const Trajectory& traj,
                                         double mu,
                                         FlowConditionMode mode = FlowConditionMode::Decay,
                                         double tol_scale = 1e-6);

struct JumpConditionReport {
    struct PerEvent {
        int k = 0;
        double t = 0.0;
        double excess = 0.0;
        bool violation = false;
    };
    std::vector<PerEvent> events;
    double max_excess = 0.0;
    long violations = 0;
    double tol_scale = 0.0;

    bool pass() const { return violations == 0; }
};

/// Per impulse event: excess of V1(t_k, post) over
/// rho1 V1(t_k-, pre) + rho2 sup_{[-r,0]} V1 + chi_jump(gain argument).
JumpConditionReport check_jump_condition(const LyapunovPair& p, const Trajectory& traj,
                                         double rho1, double rho2,
                                         JumpGainArg gain_arg = JumpGainArg::LeftValue,
                                         double tol_scale = 1e-6);

struct FunctionalBoundReport {
    double max_excess = 0.0;
    double time_of_max = 0.0;
    long violations = 0;
    long points = 0;
    double tol_scale = 0.0;

    bool pass() const { return violations == 0; }
};

/// V2(t, x_t) <= kappa * sup_{[-r,0]} V1 on every grid point; requires
/// p.kappa.
FunctionalBoundReport check_functional_bound(const LyapunovPair& p, const Trajectory& traj,
                                             double tol_scale = 1e-6);

} // namespace idde
