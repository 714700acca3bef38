#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idde/history.hpp"

namespace idde {

// ---------------------------------------------------------------------------
// Impulse time sequences
// ---------------------------------------------------------------------------

/// Sequence classes: minimum dwell (every gap >= delta), maximum dwell
/// (every gap <= delta, including the gap from t0 to the first impulse),
/// or unconstrained.
enum class ScheduleClass { InfDwell, SupDwell, All };

struct ImpulseSchedule {
    std::vector<double> times;                      // strictly increasing
    ScheduleClass declared = ScheduleClass::All;
    double delta = 0.0;                             // dwell bound for the declared class
};

struct ScheduleValidation {
    bool ok = true;
    std::size_t violating_index = 0;  // 1-based impulse index k whose gap fails
    double gap = 0.0;
    std::string message;
};

/// Checks the declared dwell-time class over all consecutive gaps (the first
/// gap is measured from t0). Non-monotone times are a structural error, not a
/// class violation.
ScheduleValidation validate_schedule(const ImpulseSchedule& s, double t0);

/// t_k = t0 + k * delta for k = 1..count.
ImpulseSchedule gen_periodic(double t0, double delta, int count);

/// Gaps drawn uniformly from [delta_min, delta_max] with a SplitMix64 stream;
/// the result validates as InfDwell(delta_min) and as SupDwell(delta_max).
ImpulseSchedule gen_random_dwell(double t0, double delta_min, double delta_max,
                                 int count, std::uint64_t seed);

/// Largest number of impulse times in any interval (t_k - d, t_k); zero for
/// periodic schedules with gap >= d.
int zeta_from_schedule(const ImpulseSchedule& s, double d);

// ---------------------------------------------------------------------------
// Deterministic counter-based generator (documented in the README so streams
// reproduce across implementations)
// ---------------------------------------------------------------------------

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
};

// ---------------------------------------------------------------------------
// Input signals
// ---------------------------------------------------------------------------

/// Piecewise right-continuous input w : [t0, inf) -> R^m with analytic left
/// limits. The parametric kinds are scalar (m = 1); tables may be vector
/// valued.
class InputSignal {
public:
    enum class Kind { Zero, ExpDecay, Sinusoid, PiecewiseConstant };

    static InputSignal zero(int dimension = 1);
    /// w(t) = amplitude * exp(-rate * (t - origin))
    static InputSignal exp_decay(double amplitude, double rate, double origin = 0.0);
    /// w(t) = amplitude * sin(omega * t + phase)
    static InputSignal sinusoid(double amplitude, double omega, double phase = 0.0);
    /// Right-continuous plateaus: w(t) = values[i] for t in [times[i], times[i+1]).
    /// Before times[0] the first plateau applies.
    static InputSignal piecewise_constant(std::vector<double> times,
                                          std::vector<Vec> values);

    Kind kind() const { return kind_; }
    int dimension() const { return dim_; }
    bool is_zero() const { return kind_ == Kind::Zero; }

    void value_into(double t, std::span<double> out) const;
    Vec value(double t) const;
    void left_limit_into(double t, std::span<double> out) const;
    Vec left_limit(double t) const;

    /// Exact sup of ||w|| over [a, b] (closed-form per kind; includes left
    /// limits at table breakpoints).
    double window_sup(double a, double b) const;

private:
    Kind kind_ = Kind::Zero;
    int dim_ = 1;
    double amplitude_ = 0.0;
    double rate_ = 0.0;      // decay rate or angular frequency
    double phase_ = 0.0;     // sinusoid phase or decay origin
    std::vector<double> table_times_;
    std::vector<Vec> table_values_;
};

// ---------------------------------------------------------------------------
// Delayed-state view
// ---------------------------------------------------------------------------

/// Read-only window onto a trajectory at anchor time t: offset evaluation
/// x(t+s) for s in [-lookback, 0], windowed sup-norms and windowed integrals.
/// Flow maps receive views whose offset-0 value may be a stage estimate not
/// yet recorded in the history; jump maps receive left-limit views where
/// offset 0 is x(t-).
class StateView {
public:
    StateView(const History& h, double t, double lookback);
    StateView(const History& h, double t, double lookback, std::span<const double> current);

    double time() const { return t_; }
    int dimension() const { return hist_->dimension(); }
    double lookback() const { return lookback_; }

    void at_into(double offset, std::span<double> out) const;
    Vec at(double offset) const;
    /// Scalar convenience for one-dimensional systems.
    double at1(double offset) const;

    double sup_norm(double window) const;
    Vec integral(double window) const;
    double integrate(double window,
                     const std::function<double(double, std::span<const double>)>& g) const;

private:
    const History* hist_;
    double t_;
    double lookback_;
    std::span<const double> current_; // empty => delegate offset 0 to the history

    void check_offset(double offset) const;
    void check_window(double window) const;
};

// ---------------------------------------------------------------------------
// Impulsive time-delay system
// ---------------------------------------------------------------------------

using FlowMap = std::function<void(double t, const StateView& x,
                                   std::span<const double> w, std::span<double> dxdt)>;
using JumpMap = std::function<void(int k, double t, const StateView& x_minus,
                                   std::span<const double> w_minus, std::span<double> dx)>;

/// dx/dt = flow(t, x_t, w(t)) between impulses; x jumps by
/// jump(k, t_k, x_{t-}, w(t-)) at schedule times. Zero must be an equilibrium
/// of both maps. `delay_bound` is the maximal lookback either map uses;
/// `min_discrete_delay` (0 if none) lets the integrator enforce that the step
/// does not exceed the smallest pointwise delay.
struct ImpulsiveSystem {
    int dimension = 1;
    int input_dimension = 1;
    double delay_bound = 0.0;
    double min_discrete_delay = 0.0;
    FlowMap flow;
    JumpMap jump;
};

} // namespace idde
