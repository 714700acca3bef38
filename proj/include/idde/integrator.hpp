#pragma once

#include <iosfwd>

#include "idde/model.hpp"

namespace idde {

struct ImpulseEvent {
    int k = 0;          // 1-based schedule index
    double t = 0.0;
    Vec pre;
    Vec post;
    Vec delta;
};

struct SimOptions {
    double divergence_guard = 1e12;
    /// Warn (on this stream) when the step does not divide min_discrete_delay.
    std::ostream* warn_stream = nullptr;
};

/// Full record of one run: the dense trajectory on [t0 - r, t_end], the
/// applied impulse events, and the bound input signal.
struct Trajectory {
    History history;
    std::vector<ImpulseEvent> events;
    InputSignal input;
    double t0 = 0.0;
    double t_end = 0.0;
    double step = 0.0;          // requested base step
    long flow_evaluations = 0;

    int dimension() const { return history.dimension(); }
    double norm_at(double t) const { return norm2(history.eval(t)); }
    /// Component slice [offset, offset+dim) as a standalone trajectory
    /// (events and history projected; used to split co-simulated systems).
    Trajectory project(int offset, int dim) const;
};

/// Method-of-steps RK4 between impulses. The step is realigned per
/// inter-impulse interval (h' = len/ceil(len/h)) so every impulse time is a
/// grid node; delayed lookups mid-step read the dense output of completed
/// steps. At each t_k the jump map is evaluated on the left-limit view and
/// the state restarts at x(t_k-) + dx.
Trajectory simulate(const ImpulsiveSystem& sys, const History& phi,
                    const InputSignal& w, const ImpulseSchedule& sched,
                    double t_end, double h, const SimOptions& opt = {});

/// Step-halving convergence table at h, h/2, h/4.
struct RefinementTable {
    double h[3] = {0, 0, 0};
    Vec endpoint[3];
    double diff_coarse = 0.0;   // ||x_h - x_{h/2}||
    double diff_fine = 0.0;     // ||x_{h/2} - x_{h/4}||
    double observed_order = 0.0; // log2(diff_coarse / diff_fine); +inf when exact
};

RefinementTable refine_check(const ImpulsiveSystem& sys, const History& phi,
                             const InputSignal& w, const ImpulseSchedule& sched,
                             double t_end, double h, const SimOptions& opt = {});

} // namespace idde
