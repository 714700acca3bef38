#pragma once

#include <string>

#include "idde/integrator.hpp"

namespace idde {

/// Parametric stability envelope: decay part beta(s, t) = M s e^{-lambda t}
/// (M >= 1, lambda > 0), input gain gamma(s) = c s^q (c >= 0, q > 0).
struct EnvelopeSpec {
    double M = 1.0;
    double lambda = 1.0;
    double c = 0.0;
    double q = 1.0;

    double beta(double s, double dt) const;
    double gamma(double s) const;
};

struct EnvelopeCheckReport {
    bool pass = true;
    double max_excess = 0.0;           // worst ||x|| - envelope (tolerance not subtracted)
    double max_relative_violation = 0.0;
    double time_of_max = 0.0;
    long points = 0;
};

/// Pointwise check ||x(t)|| <= beta(||phi||_r, t - t0) + gamma(sup ||w|| over
/// [t0, t]) + tol on the grid (both one-sided values at jumps); the input sup
/// profile is derived from the trajectory's bound signal. tol is 1e-9
/// absolute plus 1e-6 relative to the envelope value.
EnvelopeCheckReport check_envelope(const Trajectory& traj, const EnvelopeSpec& env);

struct EnvelopeFit {
    bool success = false;
    EnvelopeSpec envelope;
    std::string failure_reason;
};

/// Least-violation witness fit: the decay rate comes from a log-linear
/// regression on the peak envelopes of the zero-input runs, M from the worst
/// ratio against that decay, and (c, q) from the driven runs' residuals over
/// their input sups. The returned spec re-passes check_envelope on every
/// member; failure is reported when a zero-input run does not decay.
EnvelopeFit fit_envelope(std::span<const Trajectory> ensemble);

struct ConvergenceReport {
    std::vector<double> ratios;   // final norm / ||phi||_r per run
    double max_ratio = 0.0;
};

/// Final-over-initial norm ratios; inputs must all be zero.
ConvergenceReport zero_input_convergence(std::span<const Trajectory> ensemble);

} // namespace idde
