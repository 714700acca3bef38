#pragma once

#include <memory>

#include "idde/integrator.hpp"
#include "idde/linalg.hpp"
#include "idde/lyapunov.hpp"

namespace idde {

/// Saturation: clamp to [-1, 1], equal to (|x+1| - |x-1|) / 2.
double sat(double x);

// ---------------------------------------------------------------------------
// Scalar system with a distributed-delay jump map:
//   dx/dt = -sat(x) + a sat(x(t - tau)) + b sat(w)
//   dx    = sat(integral of x over [t - tau, t]) / 4 + sat(w(t-)) / 4
// ---------------------------------------------------------------------------

struct Example1Params {
    double a = 0.2;
    double b = 0.1;
    double tau = 1.0;
    double eps = 5.0;   // weight parameter of the functional part
};

ImpulsiveSystem example1_system(const Example1Params& p = {});

/// min{ 2 - (eps+2)|a| - 2|b|, eps / ((eps+1) tau) }
double example1_mu(const Example1Params& p = {});

/// V1 = x^2 for |x| <= 1, e^{2(|x|-1)} beyond; V2 is the weighted integral of
/// sat^2(x) over the delay window. chi_flow(s) = (b^2/2) s^2 and
/// chi_jump(s) = (3/16) s^2, the quadratic majorant of (3/16) sat^2(s)
/// (sat^2 is bounded, hence not unbounded-increasing; the majorant preserves
/// the jump inequality).
LyapunovPair example1_lyapunov(const Example1Params& p = {});

// ---------------------------------------------------------------------------
// Synchronization of two delayed Lipschitz systems through delayed impulses.
// Reference:  dx/dt = A x + g(x(t - r))
// Driven:     dy/dt = A y + g(y(t - r)) + B w;  dy = C (y - x)(t - d) + D w(t-)
// Error e = y - x:
//             de/dt = A e + g(x + e)(t - r) - g(x)(t - r) + B w
//             de    = C e(t - d) + D w(t-)
// ---------------------------------------------------------------------------

struct Example2Params {
    Matrix A, B, C, D;
    double L = 27.0 / 7.0;  // Lipschitz constant of g
    double r = 0.02;        // flow delay
    double d = 0.01;        // jump delay
    double eps = 1.0;       // Lyapunov weight

    /// The delayed Chua instance: A = [-18/7 9 0; 1 -1 1; 0 -100/7 0],
    /// B = (0, 1/7, 1/7), C = -0.2 I, D = (2/7, 0, 0), r = 2d = 0.02.
    static Example2Params chua();
};

/// g(x) = sat(x_1) * (27/7, 0, 0).
void chua_g(std::span<const double> x, std::span<double> out);

/// Impulse-free reference trajectory of the x system.
Trajectory example2_reference(const Example2Params& p, const History& phi_x,
                              double t_end, double h, const SimOptions& opt = {});

/// Error dynamics against a previously computed reference trajectory.
/// Throws ConfigError when `reference` is null (the nonlinearity difference
/// needs the reference states).
ImpulsiveSystem example2_error_system(const Example2Params& p,
                                      std::shared_ptr<const Trajectory> reference);

/// Coupled (x_ref, e) system on a shared grid; the nonlinearity difference
/// g(x + e) - g(x) is evaluated exactly. Jumps act on the e block only.
ImpulsiveSystem example2_coupled_error(const Example2Params& p);

/// Coupled (x, y) form of the same pair; jumps act on the y block. Used to
/// cross-check the error formulation (e vs y - x).
ImpulsiveSystem example2_coupled_pair(const Example2Params& p);

/// V1 = e.e, V2 = eps L * integral of e.e over [t-r, t]; kappa = eps r L.
LyapunovPair example2_lyapunov(const Example2Params& p = Example2Params::chua());

// ---------------------------------------------------------------------------
// Nominal run setups
// ---------------------------------------------------------------------------

/// phi constant 1, step 0.005; inputs: 5 e^{-t} and 2 sin(14 pi t).
History example1_nominal_history(const Example1Params& p = {});
InputSignal example1_input_decay();
InputSignal example1_input_periodic();

/// Reference phi constant (0.1, 0.1, 0.1), error phi constant (0.5, -0.5, 0.5),
/// step 0.002 (divides d, r and the nominal delta = 0.01); inputs: e^{-7t}
/// and cos(16 pi t).
History example2_nominal_history(const Example2Params& p = Example2Params::chua());
InputSignal example2_input_decay();
InputSignal example2_input_periodic();

} // namespace idde
