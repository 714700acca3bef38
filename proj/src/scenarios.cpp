#include "idde/scenarios.hpp"

#include <cmath>

namespace idde {

double sat(double x) { return 0.5 * (std::abs(x + 1.0) - std::abs(x - 1.0)); }

// ---------------------------------------------------------------------------
// Example 1
// ---------------------------------------------------------------------------

ImpulsiveSystem example1_system(const Example1Params& p) {
    if (p.tau <= 0.0) throw ParameterError("example1_system: tau must be > 0");
    ImpulsiveSystem sys;
    sys.dimension = 1;
    sys.input_dimension = 1;
    sys.delay_bound = p.tau;
    sys.min_discrete_delay = p.tau;
    sys.flow = [p](double, const StateView& x, std::span<const double> w,
                   std::span<double> dxdt) {
        dxdt[0] = -sat(x.at1(0.0)) + p.a * sat(x.at1(-p.tau)) + p.b * sat(w[0]);
    };
    sys.jump = [p](int, double, const StateView& x, std::span<const double> w,
                   std::span<double> dx) {
        const double integral = x.integral(p.tau)[0];
        dx[0] = 0.25 * sat(integral) + 0.25 * sat(w[0]);
    };
    return sys;
}

double example1_mu(const Example1Params& p) {
    const double flow_rate = 2.0 - (p.eps + 2.0) * std::abs(p.a) - 2.0 * std::abs(p.b);
    const double functional_rate = p.eps / ((p.eps + 1.0) * p.tau);
    return std::min(flow_rate, functional_rate);
}

LyapunovPair example1_lyapunov(const Example1Params& p) {
    if (p.eps <= 0.0) throw ParameterError("example1_lyapunov: eps must be > 0");
    LyapunovPair pair;
    pair.lookback = p.tau;
    pair.mu = example1_mu(p);
    pair.V1 = [](double, std::span<const double> x) {
        const double ax = std::abs(x[0]);
        return ax <= 1.0 ? x[0] * x[0] : std::exp(2.0 * (ax - 1.0));
    };
    pair.V2 = [p](double t, const StateView& xt) {
        const double a_abs = std::abs(p.a);
        return a_abs * xt.integrate(p.tau, [&](double u, std::span<const double> x) {
            const double s = u - t; // in [-tau, 0]
            const double sx = sat(x[0]);
            return sx * sx * (p.eps + 1.0 + p.eps * s / p.tau);
        });
    };
    pair.alpha1 = [](double s) { return std::min(s * s, std::exp(2.0 * (s - 1.0))); };
    pair.alpha2 = [](double s) { return std::max(s * s, std::exp(2.0 * (s - 1.0))); };
    pair.alpha3 = [p](double s) {
        return std::abs(p.a) * p.tau * (1.0 + 0.5 * p.eps) * s * s;
    };
    pair.chi_flow = [p](double s) { return 0.5 * p.b * p.b * s * s; };
    pair.chi_jump = [](double s) { return 3.0 / 16.0 * s * s; };
    return pair;
}

History example1_nominal_history(const Example1Params& p) {
    const double one = 1.0;
    return History::constant(1, 0.0, p.tau, std::span<const double>(&one, 1));
}

InputSignal example1_input_decay() { return InputSignal::exp_decay(5.0, 1.0); }
InputSignal example1_input_periodic() { return InputSignal::sinusoid(2.0, 14.0 * M_PI); }

// ---------------------------------------------------------------------------
// Example 2
// ---------------------------------------------------------------------------

Example2Params Example2Params::chua() {
    Example2Params p;
    p.A = Matrix{{-18.0 / 7.0, 9.0, 0.0}, {1.0, -1.0, 1.0}, {0.0, -100.0 / 7.0, 0.0}};
    p.B = Matrix{{0.0}, {1.0 / 7.0}, {1.0 / 7.0}};
    p.C = -0.2 * Matrix::identity(3);
    p.D = Matrix{{2.0 / 7.0}, {0.0}, {0.0}};
    return p;
}

void chua_g(std::span<const double> x, std::span<double> out) {
    out[0] = 27.0 / 7.0 * sat(x[0]);
    out[1] = 0.0;
    out[2] = 0.0;
}

namespace {

void check_example2(const Example2Params& p) {
    if (p.A.rows() != 3 || p.A.cols() != 3 || p.C.rows() != 3 || p.C.cols() != 3)
        throw ParameterError("example2: A and C must be 3x3");
    if (p.B.rows() != 3 || p.B.cols() != 1 || p.D.rows() != 3 || p.D.cols() != 1)
        throw ParameterError("example2: B and D must be 3x1");
    if (p.r < 0.0 || p.d < 0.0) throw ParameterError("example2: delays must be >= 0");
}

} // namespace

Trajectory example2_reference(const Example2Params& p, const History& phi_x,
                              double t_end, double h, const SimOptions& opt) {
    check_example2(p);
    ImpulsiveSystem sys;
    sys.dimension = 3;
    sys.input_dimension = 1;
    sys.delay_bound = p.r;
    sys.min_discrete_delay = p.r;
    sys.flow = [p](double, const StateView& x, std::span<const double>,
                   std::span<double> dxdt) {
        double xr[3], x0[3], gx[3];
        x.at_into(-p.r, std::span<double>(xr, 3));
        x.at_into(0.0, std::span<double>(x0, 3));
        chua_g(std::span<const double>(xr, 3), std::span<double>(gx, 3));
        for (int i = 0; i < 3; ++i) {
            double s = gx[i];
            for (int j = 0; j < 3; ++j) s += p.A(i, j) * x0[j];
            dxdt[static_cast<std::size_t>(i)] = s;
        }
    };
    return simulate(sys, phi_x, InputSignal::zero(1), ImpulseSchedule{}, t_end, h, opt);
}

ImpulsiveSystem example2_error_system(const Example2Params& p,
                                      std::shared_ptr<const Trajectory> reference) {
    check_example2(p);
    if (!reference)
        throw ConfigError("example2_error_system: a reference trajectory is required "
                          "(the nonlinearity difference reads the reference states)");
    ImpulsiveSystem sys;
    sys.dimension = 3;
    sys.input_dimension = 1;
    sys.delay_bound = std::max(p.r, p.d);
    sys.min_discrete_delay = std::min(p.r, p.d);
    sys.flow = [p, reference](double t, const StateView& e, std::span<const double> w,
                              std::span<double> dedt) {
        double ed[3], xd[3], yd[3], gx[3], gy[3], e0[3];
        e.at_into(-p.r, std::span<double>(ed, 3));
        reference->history.eval_into(t - p.r, std::span<double>(xd, 3));
        for (int i = 0; i < 3; ++i) yd[i] = xd[i] + ed[i];
        chua_g(std::span<const double>(xd, 3), std::span<double>(gx, 3));
        chua_g(std::span<const double>(yd, 3), std::span<double>(gy, 3));
        e.at_into(0.0, std::span<double>(e0, 3));
        for (int i = 0; i < 3; ++i) {
            double s = gy[i] - gx[i] + p.B(i, 0) * w[0];
            for (int j = 0; j < 3; ++j) s += p.A(i, j) * e0[j];
            dedt[static_cast<std::size_t>(i)] = s;
        }
    };
    sys.jump = [p](int, double, const StateView& e, std::span<const double> w,
                   std::span<double> dx) {
        double ed[3];
        e.at_into(-p.d, std::span<double>(ed, 3));
        for (int i = 0; i < 3; ++i) {
            double s = p.D(i, 0) * w[0];
            for (int j = 0; j < 3; ++j) s += p.C(i, j) * ed[j];
            dx[static_cast<std::size_t>(i)] = s;
        }
    };
    return sys;
}

ImpulsiveSystem example2_coupled_error(const Example2Params& p) {
    check_example2(p);
    ImpulsiveSystem sys;
    sys.dimension = 6; // (x_ref, e)
    sys.input_dimension = 1;
    sys.delay_bound = std::max(p.r, p.d);
    sys.min_discrete_delay = std::min(p.r, p.d);
    sys.flow = [p](double, const StateView& z, std::span<const double> w,
                   std::span<double> dzdt) {
        double zd[6], z0[6], gx[3], gy[3], yd[3];
        z.at_into(-p.r, std::span<double>(zd, 6));
        z.at_into(0.0, std::span<double>(z0, 6));
        chua_g(std::span<const double>(zd, 3), std::span<double>(gx, 3));
        for (int i = 0; i < 3; ++i) yd[i] = zd[i] + zd[3 + i];
        chua_g(std::span<const double>(yd, 3), std::span<double>(gy, 3));
        for (int i = 0; i < 3; ++i) {
            double sx = gx[i];
            double se = gy[i] - gx[i] + p.B(i, 0) * w[0];
            for (int j = 0; j < 3; ++j) {
                sx += p.A(i, j) * z0[j];
                se += p.A(i, j) * z0[3 + j];
            }
            dzdt[static_cast<std::size_t>(i)] = sx;
            dzdt[static_cast<std::size_t>(3 + i)] = se;
        }
    };
    sys.jump = [p](int, double, const StateView& z, std::span<const double> w,
                   std::span<double> dz) {
        double zd[6];
        z.at_into(-p.d, std::span<double>(zd, 6));
        for (int i = 0; i < 3; ++i) {
            dz[static_cast<std::size_t>(i)] = 0.0;
            double s = p.D(i, 0) * w[0];
            for (int j = 0; j < 3; ++j) s += p.C(i, j) * zd[3 + j];
            dz[static_cast<std::size_t>(3 + i)] = s;
        }
    };
    return sys;
}

ImpulsiveSystem example2_coupled_pair(const Example2Params& p) {
    check_example2(p);
    ImpulsiveSystem sys;
    sys.dimension = 6; // (x, y)
    sys.input_dimension = 1;
    sys.delay_bound = std::max(p.r, p.d);
    sys.min_discrete_delay = std::min(p.r, p.d);
    sys.flow = [p](double, const StateView& z, std::span<const double> w,
                   std::span<double> dzdt) {
        double zd[6], z0[6], gx[3], gy[3];
        z.at_into(-p.r, std::span<double>(zd, 6));
        z.at_into(0.0, std::span<double>(z0, 6));
        chua_g(std::span<const double>(zd, 3), std::span<double>(gx, 3));
        chua_g(std::span<const double>(zd + 3, 3), std::span<double>(gy, 3));
        for (int i = 0; i < 3; ++i) {
            double sx = gx[i];
            double sy = gy[i] + p.B(i, 0) * w[0];
            for (int j = 0; j < 3; ++j) {
                sx += p.A(i, j) * z0[j];
                sy += p.A(i, j) * z0[3 + j];
            }
            dzdt[static_cast<std::size_t>(i)] = sx;
            dzdt[static_cast<std::size_t>(3 + i)] = sy;
        }
    };
    sys.jump = [p](int, double, const StateView& z, std::span<const double> w,
                   std::span<double> dz) {
        double zd[6];
        z.at_into(-p.d, std::span<double>(zd, 6));
        for (int i = 0; i < 3; ++i) {
            dz[static_cast<std::size_t>(i)] = 0.0;
            double s = p.D(i, 0) * w[0];
            for (int j = 0; j < 3; ++j) s += p.C(i, j) * (zd[3 + j] - zd[j]);
            dz[static_cast<std::size_t>(3 + i)] = s;
        }
    };
    return sys;
}

LyapunovPair example2_lyapunov(const Example2Params& p) {
    LyapunovPair pair;
    pair.lookback = p.r;
    pair.kappa = p.eps * p.r * p.L;
    pair.V1 = [](double, std::span<const double> e) {
        double s = 0.0;
        for (double v : e) s += v * v;
        return s;
    };
    pair.V2 = [p](double, const StateView& et) {
        return p.eps * p.L *
               et.integrate(p.r, [](double, std::span<const double> e) {
                   double s = 0.0;
                   for (double v : e) s += v * v;
                   return s;
               });
    };
    pair.alpha1 = [](double s) { return s * s; };
    pair.alpha2 = [](double s) { return s * s; };
    pair.alpha3 = [p](double s) { return p.eps * p.L * p.r * s * s; };
    return pair;
}

History example2_nominal_history(const Example2Params& p) {
    const Vec z0 = {0.1, 0.1, 0.1, 0.5, -0.5, 0.5};
    return History::constant(6, 0.0, std::max(p.r, p.d), z0);
}

InputSignal example2_input_decay() { return InputSignal::exp_decay(1.0, 7.0); }
InputSignal example2_input_periodic() { return InputSignal::sinusoid(1.0, 16.0 * M_PI, M_PI_2); }

} // namespace idde
