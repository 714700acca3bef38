#include "idde/integrator.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace idde {

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace

Trajectory Trajectory::project(int offset, int dim) const {
    Trajectory out{history.project(offset, dim), {}, input, t0, t_end, step, flow_evaluations};
    out.events.reserve(events.size());
    for (const auto& ev : events) {
        ImpulseEvent p;
        p.k = ev.k;
        p.t = ev.t;
        p.pre.assign(ev.pre.begin() + offset, ev.pre.begin() + offset + dim);
        p.post.assign(ev.post.begin() + offset, ev.post.begin() + offset + dim);
        p.delta.assign(ev.delta.begin() + offset, ev.delta.begin() + offset + dim);
        out.events.push_back(std::move(p));
    }
    return out;
}

Trajectory simulate(const ImpulsiveSystem& sys, const History& phi,
                    const InputSignal& w, const ImpulseSchedule& sched,
                    double t_end, double h, const SimOptions& opt) {
    if (h <= 0.0) throw ParameterError("simulate: step must be > 0");
    if (!sys.flow) throw ParameterError("simulate: system has no flow map");
    if (phi.dimension() != sys.dimension)
        throw ParameterError("simulate: initial history dimension mismatch");
    if (w.dimension() != sys.input_dimension)
        throw ParameterError("simulate: input dimension mismatch");

    const double t0 = phi.now();
    if (t_end <= t0) throw ParameterError("simulate: t_end must exceed the history end");
    {
        const double tol = 1e-9 * std::max(1.0, sys.delay_bound);
        if (phi.start() > t0 - sys.delay_bound + tol)
            throw ParameterError("simulate: initial history does not cover the lookback window");
    }
    auto validation = validate_schedule(sched, t0);
    if (!validation.ok)
        throw ParameterError("simulate: schedule violates its declared class: " + validation.message);
    if (sys.min_discrete_delay > 0.0) {
        if (h > sys.min_discrete_delay * (1.0 + 1e-12))
            throw ParameterError("simulate: step exceeds the smallest discrete delay; "
                                 "delayed stage lookups would land inside the current step");
        double q = sys.min_discrete_delay / h;
        if (std::abs(q - std::round(q)) > 1e-9 && opt.warn_stream)
            (*opt.warn_stream) << "warning: step " << h << " does not divide the discrete delay "
                               << sys.min_discrete_delay
                               << "; propagated derivative kinks may reduce the observed order\n";
    }

    Trajectory traj{phi, {}, w, t0, t_end, h, 0};
    History& hist = traj.history;

    const int n = sys.dimension;
    const int m = sys.input_dimension;
    Vec y(hist.eval(t0));
    Vec k1(n), k2(n), k3(n), k4(n), ytmp(n), wbuf(m), f_end(n), delta(n), post(n);

    auto eval_flow = [&](double t, std::span<const double> state, std::span<double> out) {
        w.value_into(t, wbuf);
        StateView view(hist, t, sys.delay_bound, state);
        sys.flow(t, view, wbuf, out);
        ++traj.flow_evaluations;
    };

    // boundaries: impulse times in (t0, t_end) plus t_end itself
    std::vector<double> bounds;
    for (double tk : sched.times)
        if (tk > t0 && tk < t_end) bounds.push_back(tk);
    bounds.push_back(t_end);

    // the initial function's outgoing slope at t0 is replaced by the vector field
    eval_flow(t0, y, k1);
    hist.set_end_outgoing_slope(k1);

    double t = t0;
    std::size_t next_event = 0; // index into sched.times of the next unapplied impulse
    while (next_event < sched.times.size() && sched.times[next_event] <= t0) ++next_event;

    for (double b : bounds) {
        const double len = b - t;
        const long steps = std::max<long>(1, static_cast<long>(std::ceil(len / h - 1e-12)));
        const double hs = len / static_cast<double>(steps);
        for (long s = 0; s < steps; ++s) {
            const double tn = (s + 1 == steps) ? b : t + hs;
            const double tm = t + 0.5 * hs;

            // k1 already holds f(t, y)
            for (int c = 0; c < n; ++c) ytmp[c] = y[c] + 0.5 * hs * k1[c];
            eval_flow(tm, ytmp, k2);
            for (int c = 0; c < n; ++c) ytmp[c] = y[c] + 0.5 * hs * k2[c];
            eval_flow(tm, ytmp, k3);
            for (int c = 0; c < n; ++c) ytmp[c] = y[c] + hs * k3[c];
            eval_flow(tn, ytmp, k4);
            for (int c = 0; c < n; ++c)
                y[c] += hs / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);

            if (!all_finite(y) || norm2(y) > opt.divergence_guard) {
                std::ostringstream os;
                os << "simulate: state norm exceeded the divergence guard at t = " << tn;
                throw DivergenceError(os.str(), tn);
            }

            eval_flow(tn, y, f_end); // node slope; doubles as k1 of the next step
            hist.append_node(tn, y, f_end);
            k1 = f_end;
            t = tn;
        }

        // apply the impulse scheduled exactly at this boundary, if any
        if (next_event < sched.times.size() && sched.times[next_event] == b) {
            const int k = static_cast<int>(next_event) + 1;
            StateView left(hist, b, sys.delay_bound); // offset 0 = x(b-) while post is unrecorded
            w.left_limit_into(b, wbuf);
            std::fill(delta.begin(), delta.end(), 0.0);
            if (sys.jump) sys.jump(k, b, left, wbuf, delta);
            for (int c = 0; c < n; ++c) post[c] = y[c] + delta[c];

            if (!all_finite(post) || norm2(post) > opt.divergence_guard) {
                std::ostringstream os;
                os << "simulate: post-impulse state exceeded the divergence guard at t = " << b;
                throw DivergenceError(os.str(), b);
            }

            ImpulseEvent ev;
            ev.k = k;
            ev.t = b;
            ev.pre = y;
            ev.post = post;
            ev.delta = delta;
            traj.events.push_back(std::move(ev));

            eval_flow(b, post, f_end); // post-jump vector field for dense output
            hist.apply_jump(b, post, f_end);
            y = post;
            k1 = f_end;
            ++next_event;
        }
    }

    return traj;
}

RefinementTable refine_check(const ImpulsiveSystem& sys, const History& phi,
                             const InputSignal& w, const ImpulseSchedule& sched,
                             double t_end, double h, const SimOptions& opt) {
    RefinementTable table;
    for (int i = 0; i < 3; ++i) {
        const double hi = h / static_cast<double>(1 << i);
        table.h[i] = hi;
        Trajectory traj = simulate(sys, phi, w, sched, t_end, hi, opt);
        table.endpoint[i] = traj.history.eval(t_end);
    }
    Vec d(table.endpoint[0].size());
    for (std::size_t c = 0; c < d.size(); ++c)
        d[c] = table.endpoint[0][c] - table.endpoint[1][c];
    table.diff_coarse = norm2(d);
    for (std::size_t c = 0; c < d.size(); ++c)
        d[c] = table.endpoint[1][c] - table.endpoint[2][c];
    table.diff_fine = norm2(d);

    if (table.diff_fine == 0.0)
        table.observed_order = std::numeric_limits<double>::infinity();
    else
        table.observed_order = std::log2(table.diff_coarse / table.diff_fine);
    return table;
}

} // namespace idde
