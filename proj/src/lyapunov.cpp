#include "idde/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace idde {

namespace {

double eval_V2(const LyapunovPair& p, const History& h, double t) {
    if (!p.V2) return 0.0;
    StateView view(h, t, p.lookback);
    return p.V2(t, view);
}

/// V1 at every node (pre and post sides appear as separate nodes).
std::vector<double> v1_series(const LyapunovPair& p, const History& h) {
    std::vector<double> v(h.node_count());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = p.V1(h.node_time(i), h.node_value(i));
    return v;
}

/// sup of precomputed node values over times in [t - window, t]; `last` is
/// the index of the anchor node (its side decides the value at t). The
/// pre-side duplicate exactly at the window start is skipped: it is the left
/// limit of data outside the window.
double sup_nodes(const History& h, const std::vector<double>& vals,
                 std::size_t last, double window) {
    const double a = h.node_time(last) - window;
    double best = vals[last];
    for (std::size_t i = last; i-- > 0;) {
        const double ti = h.node_time(i);
        if (ti < a) break;
        if (ti == a && i + 1 < h.node_count() && h.node_time(i + 1) == a) continue;
        best = std::max(best, vals[i]);
    }
    return best;
}

} // namespace

VTriple eval_V(const LyapunovPair& p, const Trajectory& traj, double t) {
    if (!p.V1) throw ParameterError("eval_V: pair has no V1");
    const History& h = traj.history;
    if (t < traj.t0 || t > h.now())
        throw RangeError("eval_V: t outside the trajectory domain");
    VTriple out;
    Vec x = h.eval(t);
    out.V1 = p.V1(t, x);
    out.V2 = eval_V2(p, h, t);
    out.V = out.V1 + out.V2;
    return out;
}

double dini_estimate(const LyapunovPair& p, const Trajectory& traj, double t, double h) {
    if (h <= 0.0) throw ParameterError("dini_estimate: h must be > 0");
    for (const auto& ev : traj.events)
        if (ev.t > t && ev.t <= t + h)
            throw ContractError("dini_estimate: (t, t+h] straddles an impulse time; "
                                "the estimate is defined along continuous evolution only");
    const VTriple a = eval_V(p, traj, t);
    const VTriple b = eval_V(p, traj, t + h);
    return (b.V - a.V) / h;
}

FlowConditionReport check_flow_condition(const LyapunovPair& p, const Trajectory& traj,
                                         double mu, FlowConditionMode mode,
                                         double tol_scale) {
    if (!p.V1) throw ParameterError("check_flow_condition: pair has no V1");
    const History& h = traj.history;
    FlowConditionReport rep;
    rep.tol_scale = tol_scale;
    rep.max_excess = -std::numeric_limits<double>::infinity();

    const double sign = (mode == FlowConditionMode::Decay) ? 1.0 : -1.0;
    Vec wbuf(traj.input.dimension());

    const std::size_t n = h.node_count();
    // V per node, evaluated lazily so consecutive pairs share one evaluation
    double v_next = 0.0;
    bool have_next = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double ti = h.node_time(i);
        if (ti < traj.t0 || !h.interval_continuous(i)) {
            have_next = false;
            continue;
        }
        const double tj = h.node_time(i + 1);
        double v_here;
        if (have_next) {
            v_here = v_next;
        } else {
            v_here = p.V1(ti, h.node_value(i)) + eval_V2(p, h, ti);
        }
        v_next = p.V1(tj, h.node_value(i + 1)) + eval_V2(p, h, tj);
        have_next = true;

        const double dplus = (v_next - v_here) / (tj - ti);
        traj.input.value_into(ti, wbuf);
        const double gain = p.chi_flow ? p.chi_flow(norm2(wbuf)) : 0.0;
        const double excess = dplus + sign * mu * v_here - gain;
        ++rep.points;
        if (excess > rep.max_excess) {
            rep.max_excess = excess;
            rep.time_of_max = ti;
        }
        if (excess > tol_scale * (1.0 + std::abs(v_here))) ++rep.violations;
    }
    if (rep.points == 0) rep.max_excess = 0.0;
    return rep;
}

JumpConditionReport check_jump_condition(const LyapunovPair& p, const Trajectory& traj,
                                         double rho1, double rho2, JumpGainArg gain_arg,
                                         double tol_scale) {
    if (!p.V1) throw ParameterError("check_jump_condition: pair has no V1");
    const History& h = traj.history;
    JumpConditionReport rep;
    rep.tol_scale = tol_scale;
    rep.max_excess = -std::numeric_limits<double>::infinity();

    const std::vector<double> v1 = v1_series(p, h);
    const double window = p.lookback;

    for (const auto& ev : traj.events) {
        // the pre-side node at ev.t: first node at that time
        std::size_t pre_idx = h.first_node_at_or_after(ev.t);
        const double v1_pre = p.V1(ev.t, ev.pre);
        const double v1_post = p.V1(ev.t, ev.post);
        const double sup_v1 = sup_nodes(h, v1, pre_idx, window);

        double gain = 0.0;
        if (p.chi_jump) {
            double arg;
            if (gain_arg == JumpGainArg::LeftValue) {
                arg = norm2(traj.input.left_limit(ev.t));
            } else {
                arg = traj.input.window_sup(ev.t - window, ev.t);
            }
            gain = p.chi_jump(arg);
        }

        JumpConditionReport::PerEvent pe;
        pe.k = ev.k;
        pe.t = ev.t;
        pe.excess = v1_post - rho1 * v1_pre - rho2 * sup_v1 - gain;
        pe.violation = pe.excess > tol_scale * (1.0 + std::abs(v1_post));
        if (pe.violation) ++rep.violations;
        if (pe.excess > rep.max_excess) rep.max_excess = pe.excess;
        rep.events.push_back(pe);
    }
    if (rep.events.empty()) rep.max_excess = 0.0;
    return rep;
}

FunctionalBoundReport check_functional_bound(const LyapunovPair& p, const Trajectory& traj,
                                             double tol_scale) {
    if (!p.kappa)
        throw ConfigError("check_functional_bound: pair has no comparison gain kappa");
    if (!p.V1) throw ParameterError("check_functional_bound: pair has no V1");
    const History& h = traj.history;
    FunctionalBoundReport rep;
    rep.tol_scale = tol_scale;
    rep.max_excess = -std::numeric_limits<double>::infinity();

    const std::vector<double> v1 = v1_series(p, h);
    for (std::size_t i = 0; i < h.node_count(); ++i) {
        const double t = h.node_time(i);
        if (t < traj.t0) continue;
        const double v2 = eval_V2(p, h, t);
        const double sup_v1 = sup_nodes(h, v1, i, p.lookback);
        const double excess = v2 - *p.kappa * sup_v1;
        ++rep.points;
        if (excess > rep.max_excess) {
            rep.max_excess = excess;
            rep.time_of_max = t;
        }
        if (excess > tol_scale * (1.0 + std::abs(v2))) ++rep.violations;
    }
    if (rep.points == 0) rep.max_excess = 0.0;
    return rep;
}

} // namespace idde
