#include "idde/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace idde {

double EnvelopeSpec::beta(double s, double dt) const {
    return M * s * std::exp(-lambda * dt);
}

double EnvelopeSpec::gamma(double s) const {
    return s <= 0.0 ? 0.0 : c * std::pow(s, q);
}

namespace {

struct NormSeries {
    std::vector<double> t;
    std::vector<double> norm;   // ||x|| at grid nodes (pre and post sides)
    std::vector<double> w_sup;  // running sup of ||w|| over [t0, t_i]
    double phi_norm = 0.0;
};

NormSeries norm_series(const Trajectory& traj) {
    NormSeries s;
    const History& h = traj.history;
    s.phi_norm = h.sup_norm_window(traj.t0, h.horizon());
    double running = 0.0;
    double prev_t = traj.t0;
    for (std::size_t i = h.first_node_at_or_after(traj.t0); i < h.node_count(); ++i) {
        const double t = h.node_time(i);
        running = std::max(running, traj.input.window_sup(prev_t, t));
        prev_t = t;
        s.t.push_back(t);
        s.norm.push_back(norm2(h.node_value(i)));
        s.w_sup.push_back(running);
    }
    return s;
}

} // namespace

EnvelopeCheckReport check_envelope(const Trajectory& traj, const EnvelopeSpec& env) {
    EnvelopeCheckReport rep;
    const NormSeries s = norm_series(traj);
    rep.points = static_cast<long>(s.t.size());
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        const double bound = env.beta(s.phi_norm, s.t[i] - traj.t0) + env.gamma(s.w_sup[i]);
        const double tol = 1e-9 + 1e-6 * bound;
        const double excess = s.norm[i] - bound;
        if (excess > rep.max_excess) {
            rep.max_excess = excess;
            rep.time_of_max = s.t[i];
        }
        if (excess > tol) {
            rep.pass = false;
            rep.max_relative_violation =
                std::max(rep.max_relative_violation, excess / std::max(bound, 1e-300));
        }
    }
    return rep;
}

EnvelopeFit fit_envelope(std::span<const Trajectory> ensemble) {
    EnvelopeFit fit;
    if (ensemble.empty()) {
        fit.failure_reason = "empty ensemble";
        return fit;
    }

    std::vector<NormSeries> series;
    std::vector<bool> zero_input;
    series.reserve(ensemble.size());
    bool any_zero = false;
    for (const auto& traj : ensemble) {
        series.push_back(norm_series(traj));
        const bool z = traj.input.is_zero() || series.back().w_sup.back() == 0.0;
        zero_input.push_back(z);
        any_zero = any_zero || z;
    }
    if (!any_zero) {
        fit.failure_reason = "no zero-input run to identify the decay part";
        return fit;
    }

    // decay rate: regression of ln(peak envelope) on time, per zero-input run;
    // the envelope must hold for every run, so keep the slowest decay
    double lambda = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < series.size(); ++r) {
        if (!zero_input[r]) continue;
        const NormSeries& s = series[r];
        if (s.norm.empty()) continue;
        if (s.norm.back() > s.phi_norm) {
            fit.failure_reason = "no ISS witness found: a zero-input run does not decay "
                                 "(final norm exceeds the initial history norm)";
            return fit;
        }
        // peaks seen from the right: p(t) = max over [t, t_end]
        std::vector<double> peak(s.norm.size());
        double running = 0.0;
        for (std::size_t i = s.norm.size(); i-- > 0;) {
            running = std::max(running, s.norm[i]);
            peak[i] = running;
        }
        const double floor = std::max(1e-300, 1e-12 * peak.front());
        double st = 0.0, stt = 0.0, sy = 0.0, sty = 0.0;
        long n = 0;
        for (std::size_t i = 0; i < peak.size(); ++i) {
            if (peak[i] <= floor) break;
            const double t = s.t[i] - s.t.front();
            const double y = std::log(peak[i]);
            st += t;
            stt += t * t;
            sy += y;
            sty += t * y;
            ++n;
        }
        if (n < 2) continue;
        const double denom = static_cast<double>(n) * stt - st * st;
        if (denom <= 0.0) continue;
        const double slope = (static_cast<double>(n) * sty - st * sy) / denom;
        lambda = std::min(lambda, -slope);
    }
    if (!std::isfinite(lambda) || lambda <= 0.0) {
        fit.failure_reason = "no ISS witness found: peak envelopes do not decay";
        return fit;
    }

    // amplitude: worst ratio against the fitted decay over the zero-input runs
    double M = 1.0;
    for (std::size_t r = 0; r < series.size(); ++r) {
        if (!zero_input[r]) continue;
        const NormSeries& s = series[r];
        if (s.phi_norm <= 0.0) continue;
        for (std::size_t i = 0; i < s.norm.size(); ++i) {
            const double decay = s.phi_norm * std::exp(-lambda * (s.t[i] - s.t.front()));
            if (decay > 0.0) M = std::max(M, s.norm[i] / decay);
        }
    }

    // input gain: exponent from the driven runs' worst residuals vs input
    // sups, then the smallest c that clears every residual pointwise
    std::vector<double> res_by_run, sup_by_run;
    for (std::size_t r = 0; r < series.size(); ++r) {
        if (zero_input[r]) continue;
        const NormSeries& s = series[r];
        double worst = 0.0;
        for (std::size_t i = 0; i < s.norm.size(); ++i) {
            const double resid =
                s.norm[i] - M * s.phi_norm * std::exp(-lambda * (s.t[i] - s.t.front()));
            worst = std::max(worst, resid);
        }
        if (worst > 0.0 && s.w_sup.back() > 0.0) {
            res_by_run.push_back(worst);
            sup_by_run.push_back(s.w_sup.back());
        }
    }
    double q = 1.0;
    if (res_by_run.size() >= 2) {
        double st = 0.0, stt = 0.0, sy = 0.0, sty = 0.0;
        const auto n = static_cast<double>(res_by_run.size());
        for (std::size_t i = 0; i < res_by_run.size(); ++i) {
            const double x = std::log(sup_by_run[i]);
            const double y = std::log(res_by_run[i]);
            st += x;
            stt += x * x;
            sy += y;
            sty += x * y;
        }
        const double denom = n * stt - st * st;
        if (denom > 1e-12) q = std::clamp((n * sty - st * sy) / denom, 0.05, 10.0);
    }
    double c = 0.0;
    for (std::size_t r = 0; r < series.size(); ++r) {
        if (zero_input[r]) continue;
        const NormSeries& s = series[r];
        for (std::size_t i = 0; i < s.norm.size(); ++i) {
            const double resid =
                s.norm[i] - M * s.phi_norm * std::exp(-lambda * (s.t[i] - s.t.front()));
            if (resid <= 0.0) continue;
            if (s.w_sup[i] <= 0.0) {
                fit.failure_reason = "no ISS witness found: a driven run exceeds the decay "
                                     "envelope before any input acted";
                return fit;
            }
            c = std::max(c, resid / std::pow(s.w_sup[i], q));
        }
    }

    fit.envelope.M = M * (1.0 + 1e-12);
    fit.envelope.lambda = lambda;
    fit.envelope.c = c * (1.0 + 1e-12);
    fit.envelope.q = q;
    fit.success = true;

    for (const auto& traj : ensemble) {
        if (!check_envelope(traj, fit.envelope).pass) {
            fit.success = false;
            fit.failure_reason = "fitted envelope failed its own training ensemble";
            return fit;
        }
    }
    return fit;
}

ConvergenceReport zero_input_convergence(std::span<const Trajectory> ensemble) {
    ConvergenceReport rep;
    for (const auto& traj : ensemble) {
        if (!traj.input.is_zero())
            throw ParameterError("zero_input_convergence: ensemble contains a driven run");
        const double phi = traj.history.sup_norm_window(traj.t0, traj.history.horizon());
        const double fin = norm2(traj.history.eval(traj.history.now()));
        rep.ratios.push_back(phi > 0.0 ? fin / phi : 0.0);
        rep.max_ratio = std::max(rep.max_ratio, rep.ratios.back());
    }
    return rep;
}

} // namespace idde
