#include "idde/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace idde {

// ---------------------------------------------------------------------------
// Schedules
// ---------------------------------------------------------------------------

ScheduleValidation validate_schedule(const ImpulseSchedule& s, double t0) {
    for (std::size_t i = 1; i < s.times.size(); ++i)
        if (!(s.times[i] > s.times[i - 1]))
            throw StructuralError("ImpulseSchedule: times must be strictly increasing");
    if (!s.times.empty() && !(s.times.front() > t0))
        throw StructuralError("ImpulseSchedule: first impulse must lie after t0");

    ScheduleValidation v;
    if (s.declared == ScheduleClass::All) return v;

    for (std::size_t i = 0; i < s.times.size(); ++i) {
        double prev = (i == 0) ? t0 : s.times[i - 1];
        double gap = s.times[i] - prev;
        // gaps of generated times carry one rounding each; compare modulo that
        double tol = 1e-12 * (1.0 + std::abs(s.times[i]));
        bool bad = (s.declared == ScheduleClass::InfDwell) ? (gap < s.delta - tol)
                                                           : (gap > s.delta + tol);
        // the opening gap [t0, t1] only constrains the SupDwell class
        if (i == 0 && s.declared == ScheduleClass::InfDwell) bad = false;
        if (bad) {
            v.ok = false;
            v.violating_index = i + 1;
            v.gap = gap;
            std::ostringstream os;
            os << "gap " << gap << " before impulse " << (i + 1) << " violates "
               << (s.declared == ScheduleClass::InfDwell ? "inf_dwell(" : "sup_dwell(")
               << s.delta << ")";
            v.message = os.str();
            return v;
        }
    }
    return v;
}

ImpulseSchedule gen_periodic(double t0, double delta, int count) {
    if (delta <= 0.0) throw ParameterError("gen_periodic: delta must be > 0");
    if (count < 0) throw ParameterError("gen_periodic: count must be >= 0");
    ImpulseSchedule s;
    s.declared = ScheduleClass::InfDwell;
    s.delta = delta;
    s.times.reserve(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k) s.times.push_back(t0 + k * delta);
    return s;
}

ImpulseSchedule gen_random_dwell(double t0, double delta_min, double delta_max,
                                 int count, std::uint64_t seed) {
    if (delta_min <= 0.0) throw ParameterError("gen_random_dwell: delta_min must be > 0");
    if (delta_max < delta_min)
        throw ParameterError("gen_random_dwell: need delta_min <= delta_max");
    if (count < 0) throw ParameterError("gen_random_dwell: count must be >= 0");
    SplitMix64 rng(seed);
    ImpulseSchedule s;
    s.declared = ScheduleClass::InfDwell;
    s.delta = delta_min;
    s.times.reserve(static_cast<std::size_t>(count));
    double t = t0;
    for (int k = 0; k < count; ++k) {
        t += rng.uniform(delta_min, delta_max);
        s.times.push_back(t);
    }
    return s;
}

int zeta_from_schedule(const ImpulseSchedule& s, double d) {
    if (d <= 0.0) return 0;
    int zeta = 0;
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        const double cutoff = s.times[k] - d + 1e-12 * (1.0 + std::abs(s.times[k]));
        int c = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (s.times[j] > cutoff) ++c;
        zeta = std::max(zeta, c);
    }
    return zeta;
}

// ---------------------------------------------------------------------------
// Input signals
// ---------------------------------------------------------------------------

InputSignal InputSignal::zero(int dimension) {
    if (dimension <= 0) throw ParameterError("InputSignal: dimension must be positive");
    InputSignal w;
    w.kind_ = Kind::Zero;
    w.dim_ = dimension;
    return w;
}

InputSignal InputSignal::exp_decay(double amplitude, double rate, double origin) {
    InputSignal w;
    w.kind_ = Kind::ExpDecay;
    w.dim_ = 1;
    w.amplitude_ = amplitude;
    w.rate_ = rate;
    w.phase_ = origin;
    return w;
}

InputSignal InputSignal::sinusoid(double amplitude, double omega, double phase) {
    InputSignal w;
    w.kind_ = Kind::Sinusoid;
    w.dim_ = 1;
    w.amplitude_ = amplitude;
    w.rate_ = omega;
    w.phase_ = phase;
    return w;
}

InputSignal InputSignal::piecewise_constant(std::vector<double> times,
                                            std::vector<Vec> values) {
    if (times.empty() || times.size() != values.size())
        throw StructuralError("InputSignal: table requires matching nonempty times/values");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw StructuralError("InputSignal: table times must be strictly increasing");
    InputSignal w;
    w.kind_ = Kind::PiecewiseConstant;
    w.dim_ = static_cast<int>(values.front().size());
    for (const auto& v : values)
        if (static_cast<int>(v.size()) != w.dim_)
            throw StructuralError("InputSignal: inconsistent table value dimension");
    w.table_times_ = std::move(times);
    w.table_values_ = std::move(values);
    return w;
}

void InputSignal::value_into(double t, std::span<double> out) const {
    switch (kind_) {
    case Kind::Zero:
        std::fill(out.begin(), out.end(), 0.0);
        return;
    case Kind::ExpDecay:
        out[0] = amplitude_ * std::exp(-rate_ * (t - phase_));
        return;
    case Kind::Sinusoid:
        out[0] = amplitude_ * std::sin(rate_ * t + phase_);
        return;
    case Kind::PiecewiseConstant: {
        auto it = std::upper_bound(table_times_.begin(), table_times_.end(), t);
        std::size_t idx = (it == table_times_.begin())
                              ? 0
                              : static_cast<std::size_t>(it - table_times_.begin()) - 1;
        const Vec& v = table_values_[idx];
        std::copy(v.begin(), v.end(), out.begin());
        return;
    }
    }
}

Vec InputSignal::value(double t) const {
    Vec out(dim_);
    value_into(t, out);
    return out;
}

void InputSignal::left_limit_into(double t, std::span<double> out) const {
    if (kind_ != Kind::PiecewiseConstant) {
        value_into(t, out); // continuous kinds
        return;
    }
    // the plateau active just before t; at a breakpoint this is the previous one
    auto it = std::lower_bound(table_times_.begin(), table_times_.end(), t);
    std::size_t idx = (it == table_times_.begin())
                          ? 0
                          : static_cast<std::size_t>(it - table_times_.begin()) - 1;
    const Vec& v = table_values_[idx];
    std::copy(v.begin(), v.end(), out.begin());
}

Vec InputSignal::left_limit(double t) const {
    Vec out(dim_);
    left_limit_into(t, out);
    return out;
}

double InputSignal::window_sup(double a, double b) const {
    if (b < a) std::swap(a, b);
    switch (kind_) {
    case Kind::Zero:
        return 0.0;
    case Kind::ExpDecay: {
        // |w| is monotone, extremal at an endpoint
        double va = std::abs(amplitude_ * std::exp(-rate_ * (a - phase_)));
        double vb = std::abs(amplitude_ * std::exp(-rate_ * (b - phase_)));
        return std::max(va, vb);
    }
    case Kind::Sinusoid: {
        double amp = std::abs(amplitude_);
        if (rate_ == 0.0) return std::abs(amplitude_ * std::sin(phase_));
        // work on the phase interval [u1, u2]; |sin| peaks at pi/2 + k*pi
        double u1 = rate_ * a + phase_;
        double u2 = rate_ * b + phase_;
        if (u2 < u1) std::swap(u1, u2);
        double best = amp * std::max(std::abs(std::sin(u1)), std::abs(std::sin(u2)));
        double k0 = std::ceil((u1 - M_PI_2) / M_PI);
        if (M_PI_2 + k0 * M_PI <= u2) best = amp;
        return best;
    }
    case Kind::PiecewiseConstant: {
        double best = norm2(value(a));
        best = std::max(best, norm2(left_limit(b)));
        best = std::max(best, norm2(value(b)));
        for (std::size_t i = 0; i < table_times_.size(); ++i)
            if (table_times_[i] > a && table_times_[i] <= b)
                best = std::max(best, norm2(table_values_[i]));
        return best;
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// StateView
// ---------------------------------------------------------------------------

StateView::StateView(const History& h, double t, double lookback)
    : hist_(&h), t_(t), lookback_(lookback) {}

StateView::StateView(const History& h, double t, double lookback,
                     std::span<const double> current)
    : hist_(&h), t_(t), lookback_(lookback), current_(current) {}

void StateView::check_offset(double offset) const {
    const double slack = 1e-9 * std::max(1.0, lookback_);
    if (offset > 0.0 || offset < -lookback_ - slack) {
        std::ostringstream os;
        os << "StateView: offset " << offset << " outside [-" << lookback_ << ", 0]";
        throw DelayBoundError(os.str());
    }
}

void StateView::check_window(double window) const {
    const double slack = 1e-9 * std::max(1.0, lookback_);
    if (window > lookback_ + slack) {
        std::ostringstream os;
        os << "StateView: window " << window << " exceeds lookback " << lookback_;
        throw DelayBoundError(os.str());
    }
    if (t_ > hist_->now() + slack)
        throw DelayBoundError(
            "StateView: windowed query at a stage time ahead of the recorded history");
}

void StateView::at_into(double offset, std::span<double> out) const {
    check_offset(offset);
    if (offset == 0.0 && !current_.empty()) {
        std::copy(current_.begin(), current_.end(), out.begin());
        return;
    }
    double u = t_ + offset;
    if (u > hist_->now()) {
        const double slack = 1e-9 * std::max(1.0, lookback_);
        if (u > hist_->now() + slack)
            throw DelayBoundError(
                "StateView: delayed lookup lands inside the current step; "
                "reduce the step below the smallest discrete delay");
        u = hist_->now();
    }
    hist_->eval_into(u, out);
}

Vec StateView::at(double offset) const {
    Vec out(hist_->dimension());
    at_into(offset, out);
    return out;
}

double StateView::at1(double offset) const {
    double v;
    at_into(offset, std::span<double>(&v, 1));
    return v;
}

double StateView::sup_norm(double window) const {
    check_window(window);
    double s = hist_->sup_norm_window(std::min(t_, hist_->now()), window);
    if (!current_.empty()) s = std::max(s, norm2(current_));
    return s;
}

Vec StateView::integral(double window) const {
    check_window(window);
    return hist_->window_integral(std::min(t_, hist_->now()), window);
}

double StateView::integrate(double window,
                            const std::function<double(double, std::span<const double>)>& g) const {
    check_window(window);
    return hist_->integrate_window(std::min(t_, hist_->now()), window, g);
}

} // namespace idde
