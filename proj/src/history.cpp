#include "idde/history.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace idde {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

namespace {

std::string interval_msg(const char* what, double t, double lo, double hi) {
    std::ostringstream os;
    os << what << ": t = " << t << " outside the stored record [" << lo << ", " << hi << "]";
    return os.str();
}

} // namespace

History::History(int dimension, double origin, double horizon)
    : dim_(dimension), origin_(origin), horizon_(horizon) {
    if (dimension <= 0) throw ParameterError("History: dimension must be positive");
    if (horizon < 0.0) throw ParameterError("History: horizon must be nonnegative");
}

History History::constant(int dimension, double origin, double horizon,
                          std::span<const double> value) {
    History h(dimension, origin, horizon);
    Vec zero(dimension, 0.0);
    h.times_.push_back(origin - horizon);
    h.values_.insert(h.values_.end(), value.begin(), value.end());
    h.slope_in_.insert(h.slope_in_.end(), zero.begin(), zero.end());
    h.slope_out_.insert(h.slope_out_.end(), zero.begin(), zero.end());
    h.seg_.push_back(0);
    if (horizon > 0.0) h.append_node(origin, value, zero);
    return h;
}

History History::linear(int dimension, double origin, double horizon,
                        std::span<const double> value_at_origin,
                        std::span<const double> slope) {
    History h(dimension, origin, horizon);
    Vec v0(dimension);
    for (int i = 0; i < dimension; ++i)
        v0[i] = value_at_origin[i] - horizon * slope[i];
    h.times_.push_back(origin - horizon);
    h.values_.insert(h.values_.end(), v0.begin(), v0.end());
    h.slope_in_.insert(h.slope_in_.end(), slope.begin(), slope.end());
    h.slope_out_.insert(h.slope_out_.end(), slope.begin(), slope.end());
    h.seg_.push_back(0);
    if (horizon > 0.0) h.append_node(origin, value_at_origin, slope);
    return h;
}

History History::from_samples(int dimension, double origin, double horizon,
                              std::span<const double> times,
                              const std::vector<Vec>& values,
                              const std::vector<Vec>& derivs) {
    if (times.size() < 2 || values.size() != times.size())
        throw StructuralError("History::from_samples: need >= 2 samples with matching values");
    if (!derivs.empty() && derivs.size() != times.size())
        throw StructuralError("History::from_samples: derivative count mismatch");
    const double tol = 1e-12 * std::max(1.0, std::abs(origin) + horizon);
    if (std::abs(times.front() - (origin - horizon)) > tol ||
        std::abs(times.back() - origin) > tol)
        throw StructuralError("History::from_samples: samples must span [origin - horizon, origin]");

    History h(dimension, origin, horizon);
    auto slope_at = [&](std::size_t i) -> Vec {
        if (!derivs.empty()) return derivs[i];
        // secant-based finite differences
        Vec d(dimension);
        std::size_t a = (i == 0) ? 0 : i - 1;
        std::size_t b = (i + 1 == times.size()) ? i : i + 1;
        double dt = times[b] - times[a];
        for (int c = 0; c < dimension; ++c)
            d[c] = (values[b][c] - values[a][c]) / dt;
        return d;
    };
    Vec d0 = slope_at(0);
    h.times_.push_back(times[0]);
    h.values_.insert(h.values_.end(), values[0].begin(), values[0].end());
    h.slope_in_.insert(h.slope_in_.end(), d0.begin(), d0.end());
    h.slope_out_.insert(h.slope_out_.end(), d0.begin(), d0.end());
    h.seg_.push_back(0);
    for (std::size_t i = 1; i < times.size(); ++i)
        h.append_node(times[i], values[i], slope_at(i));
    return h;
}

double History::start() const {
    if (times_.empty()) throw StructuralError("History: empty record");
    return times_.front();
}

double History::now() const {
    if (times_.empty()) throw StructuralError("History: empty record");
    return times_.back();
}

std::span<const double> History::val(std::size_t i) const {
    return {values_.data() + i * dim_, static_cast<std::size_t>(dim_)};
}
std::span<const double> History::din(std::size_t i) const {
    return {slope_in_.data() + i * dim_, static_cast<std::size_t>(dim_)};
}
std::span<const double> History::dout(std::size_t i) const {
    return {slope_out_.data() + i * dim_, static_cast<std::size_t>(dim_)};
}

std::span<const double> History::node_value(std::size_t i) const { return val(i); }

bool History::interval_continuous(std::size_t i) const {
    return i + 1 < times_.size() && seg_[i] == seg_[i + 1];
}

std::size_t History::first_node_at_or_after(double t) const {
    return static_cast<std::size_t>(
        std::lower_bound(times_.begin(), times_.end(), t) - times_.begin());
}

void History::check_range(double t, double lo) const {
    if (times_.empty()) throw StructuralError("History: empty record");
    if (t < lo || t > times_.back())
        throw RangeError(interval_msg("History", t, times_.front(), times_.back()));
}

void History::hermite_into(std::size_t left, double t, std::span<double> out) const {
    const double t0 = times_[left];
    const double t1 = times_[left + 1];
    const double h = t1 - t0;
    const double th = (t - t0) / h;
    const double th2 = th * th;
    const double th3 = th2 * th;
    const double h00 = 2.0 * th3 - 3.0 * th2 + 1.0;
    const double h10 = th3 - 2.0 * th2 + th;
    const double h01 = -2.0 * th3 + 3.0 * th2;
    const double h11 = th3 - th2;
    auto x0 = val(left);
    auto x1 = val(left + 1);
    auto f0 = dout(left);
    auto f1 = din(left + 1);
    for (int c = 0; c < dim_; ++c)
        out[c] = h00 * x0[c] + h * h10 * f0[c] + h01 * x1[c] + h * h11 * f1[c];
}

void History::eval_into(double t, std::span<double> out) const {
    check_range(t, times_.front());
    // last node with time <= t; at duplicate times this is the post side
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t idx = static_cast<std::size_t>(it - times_.begin()) - 1;
    if (times_[idx] == t || idx + 1 == times_.size()) {
        auto v = val(idx);
        std::copy(v.begin(), v.end(), out.begin());
        return;
    }
    hermite_into(idx, t, out);
}

Vec History::eval(double t) const {
    Vec out(dim_);
    eval_into(t, out);
    return out;
}

void History::left_limit_into(double t, std::span<double> out) const {
    if (times_.empty()) throw StructuralError("History: empty record");
    if (t <= times_.front() || t > times_.back())
        throw RangeError(interval_msg("History::left_limit", t, times_.front(), times_.back()));
    // first node with time >= t; at duplicate times this is the pre side
    std::size_t idx = first_node_at_or_after(t);
    if (idx < times_.size() && times_[idx] == t) {
        auto v = val(idx);
        std::copy(v.begin(), v.end(), out.begin());
        return;
    }
    hermite_into(idx - 1, t, out);
}

Vec History::left_limit(double t) const {
    Vec out(dim_);
    left_limit_into(t, out);
    return out;
}

double History::sup_norm_window(double t, double window) const {
    if (window < 0.0) throw ParameterError("History::sup_norm_window: window must be >= 0");
    const double a = t - window;
    check_range(t, times_.front());
    if (a < times_.front())
        throw RangeError(interval_msg("History::sup_norm_window", a, times_.front(), times_.back()));

    Vec buf(dim_);
    eval_into(a, buf);
    double best = norm2(buf);
    for (std::size_t i = first_node_at_or_after(a); i < times_.size() && times_[i] <= t; ++i) {
        // skip the pre-side duplicate exactly at the window start: its value is
        // the left limit of data outside the window
        if (times_[i] == a && i + 1 < times_.size() && times_[i + 1] == a) continue;
        best = std::max(best, norm2(val(i)));
    }
    eval_into(t, buf);
    best = std::max(best, norm2(buf));
    return best;
}

double History::simpson_fragment(std::size_t left, double a, double b,
                                 const std::function<double(double, std::span<const double>)>& g) const {
    Vec xa(dim_), xm(dim_), xb(dim_);
    const double m = 0.5 * (a + b);
    hermite_into(left, a, xa);
    hermite_into(left, m, xm);
    hermite_into(left, b, xb);
    return (b - a) / 6.0 * (g(a, xa) + 4.0 * g(m, xm) + g(b, xb));
}

double History::integrate_window(double t, double window,
                                 const std::function<double(double, std::span<const double>)>& g) const {
    if (window <= 0.0) throw ParameterError("History::integrate_window: window must be > 0");
    const double a = t - window;
    check_range(t, times_.front());
    if (a < times_.front())
        throw RangeError(interval_msg("History::integrate_window", a, times_.front(), times_.back()));

    double acc = 0.0;
    // interval containing a; upper_bound - 1 lands on the post side at jumps
    auto it = std::upper_bound(times_.begin(), times_.end(), a);
    std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
    while (i + 1 < times_.size() && times_[i] < t) {
        if (!interval_continuous(i)) { ++i; continue; } // zero-width jump boundary
        const double lo = std::max(a, times_[i]);
        const double hi = std::min(t, times_[i + 1]);
        if (hi > lo) acc += simpson_fragment(i, lo, hi, g);
        if (times_[i + 1] >= t) break;
        ++i;
    }
    return acc;
}

Vec History::window_integral(double t, double window) const {
    Vec out(dim_, 0.0);
    for (int c = 0; c < dim_; ++c) {
        out[c] = integrate_window(t, window,
                                  [c](double, std::span<const double> x) { return x[c]; });
    }
    return out;
}

void History::append_node(double t, std::span<const double> value,
                          std::span<const double> deriv) {
    if (times_.empty())
        throw StructuralError("History::append_node: record has no initial segment");
    if (!(t > times_.back()))
        throw StructuralError("History::append_node: time must be strictly increasing");
    times_.push_back(t);
    values_.insert(values_.end(), value.begin(), value.end());
    slope_in_.insert(slope_in_.end(), deriv.begin(), deriv.end());
    slope_out_.insert(slope_out_.end(), deriv.begin(), deriv.end());
    seg_.push_back(seg_.back());
}

void History::set_end_outgoing_slope(std::span<const double> deriv) {
    if (times_.empty()) throw StructuralError("History: empty record");
    std::size_t i = times_.size() - 1;
    std::copy(deriv.begin(), deriv.end(), slope_out_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
}

void History::apply_jump(double t, std::span<const double> post,
                         std::span<const double> post_deriv) {
    if (times_.empty()) throw StructuralError("History: empty record");
    if (t != times_.back())
        throw StructuralError("History::apply_jump: jump time must equal now()");
    JumpRecord rec;
    rec.t = t;
    rec.pre.assign(val(times_.size() - 1).begin(), val(times_.size() - 1).end());
    rec.post.assign(post.begin(), post.end());
    jumps_.push_back(std::move(rec));

    times_.push_back(t);
    values_.insert(values_.end(), post.begin(), post.end());
    slope_in_.insert(slope_in_.end(), post_deriv.begin(), post_deriv.end());
    slope_out_.insert(slope_out_.end(), post_deriv.begin(), post_deriv.end());
    seg_.push_back(seg_.back() + 1);
}

History History::project(int offset, int dim) const {
    if (offset < 0 || dim <= 0 || offset + dim > dim_)
        throw ParameterError("History::project: slice outside stored dimension");
    History out(dim, origin_, horizon_);
    const std::size_t n = times_.size();
    out.times_ = times_;
    out.seg_ = seg_;
    out.values_.resize(n * static_cast<std::size_t>(dim));
    out.slope_in_.resize(n * static_cast<std::size_t>(dim));
    out.slope_out_.resize(n * static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < dim; ++c) {
            const std::size_t src = i * static_cast<std::size_t>(dim_) +
                                    static_cast<std::size_t>(offset + c);
            const std::size_t dst = i * static_cast<std::size_t>(dim) +
                                    static_cast<std::size_t>(c);
            out.values_[dst] = values_[src];
            out.slope_in_[dst] = slope_in_[src];
            out.slope_out_[dst] = slope_out_[src];
        }
    }
    out.jumps_.reserve(jumps_.size());
    for (const auto& j : jumps_) {
        JumpRecord rec;
        rec.t = j.t;
        rec.pre.assign(j.pre.begin() + offset, j.pre.begin() + offset + dim);
        rec.post.assign(j.post.begin() + offset, j.post.begin() + offset + dim);
        out.jumps_.push_back(std::move(rec));
    }
    return out;
}

History History::scaled(int offset, int dim, double factor) const {
    if (offset < 0 || dim <= 0 || offset + dim > dim_)
        throw ParameterError("History::scaled: slice outside stored dimension");
    History out = *this;
    for (std::size_t i = 0; i < times_.size(); ++i) {
        for (int c = offset; c < offset + dim; ++c) {
            const std::size_t k = i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(c);
            out.values_[k] *= factor;
            out.slope_in_[k] *= factor;
            out.slope_out_[k] *= factor;
        }
    }
    for (auto& j : out.jumps_) {
        for (int c = offset; c < offset + dim; ++c) {
            j.pre[static_cast<std::size_t>(c)] *= factor;
            j.post[static_cast<std::size_t>(c)] *= factor;
        }
    }
    return out;
}

void History::prune_before(double t) {
    if (times_.empty() || t <= times_.front()) return;
    // keep one node before the first node with time >= t so interpolation at t works
    std::size_t keep_from = first_node_at_or_after(t);
    if (keep_from == 0) return;
    if (keep_from >= times_.size()) keep_from = times_.size() - 1;
    if (times_[keep_from] > t) --keep_from;
    if (keep_from == 0) return;

    times_.erase(times_.begin(), times_.begin() + static_cast<std::ptrdiff_t>(keep_from));
    values_.erase(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(keep_from * dim_));
    slope_in_.erase(slope_in_.begin(), slope_in_.begin() + static_cast<std::ptrdiff_t>(keep_from * dim_));
    slope_out_.erase(slope_out_.begin(), slope_out_.begin() + static_cast<std::ptrdiff_t>(keep_from * dim_));
    seg_.erase(seg_.begin(), seg_.begin() + static_cast<std::ptrdiff_t>(keep_from));
    std::erase_if(jumps_, [&](const JumpRecord& j) { return j.t < times_.front(); });
}

} // namespace idde
