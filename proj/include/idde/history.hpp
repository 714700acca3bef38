#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "idde/errors.hpp"

namespace idde {

using Vec = std::vector<double>;

/// Euclidean norm.
double norm2(std::span<const double> v);

/// Recorded state discontinuity: value(t) = post, left limit = pre.
struct JumpRecord {
    double t = 0.0;
    Vec pre;
    Vec post;
};

/// Piecewise-continuous trajectory record x : [start(), now()] -> R^n.
///
/// The record is a contiguous chain of C^1 segments separated by jumps.
/// Within a segment, values are interpolated with a cubic Hermite per node
/// interval (node values + node derivatives). The stored function is
/// right-continuous: at a jump time, eval() returns the post-jump value and
/// left_limit() the pre-jump value.
///
/// Nodes at a jump time appear twice (pre side ends a segment, post side
/// begins the next). Each node carries an incoming and an outgoing slope so
/// that derivative kinks at segment starts interpolate correctly.
class History {
public:
    /// Empty record anchored at `origin` with lookback `horizon` (r >= 0).
    History(int dimension, double origin, double horizon);

    /// phi == value on [origin - horizon, origin].
    static History constant(int dimension, double origin, double horizon,
                            std::span<const double> value);

    /// phi(t) = value_at_origin + slope * (t - origin) on [origin - horizon, origin].
    static History linear(int dimension, double origin, double horizon,
                          std::span<const double> value_at_origin,
                          std::span<const double> slope);

    /// Sampled initial function; times must be increasing, covering
    /// [origin - horizon, origin] exactly at both ends. Derivatives optional:
    /// when absent, finite-difference slopes are used.
    static History from_samples(int dimension, double origin, double horizon,
                                std::span<const double> times,
                                const std::vector<Vec>& values,
                                const std::vector<Vec>& derivs = {});

    int dimension() const { return dim_; }
    double origin() const { return origin_; }
    double horizon() const { return horizon_; }

    /// Earliest retained time (origin - horizon unless pruned).
    double start() const;
    /// Latest recorded time.
    double now() const;

    bool empty() const { return times_.empty(); }

    // -- queries ------------------------------------------------------------

    /// Right-continuous value at t in [start, now].
    void eval_into(double t, std::span<double> out) const;
    Vec eval(double t) const;

    /// Left limit at t in (start, now]; equals eval off the jump set.
    void left_limit_into(double t, std::span<double> out) const;
    Vec left_limit(double t) const;

    /// sup of ||x|| over [t - window, t] sampled on the node grid, including
    /// both one-sided values at interior jump points and interpolated window
    /// endpoints.
    double sup_norm_window(double t, double window) const;

    /// Componentwise integral of x over [t - window, t], composite Simpson on
    /// the node grid applied to the segment interpolants, split at jumps.
    Vec window_integral(double t, double window) const;

    /// Integral over [t - window, t] of g(u, x(u)), same quadrature rule.
    double integrate_window(double t, double window,
                            const std::function<double(double, std::span<const double>)>& g) const;

    // -- construction -------------------------------------------------------

    /// Extend the current segment with a node at t > now().
    void append_node(double t, std::span<const double> value,
                     std::span<const double> deriv);

    /// Replace the outgoing slope of the last node (used when the vector
    /// field changes at a continuation point, e.g. at the origin).
    void set_end_outgoing_slope(std::span<const double> deriv);

    /// Close the current segment at t == now() and start a new one at the
    /// post-jump value; records the (pre, post) pair.
    void apply_jump(double t, std::span<const double> post,
                    std::span<const double> post_deriv);

    /// Drop leading nodes so that queries on [t, now()] stay valid; whole
    /// segments older than t are released.
    void prune_before(double t);

    /// Component slice [offset, offset+dim) as a standalone record with the
    /// same node grid and segment structure.
    History project(int offset, int dim) const;

    /// Copy with components [offset, offset+dim) scaled by `factor`
    /// (values, slopes and jump records alike).
    History scaled(int offset, int dim, double factor) const;

    const std::vector<JumpRecord>& jumps() const { return jumps_; }

    // -- raw node access (scans, serialization) ------------------------------

    std::size_t node_count() const { return times_.size(); }
    double node_time(std::size_t i) const { return times_[i]; }
    std::span<const double> node_value(std::size_t i) const;
    /// True when nodes i and i+1 bound a continuous interval (same segment).
    bool interval_continuous(std::size_t i) const;
    /// First node index with time >= t.
    std::size_t first_node_at_or_after(double t) const;

private:
    int dim_;
    double origin_;
    double horizon_;
    std::vector<double> times_;
    std::vector<double> values_;   // flattened, dim_ per node
    std::vector<double> slope_in_;  // incoming slope per node
    std::vector<double> slope_out_; // outgoing slope per node
    std::vector<int> seg_;          // segment id per node
    std::vector<JumpRecord> jumps_;

    std::span<const double> val(std::size_t i) const;
    std::span<const double> din(std::size_t i) const;
    std::span<const double> dout(std::size_t i) const;
    void hermite_into(std::size_t left, double t, std::span<double> out) const;
    void check_range(double t, double lo) const;
    /// Accumulate Simpson quadrature of g over [a, b] within node interval `left`.
    double simpson_fragment(std::size_t left, double a, double b,
                            const std::function<double(double, std::span<const double>)>& g) const;
};

} // namespace idde
