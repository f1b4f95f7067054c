#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracsolve/grid.hpp"

namespace fracsolve {

/// One maximal closed component [left, right] of a time scale.
/// left == right encodes an isolated point.
struct Segment {
    double left;
    double right;
};

/// A nonempty closed subset of the reals, represented as a finite ordered
/// union of disjoint closed intervals and points.  Invariants (checked):
/// finite endpoints, left <= right within a segment, strict gaps between
/// consecutive segments (right_i < left_{i+1}).
class TimeScale {
public:
    explicit TimeScale(std::vector<Segment> segments);

    static TimeScale interval(double a, double b);
    static TimeScale discrete(std::vector<double> points);

    std::span<const Segment> segments() const noexcept { return segments_; }
    double min() const noexcept { return segments_.front().left; }
    double max() const noexcept { return segments_.back().right; }

    bool contains(double t) const noexcept;

    /// Forward jump sigma(t) = inf { s in T : s > t }; returns t itself when
    /// t is right-dense or the maximum.  Throws domain_error for t outside.
    double sigma(double t) const;

    /// Graininess mu(t) = sigma(t) - t.
    double graininess(double t) const;

    bool right_scattered(double t) const;

    /// JSON array of [left, right] pairs, e.g. [[0.0,0.5],[1.0,1.0]].
    std::string to_json() const;
    static TimeScale from_json(std::string_view text);

private:
    std::size_t segment_index(double t) const;  // throws domain_error

    std::vector<Segment> segments_;
};

/// A function tabulated on a time scale: every isolated point is a node,
/// every segment endpoint is a node, and nondegenerate intervals carry a
/// quadrature grid.  Nodes are strictly increasing and contained in the scale.
class TsGridFn {
public:
    TsGridFn(TimeScale scale, std::vector<double> nodes, std::vector<double> values);

    /// Builds the node set from a grid policy: each nondegenerate segment
    /// receives panels in proportion to its length (at least 2); the segment
    /// that starts at the scale minimum is graded by policy.gamma, the rest
    /// are uniform.
    static TsGridFn sample(TimeScale scale, const GridPolicy& policy,
                           const std::function<double(double)>& fn);

    const TimeScale& scale() const noexcept { return scale_; }
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    /// True when a gap of the scale starts at node k (the next node is the
    /// forward jump across that gap).
    bool gap_after(std::size_t k) const { return gap_after_[k] != 0; }

    /// Exact index of a node value; throws domain_error when t is not a node.
    std::size_t node_index(double t) const;

    TsGridFn with_values(std::vector<double> values) const;

private:
    TimeScale scale_;
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<char> gap_after_;
};

/// Delta integral over [a, b]: composite trapezoid over the stored nodes of
/// continuous sub-segments plus g(t) (sigma(t) - t) over right-scattered
/// nodes in [a, b).  Both endpoints must be sample nodes of g.
double delta_integral(const TsGridFn& g, double a, double b);

/// Fractional delta integral of order alpha at t: scattered nodes s < t
/// contribute (t - s)^{alpha-1} g(s) mu(s) directly, continuous runs go
/// through product integration with exact kernel moments; the accumulated
/// sum (ascending nodes) is divided by Gamma(alpha) once at the end.
double ts_frac_integral(const TsGridFn& g, FracOrder order, double start, double t);

/// Fractional delta derivative at t: the delta derivative of
/// F = ts_frac_integral(g, 1 - alpha, start, .) -- a forward difference
/// quotient at right-scattered t, the three-point nonuniform stencil over
/// same-segment nodes at right-dense t.
double ts_frac_derivative(const TsGridFn& g, FracOrder order, double start, double t);

struct ExtensionBound {
    double lhs;    // delta integral of g over [a, b]
    double rhs;    // ordinary integral of the piecewise extension G
    bool holds;    // lhs <= rhs up to roundoff slack
};

/// Compares the delta integral of an increasing g with the ordinary integral
/// of its extension G (constant on every gap (t, sigma(t))).  Throws
/// domain_error when g is not nondecreasing on the sampled range.
ExtensionBound extension_bound_check(const TsGridFn& g, double a, double b);

}  // namespace fracsolve
