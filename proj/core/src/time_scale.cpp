#include "fracsolve/time_scale.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <json.hpp>

#include "fracsolve/errors.hpp"
#include "fracsolve/gamma.hpp"

namespace fracsolve {

TimeScale::TimeScale(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) {
        throw validation_error("TimeScale: need at least one segment");
    }
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const auto& s = segments_[i];
        if (!std::isfinite(s.left) || !std::isfinite(s.right)) {
            throw validation_error("TimeScale: endpoints must be finite");
        }
        if (!(s.left <= s.right)) {
            throw validation_error("TimeScale: segment left must not exceed right");
        }
        if (i > 0 && !(segments_[i - 1].right < s.left)) {
            throw validation_error("TimeScale: segments must be disjoint and strictly ordered");
        }
    }
}

TimeScale TimeScale::interval(double a, double b) {
    return TimeScale({Segment{a, b}});
}

TimeScale TimeScale::discrete(std::vector<double> points) {
    std::vector<Segment> segs;
    segs.reserve(points.size());
    for (double p : points) {
        segs.push_back(Segment{p, p});
    }
    return TimeScale(std::move(segs));
}

bool TimeScale::contains(double t) const noexcept {
    for (const auto& s : segments_) {
        if (t >= s.left && t <= s.right) {
            return true;
        }
        if (t < s.left) {
            break;
        }
    }
    return false;
}

std::size_t TimeScale::segment_index(double t) const {
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (t >= segments_[i].left && t <= segments_[i].right) {
            return i;
        }
    }
    throw domain_error("TimeScale: point " + std::to_string(t) + " not in the scale");
}

double TimeScale::sigma(double t) const {
    const std::size_t i = segment_index(t);
    if (t < segments_[i].right) {
        return t;  // right-dense inside an interval
    }
    if (i + 1 < segments_.size()) {
        return segments_[i + 1].left;
    }
    return t;  // maximum of the scale
}

double TimeScale::graininess(double t) const {
    return sigma(t) - t;
}

bool TimeScale::right_scattered(double t) const {
    return sigma(t) > t;
}

std::string TimeScale::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : segments_) {
        arr.push_back({s.left, s.right});
    }
    return arr.dump();
}

TimeScale TimeScale::from_json(std::string_view text) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("TimeScale: invalid JSON: ") + e.what());
    }
    if (!parsed.is_array() || parsed.empty()) {
        throw validation_error("TimeScale: expected a nonempty array of [left, right] pairs");
    }
    std::vector<Segment> segs;
    segs.reserve(parsed.size());
    for (const auto& item : parsed) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
            throw validation_error("TimeScale: each entry must be a [left, right] number pair");
        }
        segs.push_back(Segment{item[0].get<double>(), item[1].get<double>()});
    }
    return TimeScale(std::move(segs));
}

TsGridFn::TsGridFn(TimeScale scale, std::vector<double> nodes, std::vector<double> values)
    : scale_(std::move(scale)), nodes_(std::move(nodes)), values_(std::move(values)) {
    if (nodes_.empty() || nodes_.size() != values_.size()) {
        throw validation_error("TsGridFn: nodes and values must be nonempty and equal length");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i > 0 && !(nodes_[i - 1] < nodes_[i])) {
            throw validation_error("TsGridFn: nodes must be strictly increasing");
        }
        if (!scale_.contains(nodes_[i])) {
            throw validation_error("TsGridFn: node " + std::to_string(nodes_[i]) +
                                   " lies outside the scale");
        }
        if (!std::isfinite(values_[i])) {
            throw validation_error("TsGridFn: non-finite value at index " + std::to_string(i));
        }
    }
    // Every segment endpoint (in particular every isolated point) must be a node.
    for (const auto& s : scale_.segments()) {
        for (double endpoint : {s.left, s.right}) {
            if (!std::binary_search(nodes_.begin(), nodes_.end(), endpoint)) {
                throw validation_error("TsGridFn: segment endpoint " + std::to_string(endpoint) +
                                       " is not a node");
            }
        }
    }
    gap_after_.assign(nodes_.size(), 0);
    for (std::size_t k = 0; k + 1 < nodes_.size(); ++k) {
        if (scale_.right_scattered(nodes_[k])) {
            if (scale_.sigma(nodes_[k]) != nodes_[k + 1]) {
                throw validation_error("TsGridFn: forward jump of a scattered node is missing");
            }
            gap_after_[k] = 1;
        }
    }
}

TsGridFn TsGridFn::sample(TimeScale scale, const GridPolicy& policy,
                          const std::function<double(double)>& fn) {
    if (policy.n < 2) {
        throw domain_error("TsGridFn::sample: need at least 2 panels");
    }
    if (!(policy.gamma >= 1.0)) {
        throw domain_error("TsGridFn::sample: grading exponent must be >= 1");
    }
    double total = 0.0;
    for (const auto& s : scale.segments()) {
        total += s.right - s.left;
    }
    std::vector<double> nodes;
    for (const auto& s : scale.segments()) {
        const double len = s.right - s.left;
        if (len == 0.0) {
            nodes.push_back(s.left);
            continue;
        }
        const auto share = static_cast<std::size_t>(
            std::llround(static_cast<double>(policy.n) * len / total));
        const std::size_t m = std::max<std::size_t>(2, share);
        const bool graded = (s.left == scale.min()) && policy.gamma > 1.0;
        for (std::size_t j = 0; j <= m; ++j) {
            const double frac = static_cast<double>(j) / static_cast<double>(m);
            const double offset = graded ? len * std::pow(frac, policy.gamma) : len * frac;
            nodes.push_back(j == m ? s.right : s.left + offset);
        }
    }
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        values[i] = fn(nodes[i]);
    }
    return TsGridFn(std::move(scale), std::move(nodes), std::move(values));
}

std::size_t TsGridFn::node_index(double t) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t);
    if (it == nodes_.end() || *it != t) {
        throw domain_error("TsGridFn: " + std::to_string(t) + " is not a sample node");
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

TsGridFn TsGridFn::with_values(std::vector<double> values) const {
    return TsGridFn(scale_, nodes_, std::move(values));
}

double delta_integral(const TsGridFn& g, double a, double b) {
    if (!(a <= b)) {
        throw domain_error("delta_integral: need a <= b");
    }
    const std::size_t ia = g.node_index(a);
    const std::size_t ib = g.node_index(b);
    const auto nodes = g.nodes();
    const auto values = g.values();
    double acc = 0.0;
    for (std::size_t k = ia; k < ib; ++k) {
        const double width = nodes[k + 1] - nodes[k];
        if (g.gap_after(k)) {
            acc += values[k] * width;
        } else {
            acc += 0.5 * (values[k] + values[k + 1]) * width;
        }
    }
    return acc;
}

namespace {

// Kernel moments over a continuous panel, as in frac_ops but accumulated
// without the 1/Gamma factor (it is divided out once at the end).
double panel_contribution(double t, double sl, double sr, double gl, double gr, double alpha) {
    const double b = t - sl;
    const double a = t - sr;
    const double pb = std::pow(b, alpha);
    const double pa = (a == 0.0) ? 0.0 : std::pow(a, alpha);
    const double m0 = (pb - pa) / alpha;
    const double m1 = b * m0 - (pb * b - pa * a) / (alpha + 1.0);
    const double right = m1 / (sr - sl);
    return (m0 - right) * gl + right * gr;
}

}  // namespace

double ts_frac_integral(const TsGridFn& g, FracOrder order, double start, double t) {
    if (!(start <= t)) {
        throw domain_error("ts_frac_integral: need start <= t");
    }
    const std::size_t is = g.node_index(start);
    const std::size_t it = g.node_index(t);
    const auto nodes = g.nodes();
    const auto values = g.values();
    const double alpha = order.alpha;
    double acc = 0.0;
    for (std::size_t k = is; k < it; ++k) {
        if (g.gap_after(k)) {
            // Right-scattered s strictly below t: the weight is finite.
            const double mu = nodes[k + 1] - nodes[k];
            acc += std::pow(t - nodes[k], alpha - 1.0) * values[k] * mu;
        } else {
            acc += panel_contribution(t, nodes[k], nodes[k + 1], values[k], values[k + 1], alpha);
        }
    }
    return acc / gamma_fn(alpha);
}

double ts_frac_derivative(const TsGridFn& g, FracOrder order, double start, double t) {
    const TimeScale& scale = g.scale();
    const std::size_t it = g.node_index(t);
    (void)g.node_index(start);
    const FracOrder complement(1.0 - order.alpha);
    const auto nodes = g.nodes();

    if (scale.right_scattered(t)) {
        if (!g.gap_after(it)) {
            throw domain_error("ts_frac_derivative: scattered node lacks its forward jump");
        }
        const double fw = ts_frac_integral(g, complement, start, nodes[it + 1]);
        const double here = ts_frac_integral(g, complement, start, t);
        return (fw - here) / (nodes[it + 1] - nodes[it]);
    }

    // Right-dense: differentiate along three same-segment nodes.
    auto same_segment = [&](std::size_t a, std::size_t b) {
        for (std::size_t k = std::min(a, b); k < std::max(a, b); ++k) {
            if (g.gap_after(k)) {
                return false;
            }
        }
        return true;
    };
    std::size_t lo;
    if (it >= 1 && it + 1 < g.size() && same_segment(it - 1, it + 1)) {
        lo = it - 1;
    } else if (it + 2 < g.size() && same_segment(it, it + 2)) {
        lo = it;
    } else if (it >= 2 && same_segment(it - 2, it)) {
        lo = it - 2;
    } else {
        throw domain_error("ts_frac_derivative: node lacks the neighbors required by the stencil");
    }
    const double x0 = nodes[lo], x1 = nodes[lo + 1], x2 = nodes[lo + 2];
    const double f0 = ts_frac_integral(g, complement, start, x0);
    const double f1 = ts_frac_integral(g, complement, start, x1);
    const double f2 = ts_frac_integral(g, complement, start, x2);
    // Derivative of the interpolating parabola at t.
    const double d01 = (f1 - f0) / (x1 - x0);
    const double d12 = (f2 - f1) / (x2 - x1);
    const double curv = (d12 - d01) / (x2 - x0);
    return d01 + curv * (2.0 * t - x0 - x1);
}

ExtensionBound extension_bound_check(const TsGridFn& g, double a, double b) {
    const std::size_t ia = g.node_index(a);
    const std::size_t ib = g.node_index(b);
    const auto values = g.values();
    const auto nodes = g.nodes();
    double scale = 1.0;
    for (std::size_t k = ia; k < ib; ++k) {
        scale = std::max(scale, std::abs(values[k]));
        if (values[k + 1] < values[k] - 1e-12 * scale) {
            throw domain_error("extension_bound_check: g is not increasing on [a, b]");
        }
    }
    const double lhs = delta_integral(g, a, b);
    // Ordinary integral of the extension G: on intervals of the scale G is the
    // sampled function itself, on a gap (t, sigma(t)) it stays at g(t).
    double rhs = 0.0;
    for (std::size_t k = ia; k < ib; ++k) {
        const double width = nodes[k + 1] - nodes[k];
        if (g.gap_after(k)) {
            rhs += values[k] * width;
        } else {
            rhs += 0.5 * (values[k] + values[k + 1]) * width;
        }
    }
    const bool holds = lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs));
    return ExtensionBound{lhs, rhs, holds};
}

}  // namespace fracsolve
