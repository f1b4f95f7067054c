#include "fracsolve/frac_ops.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "fracsolve/errors.hpp"
#include "fracsolve/gamma.hpp"

namespace fracsolve {

namespace {

// Exact moments of the kernel over one panel [t_j, t_{j+1}] seen from the
// output node t_i.  With a = t_i - t_{j+1}, b = t_i - t_j:
//   m0 = int (t_i - s)^{a-1} ds            = (b^alpha - a^alpha) / alpha
//   m1 = int (t_i - s)^{a-1} (s - t_j) ds  = b m0 - (b^{alpha+1} - a^{alpha+1}) / (alpha + 1)
// The powers of b are reused from the previous panel (b there equals a here),
// so each panel costs a single pow.
struct PanelMoments {
    double m0;
    double m1;
};

inline PanelMoments panel_moments(double a, double b, double pa, double pb, double alpha) {
    const double m0 = (pb - pa) / alpha;
    const double m1 = b * m0 - (pb * b - pa * a) / (alpha + 1.0);
    return {m0, m1};
}

}  // namespace

ProductIntegrator::ProductIntegrator(std::vector<double> nodes, FracOrder order)
    : nodes_(std::move(nodes)), alpha_(order.alpha), inv_gamma_(1.0 / gamma_fn(order.alpha)) {
    if (nodes_.size() < 2) {
        throw validation_error("ProductIntegrator: need at least 2 nodes");
    }
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        if (!(nodes_[i] < nodes_[i + 1])) {
            throw validation_error("ProductIntegrator: nodes must be strictly increasing");
        }
    }
    const std::size_t panels = nodes_.size() - 1;
    if (panels > kTabulationLimit) {
        return;
    }
    tabulated_ = true;
    const std::size_t total = panels * (panels + 1) / 2;
    wl_.resize(total);
    wr_.resize(total);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        const std::size_t base = row_base(i);
        const double ti = nodes_[i];
        double b = ti - nodes_[0];
        double pb = std::pow(b, alpha_);
        for (std::size_t j = 0; j + 1 <= i; ++j) {
            const double a = ti - nodes_[j + 1];
            const double pa = (j + 1 == i) ? 0.0 : std::pow(a, alpha_);
            const auto [m0, m1] = panel_moments(a, b, pa, pb, alpha_);
            const double h = nodes_[j + 1] - nodes_[j];
            const double right = m1 / h;
            wl_[base + j] = inv_gamma_ * (m0 - right);
            wr_[base + j] = inv_gamma_ * right;
            b = a;
            pb = pa;
        }
    }
}

void ProductIntegrator::check_row(std::size_t i, std::span<const double> phi) const {
    if (i >= nodes_.size()) {
        throw domain_error("ProductIntegrator: node index out of range");
    }
    if (phi.size() < i + 1) {
        throw validation_error("ProductIntegrator: factor values do not cover the row");
    }
}

double ProductIntegrator::row_direct(std::size_t i, std::span<const double> phi) const {
    const double ti = nodes_[i];
    double acc = 0.0;
    double b = ti - nodes_[0];
    double pb = std::pow(b, alpha_);
    for (std::size_t j = 0; j + 1 <= i; ++j) {
        const double a = ti - nodes_[j + 1];
        const double pa = (j + 1 == i) ? 0.0 : std::pow(a, alpha_);
        const auto [m0, m1] = panel_moments(a, b, pa, pb, alpha_);
        const double h = nodes_[j + 1] - nodes_[j];
        const double right = m1 / h;
        acc += inv_gamma_ * ((m0 - right) * phi[j] + right * phi[j + 1]);
        b = a;
        pb = pa;
    }
    return acc;
}

double ProductIntegrator::apply_row(std::size_t i, std::span<const double> phi) const {
    check_row(i, phi);
    if (i == 0) {
        return 0.0;
    }
    if (!tabulated_) {
        return row_direct(i, phi);
    }
    const std::size_t base = row_base(i);
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 <= i; ++j) {
        acc += wl_[base + j] * phi[j] + wr_[base + j] * phi[j + 1];
    }
    return acc;
}

std::vector<double> ProductIntegrator::apply(std::span<const double> values) const {
    if (values.size() != nodes_.size()) {
        throw validation_error("ProductIntegrator: value count does not match the grid");
    }
    std::vector<double> out(nodes_.size());
    out[0] = 0.0;
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        out[i] = apply_row(i, values);
    }
    return out;
}

GridFn rl_integral(const GridFn& g, FracOrder order) {
    ProductIntegrator quad(std::vector<double>(g.nodes().begin(), g.nodes().end()), order);
    return GridFn(std::vector<double>(g.nodes().begin(), g.nodes().end()),
                  quad.apply(g.values()));
}

std::vector<double> derivative_3pt(std::span<const double> nodes,
                                   std::span<const double> values) {
    const std::size_t n = nodes.size();
    if (n < 3) {
        throw domain_error("derivative_3pt: need at least 3 nodes");
    }
    if (values.size() != n) {
        throw validation_error("derivative_3pt: nodes and values must have equal length");
    }
    std::vector<double> out(n);
    {
        const double h0 = nodes[1] - nodes[0];
        const double h1 = nodes[2] - nodes[1];
        out[0] = -(2.0 * h0 + h1) / (h0 * (h0 + h1)) * values[0] +
                 (h0 + h1) / (h0 * h1) * values[1] - h0 / (h1 * (h0 + h1)) * values[2];
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double h0 = nodes[j] - nodes[j - 1];
        const double h1 = nodes[j + 1] - nodes[j];
        out[j] = -h1 / (h0 * (h0 + h1)) * values[j - 1] +
                 (h1 - h0) / (h0 * h1) * values[j] + h0 / (h1 * (h0 + h1)) * values[j + 1];
    }
    {
        const double h0 = nodes[n - 2] - nodes[n - 3];
        const double h1 = nodes[n - 1] - nodes[n - 2];
        out[n - 1] = h1 / (h0 * (h0 + h1)) * values[n - 3] -
                     (h0 + h1) / (h0 * h1) * values[n - 2] +
                     (h0 + 2.0 * h1) / (h1 * (h0 + h1)) * values[n - 1];
    }
    return out;
}

GridFn rl_derivative(const GridFn& g, FracOrder order) {
    const GridFn primitive = rl_integral(g, FracOrder(1.0 - order.alpha));
    return GridFn(std::vector<double>(g.nodes().begin(), g.nodes().end()),
                  derivative_3pt(primitive.nodes(), primitive.values()));
}

GridFn caputo_derivative(const GridFn& g, FracOrder order) {
    std::vector<double> shifted(g.values().begin(), g.values().end());
    const double u0 = shifted.front();
    for (double& v : shifted) {
        v -= u0;
    }
    return rl_derivative(GridFn(std::vector<double>(g.nodes().begin(), g.nodes().end()),
                                std::move(shifted)),
                          order);
}

}  // namespace fracsolve
