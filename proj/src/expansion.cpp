#include "gpr/expansion.hpp"

#include <cmath>

#include "gpr/error.hpp"
#include "gpr/simd/kernels.hpp"

namespace gpr {

AlphaExpansion::AlphaExpansion(const Graph& g, std::span<const double> y, std::span<const double> mu,
                               const EdgeWeighting& w, double lambda, KeepLinkScale scale)
    : graph_(g), y_(y.begin(), y.end()), mu_(mu.begin(), mu.end()), weights_(w), lambda_(lambda) {
    const std::size_t n = g.node_count();
    validate_signal(y_, n, "observations");
    validate_signal(mu_, n, "current labelling");
    if (w.size() != g.edge_count()) {
        throw ValidationError(ValidationError::Kind::SizeMismatch, "edge weighting does not match the graph");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "lambda must be finite and >= 0");
    }

    keep_cost_.resize(n);
    switch_cost_.resize(n);
    simd::kernels().half_sq_diff(y_.data(), mu_.data(), keep_cost_.data(), n);
    if (scale == KeepLinkScale::Unhalved) {
        for (double& v : keep_cost_) v *= 2.0;
    }

    const auto s = static_cast<FlowNetwork::Node>(n);
    const auto t = static_cast<FlowNetwork::Node>(n + 1);
    net_.network = FlowNetwork(n + 2, s, t);
    auto& fn = net_.network;
    net_.source_arc.resize(n);
    net_.sink_arc.resize(n);
    for (NodeId i = 0; i < n; ++i) {
        net_.source_arc[i] = fn.add_arc(s, i, 0.0);
        net_.sink_arc[i] = fn.add_arc(i, t, 0.0);
    }
    edge_arc_.resize(g.edge_count());
    aux_second_arc_.assign(g.edge_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        if (mu_[edge.u] == mu_[edge.v]) {
            edge_arc_[e] = fn.add_edge(edge.u, edge.v, 0.0);
        } else {
            const auto a = fn.add_node();
            net_.aux_edge.push_back(e);
            edge_arc_[e] = fn.add_edge(edge.u, a, 0.0);
            aux_second_arc_[e] = fn.add_edge(edge.v, a, 0.0);
            fn.add_edge(a, t, lambda_ * w[e]);
        }
    }
}

const ExpansionNetwork& AlphaExpansion::network_for(double c) {
    if (!std::isfinite(c)) throw ValidationError(ValidationError::Kind::NonFinite, "expansion level must be finite");
    const std::size_t n = graph_.node_count();
    auto& fn = net_.network;
    simd::kernels().half_sq_dist_to(y_.data(), c, switch_cost_.data(), n);
    for (NodeId i = 0; i < n; ++i) {
        fn.set_capacity(net_.source_arc[i], switch_cost_[i], 0.0);
        fn.set_capacity(net_.sink_arc[i], mu_[i] != c ? keep_cost_[i] : kInfiniteCapacity, 0.0);
    }
    for (EdgeId e = 0; e < graph_.edge_count(); ++e) {
        const Edge& edge = graph_.edge(e);
        const double lw = lambda_ * weights_[e];
        const double first = mu_[edge.u] != c ? lw : 0.0;
        fn.set_capacity(edge_arc_[e], first, first);
        if (mu_[edge.u] != mu_[edge.v]) {
            const double second = mu_[edge.v] != c ? lw : 0.0;
            fn.set_capacity(aux_second_arc_[e], second, second);
        }
    }
    return net_;
}

NodeSignal AlphaExpansion::expand(double c) {
    const auto& net = network_for(c);
    const CutResult cut = solver_.solve(net.network);
    NodeSignal out(mu_);
    for (NodeId i = 0; i < out.size(); ++i) {
        if (!cut.source_side[i]) out[i] = c;
    }
    return out;
}

ExpansionNetwork build_expansion_network(const Graph& g, std::span<const double> y,
                                         std::span<const double> mu, const EdgeWeighting& w,
                                         double lambda, double c, KeepLinkScale scale) {
    AlphaExpansion engine(g, y, mu, w, lambda, scale);
    return engine.network_for(c);
}

NodeSignal alpha_expand(std::span<const double> mu, std::span<const double> y, const Graph& g,
                        double lambda, const EdgeWeighting& w, double c, KeepLinkScale scale) {
    AlphaExpansion engine(g, y, mu, w, lambda, scale);
    return engine.expand(c);
}

}  // namespace gpr
