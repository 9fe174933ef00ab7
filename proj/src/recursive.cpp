#include "gpr/recursive.hpp"

#include <map>
#include <utility>

#include "gpr/error.hpp"
#include "gpr/resistance.hpp"

namespace gpr {

Partition refine(const Partition& a, const Partition& b) {
    if (a.node_count() != b.node_count()) {
        throw ValidationError(ValidationError::Kind::SizeMismatch, "refine: partitions cover different node sets");
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> ids;
    std::vector<std::int64_t> labels(a.node_count());
    for (NodeId v = 0; v < a.node_count(); ++v) {
        auto [it, inserted] = ids.try_emplace({a.label(v), b.label(v)}, static_cast<std::int64_t>(ids.size()));
        labels[v] = it->second;
    }
    return Partition::from_labels(labels);
}

RecursiveResult recursive_partition(const Graph& g, std::span<const double> y, const EdgeWeighting& w,
                                    const SolverConfig& cfg, SubgraphWeights sub_weights) {
    cfg.validate();
    const std::size_t n = g.node_count();
    validate_signal(y, n, "observations");
    require_connected(g);

    RecursiveResult result;
    result.partition = Partition::whole(n);
    result.fit.assign(n, 0.0);

    while (true) {
        ++result.passes;
        const Partition before = result.partition;
        // Label per node: (block, fitted value) pairs, made canonical below.
        std::map<std::pair<std::uint32_t, double>, std::int64_t> ids;
        std::vector<std::int64_t> labels(n);

        for (const auto& block : before.blocks()) {
            const Subgraph sub = node_subgraph(g, block);
            const auto [comp, comp_count] = sub.graph.components();
            std::vector<std::vector<NodeId>> members(comp_count);
            for (NodeId v = 0; v < comp.size(); ++v) members[comp[v]].push_back(v);

            for (const auto& local_nodes : members) {
                std::vector<NodeId> parent_nodes;
                parent_nodes.reserve(local_nodes.size());
                for (NodeId v : local_nodes) parent_nodes.push_back(sub.to_parent[v]);
                const Subgraph piece = node_subgraph(g, parent_nodes);

                EdgeWeighting piece_w;
                if (sub_weights == SubgraphWeights::Recompute && cfg.weighting == WeightingKind::Resistance) {
                    piece_w = effective_resistance_weights(piece.graph);
                } else {
                    piece_w = w.restricted(piece.parent_edge);
                }
                NodeSignal piece_y;
                piece_y.reserve(parent_nodes.size());
                for (NodeId v : piece.to_parent) piece_y.push_back(y[v]);

                const NodeSignal fit = potts_two_piece(piece.graph, piece_y, piece_w, cfg);
                for (NodeId v = 0; v < fit.size(); ++v) {
                    const NodeId parent = piece.to_parent[v];
                    result.fit[parent] = fit[v];
                    const std::pair key{before.label(parent), fit[v]};
                    auto [it, inserted] = ids.try_emplace(key, static_cast<std::int64_t>(ids.size()));
                    labels[parent] = it->second;
                }
            }
        }
        result.partition = refine(before, Partition::from_labels(labels));
        if (result.partition == before) break;
    }
    return result;
}

RecursiveResult recursive_partition(const Graph& g, std::span<const double> y, const SolverConfig& cfg,
                                    SubgraphWeights sub_weights) {
    return recursive_partition(g, y, resolve_weights(g, cfg), cfg, sub_weights);
}

}  // namespace gpr
