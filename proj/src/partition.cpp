#include "gpr/partition.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "gpr/error.hpp"
#include "gpr/simd/kernels.hpp"

namespace gpr {

Partition Partition::from_labels(std::span<const std::int64_t> labels) {
    Partition p;
    p.labels_.resize(labels.size());
    std::unordered_map<std::int64_t, std::uint32_t> canon;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = canon.try_emplace(labels[i], static_cast<std::uint32_t>(canon.size()));
        p.labels_[i] = it->second;
    }
    p.block_count_ = canon.size();
    return p;
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<NodeId>>& blocks) {
    std::vector<std::int64_t> labels(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
            throw ValidationError(ValidationError::Kind::InvalidArgument, "partition has an empty block");
        }
        for (NodeId v : blocks[b]) {
            if (v >= n) {
                throw ValidationError(ValidationError::Kind::EndpointOutOfRange, "partition node out of range");
            }
            if (labels[v] != -1) {
                throw ValidationError(ValidationError::Kind::InvalidArgument, "partition blocks overlap");
            }
            labels[v] = static_cast<std::int64_t>(b);
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (labels[v] == -1) {
            std::ostringstream os;
            os << "partition does not cover node " << v + 1;
            throw ValidationError(ValidationError::Kind::InvalidArgument, os.str());
        }
    }
    return from_labels(labels);
}

Partition Partition::whole(std::size_t n) {
    std::vector<std::int64_t> labels(n, 0);
    return from_labels(labels);
}

std::vector<std::vector<NodeId>> Partition::blocks() const {
    std::vector<std::vector<NodeId>> out(block_count_);
    for (NodeId v = 0; v < labels_.size(); ++v) out[labels_[v]].push_back(v);
    return out;
}

EdgeWeighting::EdgeWeighting(std::vector<double> weights) : weights_(std::move(weights)) {
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0.0) {
            throw ValidationError(ValidationError::Kind::InvalidArgument,
                                  "edge weights must be finite and nonnegative");
        }
    }
    total_ = simd::kernels().sum(weights_.data(), weights_.size());
}

EdgeWeighting EdgeWeighting::restricted(std::span<const EdgeId> parent_edges) const {
    std::vector<double> sub;
    sub.reserve(parent_edges.size());
    for (EdgeId e : parent_edges) sub.push_back(weights_.at(e));
    return EdgeWeighting(std::move(sub));
}

Partition induced_partition(std::span<const double> values) {
    std::map<double, std::int64_t> classes;
    std::vector<std::int64_t> labels(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ValidationError(ValidationError::Kind::NonFinite, "induced_partition: non-finite value");
        }
        auto [it, inserted] = classes.try_emplace(values[i], static_cast<std::int64_t>(classes.size()));
        labels[i] = it->second;
    }
    return Partition::from_labels(labels);
}

Partition connected_piece_partition(const Graph& g, std::span<const double> values) {
    validate_signal(values, g.node_count(), "connected_pieces");
    std::vector<std::int64_t> labels(g.node_count(), -1);
    std::vector<NodeId> stack;
    std::int64_t count = 0;
    for (NodeId start = 0; start < g.node_count(); ++start) {
        if (labels[start] != -1) continue;
        labels[start] = count;
        stack.push_back(start);
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            for (NodeId u : g.neighbors(v)) {
                if (labels[u] == -1 && values[u] == values[v]) {
                    labels[u] = count;
                    stack.push_back(u);
                }
            }
        }
        ++count;
    }
    return Partition::from_labels(labels);
}

std::size_t connected_pieces(const Graph& g, std::span<const double> values) {
    return connected_piece_partition(g, values).block_count();
}

double boundary_weight(const Graph& g, const EdgeWeighting& w, const Partition& p) {
    if (p.node_count() != g.node_count()) {
        throw ValidationError(ValidationError::Kind::SizeMismatch, "boundary_weight: partition size mismatch");
    }
    if (w.size() != g.edge_count()) {
        throw ValidationError(ValidationError::Kind::SizeMismatch, "boundary_weight: weight count mismatch");
    }
    double total = 0.0;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        if (p.label(edge.u) != p.label(edge.v)) total += w[e];
    }
    return total;
}

}  // namespace gpr
