#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gpr {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Real value per node: observations, true means and fitted signals all share this type.
using NodeSignal = std::vector<double>;

struct Edge {
    NodeId u;
    NodeId v;
};

/// Undirected simple graph with contiguous nodes.
///
/// Node ids are 0-based inside the library. `build_graph` and the text formats
/// use 1-based ids; conversion happens at those boundaries only.
class Graph {
public:
    Graph() = default;

    /// Validates and builds from 0-based edges. Throws ValidationError on
    /// out-of-range endpoints, self-loops and duplicates (unordered).
    static Graph from_edges(std::size_t node_count, std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[e]; }

    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    /// Neighbours of v, in edge-list order.
    std::span<const NodeId> neighbors(NodeId v) const {
        return {adj_nodes_.data() + offsets_[v], degree(v)};
    }
    /// Edge ids parallel to neighbors(v).
    std::span<const EdgeId> incident_edges(NodeId v) const {
        return {adj_edges_.data() + offsets_[v], degree(v)};
    }

    /// Edge id joining u and v, or -1 when absent.
    std::int64_t find_edge(NodeId u, NodeId v) const;

    bool is_connected() const;

    /// Component label per node (0-based, numbered by smallest member) and the count.
    std::pair<std::vector<std::uint32_t>, std::size_t> components() const;

    // Edge endpoints as separate arrays, convenient for the vector kernels.
    std::span<const std::uint32_t> edge_sources() const noexcept { return src_; }
    std::span<const std::uint32_t> edge_targets() const noexcept { return dst_; }

private:
    std::size_t node_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adj_nodes_;
    std::vector<EdgeId> adj_edges_;
    std::vector<std::uint32_t> src_;
    std::vector<std::uint32_t> dst_;
};

/// Builds a graph from 1-indexed node pairs.
Graph build_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

/// Throws ValidationError(Disconnected) unless g is connected.
void require_connected(const Graph& g);

/// side x side 4-neighbour grid. Node (i, j), 1 <= i, j <= side, has id (i-1)*side + (j-1).
Graph grid_graph(std::size_t side);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);

/// Induced subgraph plus the index maps in both directions.
struct Subgraph {
    Graph graph;
    std::vector<NodeId> to_parent;       ///< local id -> parent id
    std::vector<std::int64_t> to_local;  ///< parent id -> local id, -1 if absent
    std::vector<EdgeId> parent_edge;     ///< local edge id -> parent edge id
};

/// Induced subgraph on `nodes` (0-based, any order; duplicates ignored).
/// Local ids follow increasing parent id. The result may be disconnected.
Subgraph node_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Throws ValidationError unless every entry is finite and the length is n.
void validate_signal(std::span<const double> values, std::size_t n, const char* what);

}  // namespace gpr
