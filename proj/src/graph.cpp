#include "gpr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "gpr/error.hpp"

namespace gpr {
namespace {

std::uint64_t edge_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

Graph Graph::from_edges(std::size_t node_count, std::vector<Edge> edges) {
    if (node_count == 0) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "graph needs at least one node");
    }
    if (node_count > 0xffffffffu) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "too many nodes");
    }
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    for (const Edge& e : edges) {
        if (e.u >= node_count || e.v >= node_count) {
            std::ostringstream os;
            os << "edge endpoint out of range: (" << e.u + 1 << ", " << e.v + 1 << ") with n = " << node_count;
            throw ValidationError(ValidationError::Kind::EndpointOutOfRange, os.str());
        }
        if (e.u == e.v) {
            std::ostringstream os;
            os << "self-loop at node " << e.u + 1;
            throw ValidationError(ValidationError::Kind::SelfLoop, os.str());
        }
        if (!seen.insert(edge_key(e.u, e.v)).second) {
            std::ostringstream os;
            os << "duplicate edge (" << e.u + 1 << ", " << e.v + 1 << ")";
            throw ValidationError(ValidationError::Kind::DuplicateEdge, os.str());
        }
    }

    Graph g;
    g.node_count_ = node_count;
    g.edges_ = std::move(edges);
    g.offsets_.assign(node_count + 1, 0);
    for (const Edge& e : g.edges_) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adj_nodes_.resize(2 * g.edges_.size());
    g.adj_edges_.resize(2 * g.edges_.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    g.src_.reserve(g.edges_.size());
    g.dst_.reserve(g.edges_.size());
    for (EdgeId id = 0; id < g.edges_.size(); ++id) {
        const Edge& e = g.edges_[id];
        g.adj_nodes_[cursor[e.u]] = e.v;
        g.adj_edges_[cursor[e.u]++] = id;
        g.adj_nodes_[cursor[e.v]] = e.u;
        g.adj_edges_[cursor[e.v]++] = id;
        g.src_.push_back(e.u);
        g.dst_.push_back(e.v);
    }
    return g;
}

std::int64_t Graph::find_edge(NodeId u, NodeId v) const {
    if (u >= node_count_ || v >= node_count_) return -1;
    if (degree(u) > degree(v)) std::swap(u, v);
    const auto nb = neighbors(u);
    const auto ids = incident_edges(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
        if (nb[k] == v) return ids[k];
    }
    return -1;
}

std::pair<std::vector<std::uint32_t>, std::size_t> Graph::components() const {
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> comp(node_count_, unset);
    std::vector<NodeId> stack;
    std::uint32_t count = 0;
    for (NodeId start = 0; start < node_count_; ++start) {
        if (comp[start] != unset) continue;
        comp[start] = count;
        stack.push_back(start);
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            for (NodeId u : neighbors(v)) {
                if (comp[u] == unset) {
                    comp[u] = count;
                    stack.push_back(u);
                }
            }
        }
        ++count;
    }
    return {std::move(comp), count};
}

bool Graph::is_connected() const { return components().second == 1; }

Graph build_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<Edge> internal;
    internal.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a < 1 || b < 1 || a > n || b > n) {
            std::ostringstream os;
            os << "edge endpoint out of range: (" << a << ", " << b << ") with n = " << n;
            throw ValidationError(ValidationError::Kind::EndpointOutOfRange, os.str());
        }
        internal.push_back({static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1)});
    }
    return Graph::from_edges(n, std::move(internal));
}

void require_connected(const Graph& g) {
    if (!g.is_connected()) {
        throw ValidationError(ValidationError::Kind::Disconnected, "graph is not connected");
    }
}

Graph grid_graph(std::size_t side) {
    if (side == 0) throw ValidationError(ValidationError::Kind::InvalidArgument, "grid side must be positive");
    std::vector<Edge> edges;
    edges.reserve(2 * side * (side - 1));
    auto id = [side](std::size_t i, std::size_t j) { return static_cast<NodeId>(i * side + j); };
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            if (j + 1 < side) edges.push_back({id(i, j), id(i, j + 1)});
            if (i + 1 < side) edges.push_back({id(i, j), id(i + 1, j)});
        }
    }
    return Graph::from_edges(side * side, std::move(edges));
}

Graph path_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph::from_edges(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw ValidationError(ValidationError::Kind::InvalidArgument, "cycle needs n >= 3");
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) edges.push_back({i, static_cast<NodeId>((i + 1) % n)});
    return Graph::from_edges(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j});
    }
    return Graph::from_edges(n, std::move(edges));
}

Subgraph node_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    if (nodes.empty()) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "node_subgraph: empty node set");
    }
    Subgraph sub;
    sub.to_local.assign(g.node_count(), -1);
    std::vector<NodeId> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (NodeId v : sorted) {
        if (v >= g.node_count()) {
            throw ValidationError(ValidationError::Kind::EndpointOutOfRange, "node_subgraph: node out of range");
        }
        sub.to_local[v] = static_cast<std::int64_t>(sub.to_parent.size());
        sub.to_parent.push_back(v);
    }
    std::vector<Edge> edges;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& pe = g.edge(e);
        const auto a = sub.to_local[pe.u];
        const auto b = sub.to_local[pe.v];
        if (a >= 0 && b >= 0) {
            edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
            sub.parent_edge.push_back(e);
        }
    }
    sub.graph = Graph::from_edges(sub.to_parent.size(), std::move(edges));
    return sub;
}

void validate_signal(std::span<const double> values, std::size_t n, const char* what) {
    if (values.size() != n) {
        std::ostringstream os;
        os << what << ": length " << values.size() << " does not match node count " << n;
        throw ValidationError(ValidationError::Kind::SizeMismatch, os.str());
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            std::ostringstream os;
            os << what << ": non-finite value at node " << i + 1;
            throw ValidationError(ValidationError::Kind::NonFinite, os.str());
        }
    }
}

}  // namespace gpr
