#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace gpr {

inline constexpr double kInfiniteCapacity = std::numeric_limits<double>::infinity();

/// Directed capacitated network with two terminals.
///
/// An arc carries a forward and a reverse capacity; `add_arc` creates a
/// one-way arc (reverse 0) and `add_edge` an undirected link (equal both ways).
/// Capacities may be +infinity.
class FlowNetwork {
public:
    using Node = std::uint32_t;

    struct Arc {
        Node from;
        Node to;
        double capacity;
        double reverse_capacity;
    };

    FlowNetwork(std::size_t node_count, Node source, Node sink);

    Node add_node();
    std::size_t add_arc(Node from, Node to, double capacity);
    std::size_t add_edge(Node a, Node b, double capacity);
    void set_capacity(std::size_t arc, double capacity, double reverse_capacity);

    std::size_t node_count() const noexcept { return node_count_; }
    Node source() const noexcept { return source_; }
    Node sink() const noexcept { return sink_; }
    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    const Arc& arc(std::size_t id) const { return arcs_[id]; }

private:
    void check_node(Node v) const;
    static void check_capacity(double c);

    std::size_t node_count_;
    Node source_;
    Node sink_;
    std::vector<Arc> arcs_;
};

struct CutResult {
    /// Capacity of the returned cut (sum over arcs leaving the source side).
    double value = 0.0;
    /// Total flow pushed; equal to `value` up to rounding.
    double flow_value = 0.0;
    /// 1 for nodes on the source side: those reachable from s in the final
    /// residual network (the unique minimal source side).
    std::vector<std::uint8_t> source_side;
    /// Net flow on each arc in its forward direction (negative means reverse).
    std::vector<double> arc_flow;
};

/// Dinic max-flow / min-cut with reusable buffers. One instance per thread.
class MinCutSolver {
public:
    /// Throws SolverError if every s-t cut contains an infinite arc.
    CutResult solve(const FlowNetwork& net);

private:
    void build(const FlowNetwork& net);
    void check_finite_cut(std::uint32_t s, std::uint32_t t);
    double cancel_terminal_pairs(std::uint32_t s, std::uint32_t t);
    bool build_levels(std::uint32_t s, std::uint32_t t);
    double blocking_flow(std::uint32_t s, std::uint32_t t);

    std::vector<std::uint32_t> head_;   // CSR offsets into adj_
    std::vector<std::uint32_t> adj_;    // residual arc ids grouped by tail
    std::vector<std::uint32_t> to_;     // per residual arc
    std::vector<double> residual_;      // per residual arc; arc a pairs with a ^ 1
    std::vector<std::int32_t> level_;
    std::vector<std::uint32_t> cursor_;
    std::vector<std::uint32_t> queue_;
    std::vector<std::uint32_t> path_;
};

/// Convenience wrapper around MinCutSolver.
CutResult min_st_cut(const FlowNetwork& net);

}  // namespace gpr
