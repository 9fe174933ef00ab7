#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gpr/graph.hpp"

namespace gpr {

/// A grouping of all nodes into disjoint nonempty blocks.
///
/// Stored as one label per node in canonical form: blocks are numbered
/// 0, 1, ... in order of their smallest node, so two partitions are equal iff
/// their label vectors are equal.
class Partition {
public:
    Partition() = default;

    /// Any integer labels; relabelled canonically.
    static Partition from_labels(std::span<const std::int64_t> labels);
    /// Blocks of 0-based node ids. Throws ValidationError unless they are
    /// disjoint, nonempty and cover 0..n-1.
    static Partition from_blocks(std::size_t n, const std::vector<std::vector<NodeId>>& blocks);
    /// The one-block partition {V}.
    static Partition whole(std::size_t n);

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t block_count() const noexcept { return block_count_; }
    std::uint32_t label(NodeId v) const { return labels_[v]; }
    std::span<const std::uint32_t> labels() const noexcept { return labels_; }

    /// Blocks in canonical order, each sorted ascending.
    std::vector<std::vector<NodeId>> blocks() const;

    bool operator==(const Partition&) const = default;

private:
    std::vector<std::uint32_t> labels_;
    std::size_t block_count_ = 0;
};

/// Nonnegative weight per edge, in the graph's edge order.
class EdgeWeighting {
public:
    EdgeWeighting() = default;
    /// Throws ValidationError on negative or non-finite weights.
    explicit EdgeWeighting(std::vector<double> weights);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](EdgeId e) const { return weights_[e]; }
    std::span<const double> values() const noexcept { return weights_; }
    /// w(|E|), the sum of all weights.
    double total() const noexcept { return total_; }

    /// Weights of the listed parent edges, in that order.
    EdgeWeighting restricted(std::span<const EdgeId> parent_edges) const;

private:
    std::vector<double> weights_;
    double total_ = 0.0;
};

/// Classes of exact value equality. Blocks need not be connected.
Partition induced_partition(std::span<const double> values);

/// Number of maximal connected node sets on which `values` is constant.
std::size_t connected_pieces(const Graph& g, std::span<const double> values);

/// Partition into connected constant pieces (refines induced_partition).
Partition connected_piece_partition(const Graph& g, std::span<const double> values);

/// Total weight of edges whose endpoints lie in different blocks.
double boundary_weight(const Graph& g, const EdgeWeighting& w, const Partition& p);

}  // namespace gpr
