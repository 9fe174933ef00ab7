#pragma once

#include <cstddef>
#include <span>

#include "gpr/graph.hpp"
#include "gpr/partition.hpp"
#include "gpr/potts.hpp"

namespace gpr {

/// Common refinement: blocks are the nonempty pairwise intersections.
/// Throws ValidationError when the node counts differ.
Partition refine(const Partition& a, const Partition& b);

/// How blocks weight their edges when solved in isolation.
enum class SubgraphWeights {
    Restrict,   ///< reuse the parent graph's weights (default)
    Recompute,  ///< recompute the configured weighting on each component
};

struct RecursiveResult {
    Partition partition;
    NodeSignal fit;       ///< per-node value from the last two-piece fit of its block
    std::size_t passes = 0;
};

/// Repeatedly fits the two-piece solver inside every current block and
/// refines, until a full pass leaves the partition unchanged.
///
/// Each block is solved per connected component of its induced subgraph;
/// component fits are merged by value inside the block.
RecursiveResult recursive_partition(const Graph& g, std::span<const double> y, const EdgeWeighting& w,
                                    const SolverConfig& cfg,
                                    SubgraphWeights sub_weights = SubgraphWeights::Restrict);
RecursiveResult recursive_partition(const Graph& g, std::span<const double> y, const SolverConfig& cfg,
                                    SubgraphWeights sub_weights = SubgraphWeights::Restrict);

}  // namespace gpr
