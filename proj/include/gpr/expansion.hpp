#pragma once

#include <span>
#include <vector>

#include "gpr/graph.hpp"
#include "gpr/maxflow.hpp"
#include "gpr/partition.hpp"

namespace gpr {

/// Scale of the data term on the links that keep a node's current value.
/// `Half` matches the 1/2 in the objective and is the default. `Unhalved`
/// reproduces the published pseudocode literally (no 1/2 on that link).
enum class KeepLinkScale { Half, Unhalved };

/// Network for one expansion move. Graph node i is network node i; the
/// source is n, the sink n + 1 and auxiliary nodes follow, one per edge whose
/// endpoints currently disagree.
struct ExpansionNetwork {
    FlowNetwork network{2, 0, 1};
    std::vector<std::size_t> source_arc;  ///< per graph node, s -> i
    std::vector<std::size_t> sink_arc;    ///< per graph node, i -> t
    std::vector<EdgeId> aux_edge;         ///< per auxiliary node, the graph edge it splits
};

/// Reusable expansion engine for a fixed current labelling `mu`.
///
/// The network topology depends only on which edges disagree under `mu`, so
/// it is built once; `expand(c)` refreshes the capacities for level c and cuts.
/// Nodes that end on the sink side take value c, the rest keep `mu`.
class AlphaExpansion {
public:
    AlphaExpansion(const Graph& g, std::span<const double> y, std::span<const double> mu,
                   const EdgeWeighting& w, double lambda, KeepLinkScale scale = KeepLinkScale::Half);

    /// Capacities for level c written into the held network.
    const ExpansionNetwork& network_for(double c);

    /// The optimal expansion of mu toward c.
    NodeSignal expand(double c);

    const NodeSignal& current() const noexcept { return mu_; }

private:
    const Graph& graph_;
    NodeSignal y_;
    NodeSignal mu_;
    const EdgeWeighting& weights_;
    double lambda_;
    ExpansionNetwork net_;
    std::vector<double> keep_cost_;    // data cost of keeping mu_i
    std::vector<double> switch_cost_;  // data cost of moving to c (scratch)
    std::vector<std::size_t> edge_arc_;  // same-label edges: the i-j link; else the i-a link
    std::vector<std::size_t> aux_second_arc_;  // j-a link per edge (unused for same-label)
    MinCutSolver solver_;
};

/// Builds the expansion network for one level c.
ExpansionNetwork build_expansion_network(const Graph& g, std::span<const double> y,
                                         std::span<const double> mu, const EdgeWeighting& w,
                                         double lambda, double c,
                                         KeepLinkScale scale = KeepLinkScale::Half);

/// One expansion move: the labelling minimising the objective among all
/// labellings that keep mu_i or switch to c at every node.
NodeSignal alpha_expand(std::span<const double> mu, std::span<const double> y, const Graph& g,
                        double lambda, const EdgeWeighting& w, double c,
                        KeepLinkScale scale = KeepLinkScale::Half);

}  // namespace gpr
