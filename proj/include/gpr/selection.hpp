#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gpr/graph.hpp"
#include "gpr/partition.hpp"
#include "gpr/potts.hpp"
#include "gpr/recursive.hpp"

namespace gpr {

/// Consecutive node pairs used by the difference-based variance estimate.
/// Every pair is an edge of the graph.
struct PathPairs {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    bool hamiltonian = false;  ///< pairs chain into a single path p(1), ..., p(n)

    /// The node sequence when `hamiltonian`, otherwise empty.
    std::vector<NodeId> order() const;
};

/// If g is a side x side grid (as built by grid_graph), the snake order: row 1
/// left to right, row 2 right to left, and so on. Otherwise the edges of a
/// depth-first spanning tree in discovery order (n - 1 adjacent pairs), which
/// is a Hamiltonian path whenever the DFS happens to produce one.
/// Throws ValidationError if g is disconnected.
PathPairs spanning_path_order(const Graph& g);

/// sum over pairs of (y_a - y_b)^2, divided by (n - 1). With `halve` the
/// result is further divided by 2 (the plain estimate targets 2 sigma^2 on
/// pure noise). Throws ValidationError for fewer than two nodes.
double estimate_sigma2(std::span<const double> y, const PathPairs& path, bool halve = false);

/// sum (y - fit)^2 + sigma2 * connected_pieces(g, fit) * log n
double bic_score(std::span<const double> y, std::span<const double> fit, const Graph& g, double sigma2);

/// lambda = c_lambda * sigma2 * log w(|E|)
double theory_lambda(double c_lambda, double sigma2, const EdgeWeighting& w);

/// The default candidate set {1e-2, 1e-1, 1, 10, 100}.
std::vector<double> default_lambda_grid();

enum class SolverKind { TwoPiece, Recursive };

struct LambdaSelection {
    double lambda = 0.0;
    NodeSignal fit;
    std::vector<double> bic;  ///< per grid entry, in grid order
};

/// Fits every lambda of the grid (cfg.lambda is overridden) and returns the
/// minimum-BIC fit; ties go to the smaller lambda. Grid points run on
/// cfg.jobs workers, each fit single-threaded.
LambdaSelection select_lambda(const Graph& g, std::span<const double> y, std::span<const double> grid,
                              const SolverConfig& cfg, const EdgeWeighting& w, double sigma2,
                              SolverKind solver = SolverKind::TwoPiece);

}  // namespace gpr
