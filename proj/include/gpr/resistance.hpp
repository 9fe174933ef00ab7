#pragma once

#include <utility>

#include "gpr/graph.hpp"
#include "gpr/partition.hpp"

namespace gpr {

/// Weight 1 on every edge.
EdgeWeighting unit_weights(const Graph& g);

/// Effective resistance of every edge with unit conductances,
/// r(i, j) = (e_i - e_j)^T L^+ (e_i - e_j), in (0, 1].
///
/// Computed from a sparse LDL^T factorisation of the Laplacian grounded at the
/// last node, one solve per edge. Throws ValidationError if g is disconnected.
EdgeWeighting effective_resistance_weights(const Graph& g);

/// Number of spanning trees via the matrix-tree theorem: a cofactor of the
/// Laplacian, evaluated by Gaussian elimination with partial pivoting and
/// rounded to the nearest integer. Intended for small graphs (n up to ~20).
/// Throws ValidationError if g is disconnected, SolverError if the
/// determinant is not within 1e-6 (relative) of an integer.
double spanning_tree_count(const Graph& g);

/// Fraction of spanning trees that contain the edge {u, v} (0-based ids):
/// trees(g / {u,v}) / trees(g), with the contraction kept as a multigraph.
/// Throws ValidationError if the edge is absent.
double spanning_tree_fraction(const Graph& g, NodeId u, NodeId v);

}  // namespace gpr
