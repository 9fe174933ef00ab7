#include "gpr/resistance.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <vector>

#include "gpr/error.hpp"

namespace gpr {
namespace {

// Determinant of the Laplacian of a multigraph with the last row and column
// removed. Nodes are 0..n-1; parallel edges add up.
long double reduced_laplacian_det(std::size_t n, const std::vector<Edge>& edges) {
    if (n <= 1) return 1.0L;
    const std::size_t k = n - 1;
    std::vector<long double> a(k * k, 0.0L);
    auto at = [&](std::size_t r, std::size_t c) -> long double& { return a[r * k + c]; };
    for (const Edge& e : edges) {
        if (e.u < k) at(e.u, e.u) += 1.0L;
        if (e.v < k) at(e.v, e.v) += 1.0L;
        if (e.u < k && e.v < k) {
            at(e.u, e.v) -= 1.0L;
            at(e.v, e.u) -= 1.0L;
        }
    }
    long double det = 1.0L;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::fabs(at(r, col)) > std::fabs(at(pivot, col))) pivot = r;
        }
        if (at(pivot, col) == 0.0L) return 0.0L;
        if (pivot != col) {
            for (std::size_t c = 0; c < k; ++c) std::swap(at(pivot, c), at(col, c));
            det = -det;
        }
        det *= at(col, col);
        for (std::size_t r = col + 1; r < k; ++r) {
            const long double f = at(r, col) / at(col, col);
            if (f == 0.0L) continue;
            for (std::size_t c = col; c < k; ++c) at(r, c) -= f * at(col, c);
        }
    }
    return det;
}

double rounded_count(long double det) {
    const long double nearest = std::round(det);
    const long double guard = 1e-6L * std::max<long double>(1.0L, std::fabs(det));
    if (std::fabs(det - nearest) > guard) {
        throw SolverError("spanning tree determinant is not integral within tolerance");
    }
    if (nearest <= 0.0L) {
        throw ValidationError(ValidationError::Kind::Disconnected, "graph has no spanning tree (disconnected)");
    }
    return static_cast<double>(nearest);
}

}  // namespace

EdgeWeighting unit_weights(const Graph& g) { return EdgeWeighting(std::vector<double>(g.edge_count(), 1.0)); }

EdgeWeighting effective_resistance_weights(const Graph& g) {
    require_connected(g);
    const std::size_t n = g.node_count();
    if (n == 1) return EdgeWeighting(std::vector<double>{});

    // Grounding the last node leaves a positive definite (n-1)x(n-1) system;
    // potentials relative to the ground give the same differences as L^+.
    const auto k = static_cast<Eigen::Index>(n - 1);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(n + 2 * g.edge_count());
    for (NodeId v = 0; v + 1 < n; ++v) trip.emplace_back(v, v, static_cast<double>(g.degree(v)));
    for (const Edge& e : g.edges()) {
        if (e.u + 1 < n && e.v + 1 < n) {
            trip.emplace_back(e.u, e.v, -1.0);
            trip.emplace_back(e.v, e.u, -1.0);
        }
    }
    Eigen::SparseMatrix<double> lap(k, k);
    lap.setFromTriplets(trip.begin(), trip.end());

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(lap);
    if (ldlt.info() != Eigen::Success) throw SolverError("Laplacian factorisation failed");

    std::vector<double> r(g.edge_count());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
        const Edge& e = g.edge(id);
        if (e.u + 1 < n) rhs[e.u] = 1.0;
        if (e.v + 1 < n) rhs[e.v] = -1.0;
        const Eigen::VectorXd x = ldlt.solve(rhs);
        const double xu = e.u + 1 < n ? x[e.u] : 0.0;
        const double xv = e.v + 1 < n ? x[e.v] : 0.0;
        r[id] = std::min(1.0, xu - xv);
        if (e.u + 1 < n) rhs[e.u] = 0.0;
        if (e.v + 1 < n) rhs[e.v] = 0.0;
    }
    return EdgeWeighting(std::move(r));
}

double spanning_tree_count(const Graph& g) {
    if (!g.is_connected()) {
        throw ValidationError(ValidationError::Kind::Disconnected, "graph has no spanning tree (disconnected)");
    }
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    return rounded_count(reduced_laplacian_det(g.node_count(), edges));
}

double spanning_tree_fraction(const Graph& g, NodeId u, NodeId v) {
    if (g.find_edge(u, v) < 0) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "spanning_tree_fraction: edge not in graph");
    }
    const double total = spanning_tree_count(g);

    // Contract {u, v}: v merges into u, later ids shift down by one.
    auto relabel = [&](NodeId x) -> NodeId {
        if (x == v) x = u;
        return x > v ? x - 1 : x;
    };
    std::vector<Edge> contracted;
    for (const Edge& e : g.edges()) {
        const NodeId a = relabel(e.u);
        const NodeId b = relabel(e.v);
        if (a != b) contracted.push_back({a, b});
    }
    const double with_edge = rounded_count(reduced_laplacian_det(g.node_count() - 1, contracted));
    return with_edge / total;
}

}  // namespace gpr
