#include "gpr/selection.hpp"

#include <cmath>

#include "gpr/error.hpp"
#include "gpr/parallel.hpp"
#include "gpr/simd/kernels.hpp"

namespace gpr {
namespace {

// Side length if g has exactly the edge set of grid_graph(side), else 0.
std::size_t grid_side(const Graph& g) {
    const std::size_t n = g.node_count();
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (side * side != n || side < 2 || g.edge_count() != 2 * side * (side - 1)) return 0;
    for (const Edge& e : g.edges()) {
        const NodeId a = std::min(e.u, e.v);
        const NodeId b = std::max(e.u, e.v);
        const bool horizontal = b == a + 1 && a / side == b / side;
        const bool vertical = b == a + side;
        if (!horizontal && !vertical) return 0;
    }
    return side;
}

}  // namespace

std::vector<NodeId> PathPairs::order() const {
    std::vector<NodeId> out;
    if (!hamiltonian) return out;
    if (pairs.empty()) return out;
    out.push_back(pairs.front().first);
    for (const auto& p : pairs) out.push_back(p.second);
    return out;
}

PathPairs spanning_path_order(const Graph& g) {
    require_connected(g);
    PathPairs path;
    const std::size_t n = g.node_count();
    if (const std::size_t side = grid_side(g); side > 0) {
        std::vector<NodeId> order;
        order.reserve(n);
        for (std::size_t i = 0; i < side; ++i) {
            for (std::size_t k = 0; k < side; ++k) {
                const std::size_t j = i % 2 == 0 ? k : side - 1 - k;
                order.push_back(static_cast<NodeId>(i * side + j));
            }
        }
        for (std::size_t k = 0; k + 1 < n; ++k) path.pairs.emplace_back(order[k], order[k + 1]);
        path.hamiltonian = true;
        return path;
    }

    // Iterative DFS from node 0; neighbours visited in adjacency order.
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::pair<NodeId, std::size_t>> stack{{0, 0}};
    seen[0] = 1;
    bool chain = true;
    NodeId last = 0;
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        const auto nb = g.neighbors(v);
        if (next == nb.size()) {
            stack.pop_back();
            continue;
        }
        const NodeId u = nb[next++];
        if (seen[u]) continue;
        seen[u] = 1;
        if (v != last) chain = false;
        path.pairs.emplace_back(v, u);
        last = u;
        stack.emplace_back(u, 0);
    }
    path.hamiltonian = chain;
    return path;
}

double estimate_sigma2(std::span<const double> y, const PathPairs& path, bool halve) {
    if (y.size() < 2) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "variance estimate needs at least two nodes");
    }
    std::vector<double> a;
    std::vector<double> b;
    a.reserve(path.pairs.size());
    b.reserve(path.pairs.size());
    for (const auto& [p, q] : path.pairs) {
        if (p >= y.size() || q >= y.size()) {
            throw ValidationError(ValidationError::Kind::SizeMismatch, "path refers to nodes beyond the signal");
        }
        a.push_back(y[p]);
        b.push_back(y[q]);
    }
    const double s = simd::kernels().sum_sq_diff(a.data(), b.data(), a.size()) / static_cast<double>(y.size() - 1);
    return halve ? s / 2.0 : s;
}

double bic_score(std::span<const double> y, std::span<const double> fit, const Graph& g, double sigma2) {
    validate_signal(y, g.node_count(), "observations");
    validate_signal(fit, g.node_count(), "fit");
    const double rss = simd::kernels().sum_sq_diff(y.data(), fit.data(), y.size());
    const auto pieces = static_cast<double>(connected_pieces(g, fit));
    return rss + sigma2 * pieces * std::log(static_cast<double>(g.node_count()));
}

double theory_lambda(double c_lambda, double sigma2, const EdgeWeighting& w) {
    return c_lambda * sigma2 * std::log(w.total());
}

std::vector<double> default_lambda_grid() { return {1e-2, 1e-1, 1e0, 1e1, 1e2}; }

LambdaSelection select_lambda(const Graph& g, std::span<const double> y, std::span<const double> grid,
                              const SolverConfig& cfg, const EdgeWeighting& w, double sigma2,
                              SolverKind solver) {
    if (grid.empty()) throw ValidationError(ValidationError::Kind::InvalidArgument, "lambda grid is empty");
    std::vector<NodeSignal> fits(grid.size());
    LambdaSelection out;
    out.bic.resize(grid.size());
    parallel_for(grid.size(), cfg.jobs, [&](std::size_t i, unsigned) {
        SolverConfig local = cfg;
        local.lambda = grid[i];
        local.jobs = 1;
        fits[i] = solver == SolverKind::TwoPiece ? potts_two_piece(g, y, w, local)
                                                 : recursive_partition(g, y, w, local).fit;
        out.bic[i] = bic_score(y, fits[i], g, sigma2);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (out.bic[i] < out.bic[best] || (out.bic[i] == out.bic[best] && grid[i] < grid[best])) best = i;
    }
    out.lambda = grid[best];
    out.fit = std::move(fits[best]);
    return out;
}

}  // namespace gpr
