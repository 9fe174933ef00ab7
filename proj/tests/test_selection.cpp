#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gpr/bench.hpp"
#include "gpr/error.hpp"
#include "gpr/resistance.hpp"
#include "gpr/selection.hpp"
#include "oracles.hpp"

using namespace gpr;

TEST_CASE("snake order on grids") {
    const PathPairs p = spanning_path_order(grid_graph(2));
    CHECK(p.hamiltonian);
    // (1,1),(1,2),(2,2),(2,1)
    CHECK(p.order() == std::vector<NodeId>{0, 1, 3, 2});
    const Graph g = grid_graph(5);
    const PathPairs q = spanning_path_order(g);
    CHECK(q.pairs.size() == 24);
    for (const auto& [a, b] : q.pairs) CHECK(g.find_edge(a, b) >= 0);
}

TEST_CASE("path and complete graphs") {
    const PathPairs p4 = spanning_path_order(path_graph(4));
    CHECK(p4.hamiltonian);
    CHECK(p4.order() == std::vector<NodeId>{0, 1, 2, 3});

    const Graph k3 = complete_graph(3);
    const PathPairs p = spanning_path_order(k3);
    CHECK(p.pairs.size() == 2);
    for (const auto& [a, b] : p.pairs) CHECK(k3.find_edge(a, b) >= 0);
}

TEST_CASE("spanning pairs on random graphs form a spanning tree") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + rng() % 20;
        const Graph g = oracle::random_connected_graph(n, 0.2, rng);
        const PathPairs p = spanning_path_order(g);
        REQUIRE(p.pairs.size() == n - 1);
        std::vector<Edge> tree;
        for (const auto& [a, b] : p.pairs) {
            CHECK(g.find_edge(a, b) >= 0);
            tree.push_back({a, b});
        }
        CHECK(Graph::from_edges(n, tree).is_connected());
        if (p.hamiltonian) {
            auto order = p.order();
            std::sort(order.begin(), order.end());
            std::vector<NodeId> all(n);
            std::iota(all.begin(), all.end(), 0);
            CHECK(order == all);
        }
    }
    CHECK_THROWS_AS(spanning_path_order(build_graph(3, {{1, 2}})), ValidationError);
}

TEST_CASE("variance estimate") {
    const PathPairs p4 = spanning_path_order(path_graph(4));
    CHECK(estimate_sigma2(std::vector<double>(4, 7.0), p4) == 0.0);
    CHECK(estimate_sigma2(std::vector<double>{0, 1, 0, 1}, p4) == 1.0);
    CHECK(estimate_sigma2(std::vector<double>{0, 1, 0, 1}, p4, true) == 0.5);
    const double kappa = 3.0;
    CHECK(estimate_sigma2(std::vector<double>{0, 0, kappa, kappa}, p4) == doctest::Approx(kappa * kappa / 3.0));
    CHECK_THROWS_AS(estimate_sigma2(std::vector<double>{1.0}, PathPairs{}), ValidationError);
}

TEST_CASE("bic score") {
    const Graph p4 = path_graph(4);
    const std::vector<double> distinct{1, 2, 3, 4};
    CHECK(bic_score(distinct, distinct, p4, 1.0) == doctest::Approx(4.0 * std::log(4.0)));

    const std::vector<double> y{1, 2, 3, 6};
    const std::vector<double> flat(4, 3.0);
    CHECK(bic_score(y, flat, p4, 2.0) == doctest::Approx(4 + 1 + 0 + 9 + 2.0 * std::log(4.0)));

    const std::vector<double> two{0, 0, 2, 2};
    const double s2 = estimate_sigma2(two, spanning_path_order(p4));
    CHECK(s2 == doctest::Approx(4.0 / 3.0));
    CHECK(bic_score(two, two, p4, s2) == doctest::Approx(4.0 / 3.0 * 2.0 * std::log(4.0)));
}

TEST_CASE("bic score is invariant under relabeling") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 3 + rng() % 12;
        const Graph g = oracle::random_connected_graph(n, 0.3, rng);
        std::vector<double> y(n), fit(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = oracle::dyadic(rng, -2, 2);
            fit[i] = static_cast<double>(rng() % 3);
        }
        std::vector<NodeId> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Edge> edges;
        for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
        const Graph h = Graph::from_edges(n, edges);
        std::vector<double> py(n), pfit(n);
        for (std::size_t i = 0; i < n; ++i) {
            py[perm[i]] = y[i];
            pfit[perm[i]] = fit[i];
        }
        CHECK(bic_score(py, pfit, h, 1.5) == doctest::Approx(bic_score(y, fit, g, 1.5)).epsilon(1e-12));
    }
}

TEST_CASE("theory lambda") {
    const Graph k4 = complete_graph(4);
    CHECK(theory_lambda(4.0, 0.5, unit_weights(k4)) == doctest::Approx(2.0 * std::log(6.0)));
}

TEST_CASE("lambda selection") {
    const Graph g = grid_graph(8);
    SolverConfig cfg;
    cfg.delta = 0.1;
    const auto grid = default_lambda_grid();
    CHECK(grid == std::vector<double>{0.01, 0.1, 1, 10, 100});
    const EdgeWeighting w = unit_weights(g);

    SUBCASE("noiseless two-block input") {
        const NodeSignal truth = bench::generate_case(3, 8, 5.0);
        const double s2 = estimate_sigma2(truth, spanning_path_order(g));
        const auto sel = select_lambda(g, truth, grid, cfg, w, s2);
        CHECK(connected_pieces(g, sel.fit) == 2);
        CHECK(induced_partition(sel.fit) == induced_partition(truth));
    }
    SUBCASE("constant input") {
        const std::vector<double> y(64, 1.5);
        const auto sel = select_lambda(g, y, grid, cfg, w, 0.0);
        CHECK(connected_pieces(g, sel.fit) == 1);
        CHECK(sel.lambda == 0.01);
    }
    SUBCASE("single grid point") {
        const NodeSignal y = bench::add_noise(bench::generate_case(1, 8, 2.0), 1.0, 4);
        const std::vector<double> one{3.0};
        CHECK(select_lambda(g, y, one, cfg, w, 1.0).lambda == 3.0);
        CHECK_THROWS_AS(select_lambda(g, y, std::vector<double>{}, cfg, w, 1.0), ValidationError);
    }
    SUBCASE("argmin over the grid, independent of the worker count") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const NodeSignal y = bench::add_noise(bench::generate_case(1 + seed % 4, 8, 2.0), 1.0, seed);
            const double s2 = estimate_sigma2(y, spanning_path_order(g));
            SolverConfig local = cfg;
            local.tau = s2;
            const auto sel = select_lambda(g, y, grid, local, w, s2);
            REQUIRE(sel.bic.size() == grid.size());
            CHECK(std::find(grid.begin(), grid.end(), sel.lambda) != grid.end());
            for (double b : sel.bic) CHECK(bic_score(y, sel.fit, g, s2) <= b);
            local.jobs = 4;
            const auto par = select_lambda(g, y, grid, local, w, s2);
            CHECK(par.lambda == sel.lambda);
            CHECK(par.fit == sel.fit);
            CHECK(par.bic == sel.bic);
            const auto rec = select_lambda(g, y, grid, local, w, s2, SolverKind::Recursive);
            for (double b : rec.bic) CHECK(bic_score(y, rec.fit, g, s2) <= b);
        }
    }
}
