// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gpr/bench.hpp"
#include "gpr/expansion.hpp"
#include "gpr/maxflow.hpp"
#include "gpr/potts.hpp"
#include "gpr/recursive.hpp"
#include "gpr/resistance.hpp"
#include "gpr/rng.hpp"
#include "gpr/selection.hpp"
#include "oracles.hpp"

using namespace gpr;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// Random connected graphs with 2..8 nodes, shared by criteria 1 and 2.
std::vector<Graph> small_graph_suite() {
    std::mt19937_64 rng(101);
    std::vector<Graph> out;
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 2 + rng() % 7;
        out.push_back(oracle::random_connected_graph(n, std::uniform_real_distribution<double>(0, 1)(rng), rng));
    }
    return out;
}

Outcome resistance_equivalence() {
    const auto start = Clock::now();
    double worst = 0.0;
    for (const Graph& g : small_graph_suite()) {
        const EdgeWeighting r = effective_resistance_weights(g);
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Edge ed = g.edge(e);
            worst = std::max(worst, std::abs(r[e] - spanning_tree_fraction(g, ed.u, ed.v)));
        }
    }
    const double secs = seconds_since(start);
    return {worst <= 1e-9 && secs < 10.0, fmt("max |r - tree fraction| = %.3g over 100 graphs, %.2f s", worst, secs)};
}

Outcome foster_identity() {
    auto suite = small_graph_suite();
    suite.push_back(grid_graph(16));
    double worst = 0.0;
    for (const Graph& g : suite) {
        const double total = effective_resistance_weights(g).total();
        worst = std::max(worst, std::abs(total - static_cast<double>(g.node_count() - 1)));
    }
    return {worst <= 1e-8, fmt("max |sum r - (n-1)| = %.3g over 101 graphs incl. 16x16 grid", worst)};
}

Outcome lemma_complete_graph() {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (std::size_t n = 3; n <= 50; ++n) {
        const Graph g = complete_graph(n);
        const EdgeWeighting r = effective_resistance_weights(g);
        for (int t = 0; t < 20; ++t) {
            std::vector<std::int64_t> labels(n);
            std::size_t n1 = 0;
            do {
                n1 = 0;
                for (auto& l : labels) {
                    l = static_cast<std::int64_t>(rng() % 2);
                    n1 += static_cast<std::size_t>(l);
                }
            } while (n1 == 0 || n1 == n);
            const double expected = 2.0 * static_cast<double>(n1 * (n - n1)) / static_cast<double>(n);
            const double got = boundary_weight(g, r, Partition::from_labels(labels));
            worst = std::max(worst, std::abs(got - expected));
        }
    }
    return {worst <= 1e-8, fmt("max |boundary - 2 n1 n2 / n| = %.3g over 960 bipartitions", worst)};
}

Outcome maxflow_correctness() {
    std::mt19937_64 rng(404);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t inner = 1 + trial % 12;
        FlowNetwork net(inner + 2, 0, 1);
        const std::size_t arcs = inner * 3 + rng() % (inner + 3);
        for (std::size_t k = 0; k < arcs; ++k) {
            const auto a = static_cast<FlowNetwork::Node>(rng() % (inner + 2));
            const auto b = static_cast<FlowNetwork::Node>(rng() % (inner + 2));
            if (a == b) continue;
            const double cap = static_cast<double>(rng() % 20) / 4.0;
            if (rng() % 3 == 0) {
                net.add_edge(a, b, cap);
            } else {
                net.add_arc(a, b, cap);
            }
        }
        if (min_st_cut(net).value != oracle::min_cut_by_enumeration(net)) ++mismatches;
    }
    return {mismatches == 0, fmt("%d of 200 networks differ from cut enumeration", mismatches)};
}

Outcome expansion_optimality() {
    std::mt19937_64 rng(505);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 12;
        const Graph g = oracle::random_connected_graph(n, 0.3, rng);
        std::vector<double> y(n), mu(n), w(g.edge_count());
        const double levels[] = {-1.0, 0.5, 2.0};
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = oracle::dyadic(rng, -3, 3);
            mu[i] = levels[rng() % 3];
        }
        for (double& x : w) x = oracle::dyadic(rng, 0, 2);
        const double lambda = oracle::dyadic(rng, 0, 3);
        const double c = oracle::dyadic(rng, -2, 3);
        const EdgeWeighting weights(w);
        const NodeSignal got = alpha_expand(mu, y, g, lambda, weights, c);
        const auto brute = oracle::expand_by_enumeration(mu, y, g, w, lambda, c);
        if (oracle::objective(y, got, g, w, lambda) != brute.best_value) ++mismatches;
    }
    return {mismatches == 0, fmt("%d of 200 expansions miss the enumerated minimum", mismatches)};
}

// Instances follow the solver defaults: two-block mean plus unit noise,
// tau = sigma2 estimate, delta = sqrt(sigma2 / n), lambda by BIC.
Outcome local_minimiser_compliance() {
    std::mt19937_64 rng(606);
    int failures = 0;
    int first_failure = -1;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const Graph g = oracle::random_connected_graph(n, 0.3, rng);
        const double kappa = 1.0 + static_cast<double>(rng() % 4);
        NodeSignal mu(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) mu[i] = rng() % 2 ? kappa : 0.0;
        const NodeSignal y = bench::add_noise(mu, 1.0, 606, static_cast<std::uint64_t>(trial));
        const EdgeWeighting w = unit_weights(g);
        const double sigma2 = estimate_sigma2(y, spanning_path_order(g));
        SolverConfig cfg;
        cfg.tau = sigma2;
        cfg.delta = std::sqrt(sigma2 / static_cast<double>(n));
        const auto grid = default_lambda_grid();
        const LambdaSelection sel = select_lambda(g, y, grid, cfg, w, sigma2);
        if (!is_local_minimiser(sel.fit, y, g, w, sel.lambda, cfg.tau, cfg.delta)) {
            ++failures;
            if (first_failure < 0) first_failure = trial;
        }
    }
    return {failures == 0, fmt("%d of 50 fits admit an expansion improving by more than tau (first: trial %d)",
                               failures, first_failure)};
}

Outcome constant_signal_stays_constant() {
    const std::size_t side = 16;
    const Graph g = grid_graph(side);
    const EdgeWeighting w = unit_weights(g);
    const PathPairs path = spanning_path_order(g);
    const NodeSignal zero(side * side, 0.0);
    int single = 0;
    for (std::uint64_t run = 0; run < 50; ++run) {
        const NodeSignal y = bench::add_noise(zero, 1.0, 707, run);
        const double sigma2 = estimate_sigma2(y, path);
        SolverConfig cfg;
        cfg.lambda = theory_lambda(4.0, sigma2, w);
        cfg.tau = sigma2;
        cfg.delta = std::sqrt(sigma2 / static_cast<double>(side * side));
        if (induced_partition(potts_two_piece(g, y, w, cfg)).block_count() == 1) ++single;
    }
    return {single >= 45, fmt("%d of 50 runs return one block (need >= 45)", single)};
}

Outcome desk_scale_localisation() {
    const auto start = Clock::now();
    bench::ExperimentSpec spec;
    spec.case_id = 3;
    spec.side = 32;
    spec.kappa = 4.0;
    spec.sigma = 1.0;
    spec.repetitions = 20;
    spec.seed = 808;
    const auto noisy = bench::run_experiment(spec);
    spec.sigma = 0.0;
    spec.repetitions = 1;
    const auto clean = bench::run_experiment(spec);
    const double secs = seconds_since(start);
    const bool pass = noisy.median_hausdorff <= 0.05 * 1024 && clean.reps[0].hausdorff == 0 && secs <= 600;
    return {pass, fmt("median %.1f (limit 51.2), noiseless %zu, %.1f s", noisy.median_hausdorff,
                      clean.reps[0].hausdorff, secs)};
}

Outcome table_ballpark() {
    const auto start = Clock::now();
    bench::ExperimentSpec spec;
    spec.side = 64;
    spec.kappa = 2.0;
    spec.sigma = 1.0;
    spec.repetitions = 10;
    spec.seed = 909;
    spec.case_id = 1;
    const auto disc = bench::run_experiment(spec);
    spec.case_id = 3;
    const auto square = bench::run_experiment(spec);
    const bool pass = disc.median_hausdorff <= 60 && square.median_hausdorff <= 30;
    return {pass, fmt("case 1 median %.1f (limit 60), case 3 median %.1f (limit 30), %.1f s", disc.median_hausdorff,
                      square.median_hausdorff, seconds_since(start))};
}

Outcome recursive_solver() {
    SolverConfig cfg;
    cfg.delta = 0.1;
    cfg.tau = 0.0;
    cfg.lambda = 1.0;
    const std::vector<double> y{0, 0, 5, 5, 10, 10};
    const auto three = recursive_partition(path_graph(6), y, cfg);
    const bool exact = three.partition == Partition::from_blocks(6, {{0, 1}, {2, 3}, {4, 5}});

    std::mt19937_64 rng(1010);
    int over = 0;
    std::size_t max_passes = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 63;
        const Graph g = oracle::random_connected_graph(n, 2.0 / static_cast<double>(n), rng);
        std::vector<double> v(n);
        for (double& x : v) x = oracle::dyadic(rng, -4, 4);
        SolverConfig fc;
        fc.delta = 0.25;
        fc.tau = oracle::dyadic(rng, 0, 1);
        fc.lambda = oracle::dyadic(rng, 0, 2);
        const auto r = recursive_partition(g, v, fc);
        max_passes = std::max(max_passes, r.passes);
        if (r.passes > n) ++over;
    }
    return {exact && over == 0, fmt("six-node path %s; %d of 100 fuzz runs exceed n passes (max passes %zu)",
                                    exact ? "split into 3 blocks" : "NOT recovered", over, max_passes)};
}

Outcome variance_estimate() {
    const Graph g = grid_graph(16);
    const PathPairs path = spanning_path_order(g);
    const NodeSignal zero(256, 0.0);
    double total = 0.0;
    for (std::uint64_t draw = 0; draw < 1000; ++draw) total += estimate_sigma2(bench::add_noise(zero, 1.0, 1111, draw), path);
    const double mean = total / 1000.0;
    return {std::abs(mean - 2.0) <= 0.1, fmt("mean estimate %.4f, target 2 +- 0.1", mean)};
}

Outcome hausdorff_properties() {
    const auto a = Partition::from_blocks(6, {{0, 1, 2}, {3, 4, 5}});
    const auto b = Partition::from_blocks(6, {{0, 1}, {2, 3, 4, 5}});
    const auto whole = Partition::whole(6);
    const auto split = Partition::from_blocks(6, {{0}, {1, 2, 3, 4, 5}});
    bool ok = bench::hausdorff(a, b) == 1 && bench::hausdorff(whole, split) == 5;

    std::mt19937_64 rng(1212);
    int bad = 0;
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + rng() % 20;
        std::vector<std::int64_t> la(n), lb(n);
        for (auto& l : la) l = static_cast<std::int64_t>(rng() % 4);
        for (auto& l : lb) l = static_cast<std::int64_t>(rng() % 4);
        const auto pa = Partition::from_labels(la);
        const auto pb = Partition::from_labels(lb);
        const std::size_t d = bench::hausdorff(pa, pb);
        if (d != bench::hausdorff(pb, pa) || bench::hausdorff(pa, pa) != 0 || d > n) ++bad;
    }
    ok = ok && bad == 0;
    return {ok, fmt("examples %zu and %zu (expect 1 and 5); %d of 500 random pairs violate symmetry/identity/bound",
                    bench::hausdorff(a, b), bench::hausdorff(whole, split), bad)};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "effective resistance equals spanning-tree fraction", resistance_equivalence},
        {2, "resistances sum to n - 1", foster_identity},
        {3, "complete-graph boundary weight", lemma_complete_graph},
        {4, "min cut equals enumeration", maxflow_correctness},
        {5, "expansion attains the enumerated minimum", expansion_optimality},
        {6, "two-piece output is a local minimiser", local_minimiser_compliance},
        {7, "pure noise gives a constant fit", constant_signal_stays_constant},
        {8, "32x32 square localisation", desk_scale_localisation},
        {9, "64x64 median Hausdorff ballpark", table_ballpark},
        {10, "recursive solver", recursive_solver},
        {11, "variance estimate targets 2 sigma^2", variance_estimate},
        {12, "Hausdorff metric properties", hausdorff_properties},
    };
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s  %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
