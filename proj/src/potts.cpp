#include "gpr/potts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "gpr/error.hpp"
#include "gpr/parallel.hpp"
#include "gpr/resistance.hpp"
#include "gpr/simd/kernels.hpp"

namespace gpr {

void SolverConfig::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "delta must be finite and > 0");
    }
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "tau must be finite and >= 0");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "lambda must be finite and >= 0");
    }
    if (weighting == WeightingKind::Custom && !custom_weights) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "custom weighting selected without weights");
    }
}

EdgeWeighting resolve_weights(const Graph& g, const SolverConfig& cfg) {
    switch (cfg.weighting) {
        case WeightingKind::Unit:
            return unit_weights(g);
        case WeightingKind::Resistance:
            return effective_resistance_weights(g);
        case WeightingKind::Custom:
            if (!cfg.custom_weights || cfg.custom_weights->size() != g.edge_count()) {
                throw ValidationError(ValidationError::Kind::SizeMismatch, "custom weights do not match the graph");
            }
            return *cfg.custom_weights;
    }
    return unit_weights(g);
}

double objective(std::span<const double> y, std::span<const double> mu, const Graph& g,
                 const EdgeWeighting& w, double lambda) {
    const std::size_t n = g.node_count();
    if (y.size() != n || mu.size() != n) {
        throw ValidationError(ValidationError::Kind::SizeMismatch, "objective: signal length mismatch");
    }
    if (w.size() != g.edge_count()) {
        throw ValidationError(ValidationError::Kind::SizeMismatch, "objective: weight count mismatch");
    }
    const auto& k = simd::kernels();
    const double data = 0.5 * k.sum_sq_diff(y.data(), mu.data(), n);
    const double penalty = k.weighted_disagreement(mu.data(), g.edge_sources().data(), g.edge_targets().data(),
                                                   w.values().data(), g.edge_count());
    return data + lambda * penalty;
}

double snap_to_grid(double x, double delta) {
    if (!(delta > 0.0)) throw ValidationError(ValidationError::Kind::InvalidArgument, "delta must be > 0");
    return std::floor(x / delta + 0.5) * delta + 0.0;
}

std::vector<double> grid_levels(double lo, double hi, double delta) {
    if (!(delta > 0.0)) throw ValidationError(ValidationError::Kind::InvalidArgument, "delta must be > 0");
    std::vector<double> levels;
    if (hi < lo) return levels;
    // Bounds are decided on the computed values k * delta themselves.
    auto k_lo = static_cast<long long>(std::ceil(lo / delta));
    while (static_cast<double>(k_lo - 1) * delta >= lo) --k_lo;
    while (static_cast<double>(k_lo) * delta < lo) ++k_lo;
    auto k_hi = static_cast<long long>(std::floor(hi / delta));
    while (static_cast<double>(k_hi + 1) * delta <= hi) ++k_hi;
    while (static_cast<double>(k_hi) * delta > hi) --k_hi;
    if (k_hi < k_lo) return levels;
    constexpr long long kMaxLevels = 50'000'000;
    if (k_hi - k_lo + 1 > kMaxLevels) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "delta too small for the signal range");
    }
    levels.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (long long k = k_lo; k <= k_hi; ++k) levels.push_back(static_cast<double>(k) * delta + 0.0);
    return levels;
}

NodeSignal potts_two_piece(const Graph& g, std::span<const double> y, const EdgeWeighting& w,
                           const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t n = g.node_count();
    validate_signal(y, n, "observations");
    require_connected(g);
    if (w.size() != g.edge_count()) {
        throw ValidationError(ValidationError::Kind::SizeMismatch, "edge weighting does not match the graph");
    }
    if (n == 1) return NodeSignal(y.begin(), y.end());

    const auto& k = simd::kernels();
    const double mean = k.sum(y.data(), n) / static_cast<double>(n);
    const NodeSignal start(n, mean);
    const double start_objective = objective(y, start, g, w, cfg.lambda);
    const auto [min_it, max_it] = std::minmax_element(y.begin(), y.end());
    const std::vector<double> levels = grid_levels(*min_it, *max_it, cfg.delta);

    struct Best {
        double value = std::numeric_limits<double>::infinity();
        std::size_t level = std::numeric_limits<std::size_t>::max();
        NodeSignal fit;
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(resolve_jobs(cfg.jobs),
                                                             static_cast<unsigned>(std::max<std::size_t>(1, levels.size()))));
    std::vector<Best> best(workers);
    std::vector<std::unique_ptr<AlphaExpansion>> engines(workers);

    parallel_for(levels.size(), workers, [&](std::size_t idx, unsigned worker) {
        if (!engines[worker]) {
            engines[worker] = std::make_unique<AlphaExpansion>(g, y, start, w, cfg.lambda, cfg.keep_link);
        }
        NodeSignal candidate = engines[worker]->expand(levels[idx]);
        const double value = objective(y, candidate, g, w, cfg.lambda);
        if (!(value <= start_objective - cfg.tau)) return;
        Best& b = best[worker];
        if (value < b.value || (value == b.value && idx < b.level)) {
            b.value = value;
            b.level = idx;
            b.fit = std::move(candidate);
        }
    });

    const Best* winner = nullptr;
    for (const Best& b : best) {
        if (b.level == std::numeric_limits<std::size_t>::max()) continue;
        if (winner == nullptr || b.value < winner->value || (b.value == winner->value && b.level < winner->level)) {
            winner = &b;
        }
    }
    return winner != nullptr ? winner->fit : start;
}

NodeSignal potts_two_piece(const Graph& g, std::span<const double> y, const SolverConfig& cfg) {
    return potts_two_piece(g, y, resolve_weights(g, cfg), cfg);
}

bool is_local_minimiser(std::span<const double> mu, std::span<const double> y, const Graph& g,
                        const EdgeWeighting& w, double lambda, double tau, double delta) {
    const std::size_t n = g.node_count();
    if (n > kMaxExhaustiveNodes) {
        throw ValidationError(ValidationError::Kind::InvalidArgument,
                              "is_local_minimiser: instance too large for the exhaustive check");
    }
    validate_signal(y, n, "observations");
    validate_signal(mu, n, "candidate");
    const auto [min_it, max_it] = std::minmax_element(y.begin(), y.end());
    const std::vector<double> levels = grid_levels(*min_it - delta, *max_it + delta, delta);
    if (levels.size() > 100'000) {
        throw ValidationError(ValidationError::Kind::InvalidArgument,
                              "is_local_minimiser: too many grid levels for the exhaustive check");
    }

    const double bound = objective(y, mu, g, w, lambda) - tau;
    NodeSignal trial(n);
    for (double c : levels) {
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = (mask >> i) & 1u ? c : mu[i];
            if (objective(y, trial, g, w, lambda) < bound) return false;
        }
    }
    return true;
}

}  // namespace gpr
