#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gpr/expansion.hpp"
#include "gpr/graph.hpp"
#include "gpr/partition.hpp"

namespace gpr {

enum class WeightingKind { Unit, Resistance, Custom };

/// Settings for the two-piece Potts solver.
struct SolverConfig {
    double delta = 1.0 / 60.0;  ///< grid spacing, > 0
    double tau = 0.0;           ///< required improvement, >= 0
    double lambda = 1.0;        ///< penalty, >= 0
    WeightingKind weighting = WeightingKind::Unit;
    std::optional<EdgeWeighting> custom_weights;  ///< used when weighting == Custom
    KeepLinkScale keep_link = KeepLinkScale::Half;
    unsigned jobs = 1;  ///< workers for the level sweep; 0 = all hardware threads

    /// Throws ValidationError on delta <= 0, tau < 0 or lambda < 0.
    void validate() const;
};

/// Edge weighting selected by cfg (unit, effective resistance or the custom one).
EdgeWeighting resolve_weights(const Graph& g, const SolverConfig& cfg);

/// 0.5 * ||y - mu||^2 + lambda * sum_e w_e [mu_u != mu_v]
double objective(std::span<const double> y, std::span<const double> mu, const Graph& g,
                 const EdgeWeighting& w, double lambda);

/// Nearest multiple of delta; halfway cases go toward +infinity.
double snap_to_grid(double x, double delta);

/// Grid levels k * delta lying in [lo, hi], ascending.
std::vector<double> grid_levels(double lo, double hi, double delta);

/// Two-piece Potts fit.
///
/// Starts from the constant mean vector and, for every grid level c in
/// [min y, max y], computes the optimal expansion toward c. Among expansions
/// improving the objective by at least tau the lowest-objective one is returned
/// (ties keep the smaller c); if none qualifies the constant mean is returned.
/// The result takes at most two distinct values. A single node returns y.
NodeSignal potts_two_piece(const Graph& g, std::span<const double> y, const EdgeWeighting& w,
                           const SolverConfig& cfg);
NodeSignal potts_two_piece(const Graph& g, std::span<const double> y, const SolverConfig& cfg);

/// Maximum node count accepted by is_local_minimiser.
inline constexpr std::size_t kMaxExhaustiveNodes = 16;

/// Exhaustive check that no expansion of mu toward any level in
/// [min y - delta, max y + delta] lowers the objective by more than tau.
/// Exponential in n; throws ValidationError for n > kMaxExhaustiveNodes.
bool is_local_minimiser(std::span<const double> mu, std::span<const double> y, const Graph& g,
                        const EdgeWeighting& w, double lambda, double tau, double delta);

}  // namespace gpr
