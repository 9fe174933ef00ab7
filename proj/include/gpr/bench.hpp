#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpr/graph.hpp"
#include "gpr/partition.hpp"
#include "gpr/potts.hpp"
#include "gpr/selection.hpp"

namespace gpr::bench {

/// Two-level mean on the side x side grid; node (i, j) has id (i-1)*side + (j-1).
///   1: one disc, centre (side/4, side/4), radius side/5
///   2: two discs, centres (side/4, side/4) and (3 side/4, 3 side/4)
///   3: square |i - side/2| < side/4 and |j - side/2| < side/4
///   4: the two discs of case 2 with squared radius scaled by |cos(10 pi i / n)|
/// Nodes inside take kappa, the rest 0. Throws ValidationError for other ids.
NodeSignal generate_case(int case_id, std::size_t side, double kappa);

/// y = mu + sigma * z with z from NormalStream(seed, stream).
NodeSignal add_noise(std::span<const double> mu, double sigma, std::uint64_t seed, std::uint64_t stream = 0);

/// max(d1(a, b), d1(b, a)) with d1(a, b) = max over A in a of min over B in b of |A sym-diff B|.
std::size_t hausdorff(const Partition& a, const Partition& b);

/// {i : y_i >= level} and {i : y_i < level}; one block if either side is empty.
Partition threshold_baseline(std::span<const double> y, double level);

struct ExperimentSpec {
    int case_id = 1;
    std::size_t side = 64;
    double kappa = 1.0;
    double sigma = 1.0;
    std::size_t repetitions = 10;
    std::uint64_t seed = 1;
    double delta = 1.0 / 60.0;
    std::optional<double> tau;  ///< defaults to the estimated variance
    std::vector<double> lambda_grid = default_lambda_grid();
    WeightingKind weighting = WeightingKind::Unit;
    KeepLinkScale keep_link = KeepLinkScale::Half;
    bool halve_sigma2 = false;
    unsigned jobs = 1;

    /// Throws ValidationError unless side >= 4, repetitions >= 1, case in 1..4,
    /// kappa > 0, sigma >= 0 and delta > 0.
    void validate() const;
};

struct RepetitionResult {
    std::size_t rep = 0;
    double lambda = 0.0;
    double sigma2 = 0.0;
    std::size_t hausdorff = 0;
    std::size_t baseline_hausdorff = 0;
    std::size_t blocks = 0;
    double runtime_ms = 0.0;
};

struct EvalReport {
    ExperimentSpec spec;
    std::vector<RepetitionResult> reps;
    double median_hausdorff = 0.0;
    double mean_hausdorff = 0.0;
    double median_baseline = 0.0;
    double median_runtime_ms = 0.0;
};

/// Optional per-repetition hook, e.g. for image dumps.
struct RepetitionArtifacts {
    std::size_t rep;
    const NodeSignal& truth;
    const NodeSignal& observed;
    const NodeSignal& fit;
};

/// Per repetition: generate, add noise (stream = repetition index), estimate
/// the variance along the snake path, pick lambda by BIC, fit the two-piece
/// model and compare its induced partition with the truth. The baseline
/// thresholds the observations at kappa / 2.
EvalReport run_experiment(const ExperimentSpec& spec,
                          const std::function<void(const RepetitionArtifacts&)>& on_rep = {});

double median(std::vector<double> values);

/// Header plus one row per repetition of every report:
/// case,kappa,side,rep,seed,lambda,hausdorff,runtime_ms
void write_repetitions_csv(std::ostream& out, std::span<const EvalReport> reports);
/// Header plus one row per report:
/// case,kappa,side,reps,seed,median_hausdorff,mean_hausdorff,median_baseline
void write_summary_csv(std::ostream& out, std::span<const EvalReport> reports);

/// Plain (P2) graymap of a side x side signal. Values map linearly from
/// [min, max] to [0, 255] and round half to even; a constant image is all 0.
void write_pgm(std::ostream& out, std::span<const double> values, std::size_t side);

}  // namespace gpr::bench
