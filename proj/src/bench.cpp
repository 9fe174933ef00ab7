#include "gpr/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include "gpr/error.hpp"
#include "gpr/io.hpp"
#include "gpr/parallel.hpp"
#include "gpr/rng.hpp"

namespace gpr::bench {

NodeSignal generate_case(int case_id, std::size_t side, double kappa) {
    if (case_id < 1 || case_id > 4) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "case id must be 1, 2, 3 or 4");
    }
    if (side == 0) throw ValidationError(ValidationError::Kind::InvalidArgument, "grid side must be positive");
    const double s = static_cast<double>(side);
    const double n = s * s;
    const double r2 = (s / 5.0) * (s / 5.0);
    auto disc = [](double i, double j, double ci, double cj, double radius2) {
        return (i - ci) * (i - ci) + (j - cj) * (j - cj) < radius2;
    };
    NodeSignal mu(side * side, 0.0);
    for (std::size_t ii = 1; ii <= side; ++ii) {
        for (std::size_t jj = 1; jj <= side; ++jj) {
            const double i = static_cast<double>(ii);
            const double j = static_cast<double>(jj);
            bool inside = false;
            switch (case_id) {
                case 1:
                    inside = disc(i, j, s / 4, s / 4, r2);
                    break;
                case 2:
                    inside = disc(i, j, s / 4, s / 4, r2) || disc(i, j, 3 * s / 4, 3 * s / 4, r2);
                    break;
                case 3:
                    inside = std::abs(i - s / 2) < s / 4 && std::abs(j - s / 2) < s / 4;
                    break;
                case 4: {
                    const double scaled = std::abs(std::cos(10.0 * std::numbers::pi * i / n)) * r2;
                    inside = disc(i, j, s / 4, s / 4, scaled) || disc(i, j, 3 * s / 4, 3 * s / 4, scaled);
                    break;
                }
            }
            if (inside) mu[(ii - 1) * side + (jj - 1)] = kappa;
        }
    }
    return mu;
}

NodeSignal add_noise(std::span<const double> mu, double sigma, std::uint64_t seed, std::uint64_t stream) {
    if (!(sigma >= 0.0)) throw ValidationError(ValidationError::Kind::InvalidArgument, "sigma must be >= 0");
    NodeSignal y(mu.begin(), mu.end());
    if (sigma == 0.0) return y;
    const NormalStream normal(seed, stream);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += sigma * normal(i);
    return y;
}

std::size_t hausdorff(const Partition& a, const Partition& b) {
    if (a.node_count() != b.node_count()) {
        throw ValidationError(ValidationError::Kind::SizeMismatch, "hausdorff: partitions cover different node sets");
    }
    std::vector<std::size_t> size_a(a.block_count(), 0);
    std::vector<std::size_t> size_b(b.block_count(), 0);
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> overlap;
    for (NodeId v = 0; v < a.node_count(); ++v) {
        ++size_a[a.label(v)];
        ++size_b[b.label(v)];
        ++overlap[{a.label(v), b.label(v)}];
    }

    // |A sym-diff B| = |A| + |B| - 2 |A cap B|; blocks of `to` that miss A
    // contribute |A| + |B|, so only the smallest such B matters.
    auto directed = [&](bool a_first) {
        const auto& from_size = a_first ? size_a : size_b;
        const auto& to_size = a_first ? size_b : size_a;
        std::vector<std::vector<std::pair<std::uint32_t, std::size_t>>> touching(from_size.size());
        for (const auto& [key, count] : overlap) {
            const auto [la, lb] = key;
            if (a_first) {
                touching[la].emplace_back(lb, count);
            } else {
                touching[lb].emplace_back(la, count);
            }
        }
        std::vector<std::uint32_t> by_size(to_size.size());
        for (std::uint32_t k = 0; k < by_size.size(); ++k) by_size[k] = k;
        std::sort(by_size.begin(), by_size.end(),
                  [&](std::uint32_t x, std::uint32_t y) { return to_size[x] < to_size[y]; });

        std::size_t worst = 0;
        std::vector<std::uint8_t> hit(to_size.size(), 0);
        for (std::size_t blk = 0; blk < from_size.size(); ++blk) {
            std::size_t best = static_cast<std::size_t>(-1);
            for (const auto& [other, count] : touching[blk]) {
                hit[other] = 1;
                best = std::min(best, from_size[blk] + to_size[other] - 2 * count);
            }
            for (std::uint32_t other : by_size) {
                if (!hit[other]) {
                    best = std::min(best, from_size[blk] + to_size[other]);
                    break;
                }
            }
            for (const auto& [other, count] : touching[blk]) hit[other] = 0;
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(true), directed(false));
}

Partition threshold_baseline(std::span<const double> y, double level) {
    std::vector<std::int64_t> labels(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) labels[i] = y[i] >= level ? 1 : 0;
    return Partition::from_labels(labels);
}

void ExperimentSpec::validate() const {
    auto bad = [](const char* msg) { throw ValidationError(ValidationError::Kind::InvalidArgument, msg); };
    if (case_id < 1 || case_id > 4) bad("case must be 1, 2, 3 or 4");
    if (side < 4) bad("side must be at least 4");
    if (repetitions < 1) bad("repetitions must be at least 1");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) bad("kappa must be > 0");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) bad("sigma must be >= 0");
    if (!(delta > 0.0) || !std::isfinite(delta)) bad("delta must be > 0");
    if (tau && !(*tau >= 0.0)) bad("tau must be >= 0");
    if (lambda_grid.empty()) bad("lambda grid is empty");
    for (double l : lambda_grid) {
        if (!(l >= 0.0) || !std::isfinite(l)) bad("lambda grid entries must be >= 0");
    }
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

EvalReport run_experiment(const ExperimentSpec& spec, const std::function<void(const RepetitionArtifacts&)>& on_rep) {
    spec.validate();
    const Graph g = grid_graph(spec.side);
    SolverConfig base;
    base.delta = spec.delta;
    base.weighting = spec.weighting;
    base.keep_link = spec.keep_link;
    const EdgeWeighting w = resolve_weights(g, base);
    const PathPairs path = spanning_path_order(g);
    const NodeSignal truth = generate_case(spec.case_id, spec.side, spec.kappa);
    const Partition true_partition = induced_partition(truth);

    EvalReport report;
    report.spec = spec;
    report.reps.resize(spec.repetitions);
    parallel_for(spec.repetitions, spec.jobs, [&](std::size_t rep, unsigned) {
        const auto start = std::chrono::steady_clock::now();
        const NodeSignal y = add_noise(truth, spec.sigma, spec.seed, rep);
        const double sigma2 = estimate_sigma2(y, path, spec.halve_sigma2);
        SolverConfig cfg = base;
        cfg.tau = spec.tau.value_or(sigma2);
        cfg.jobs = 1;
        const LambdaSelection sel = select_lambda(g, y, spec.lambda_grid, cfg, w, sigma2);
        const Partition estimate = induced_partition(sel.fit);
        const auto stop = std::chrono::steady_clock::now();

        RepetitionResult& r = report.reps[rep];
        r.rep = rep;
        r.lambda = sel.lambda;
        r.sigma2 = sigma2;
        r.hausdorff = hausdorff(estimate, true_partition);
        r.baseline_hausdorff = hausdorff(threshold_baseline(y, spec.kappa / 2.0), true_partition);
        r.blocks = estimate.block_count();
        r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        if (on_rep) on_rep(RepetitionArtifacts{rep, truth, y, sel.fit});
    });

    std::vector<double> dist, base_dist, runtime;
    for (const auto& r : report.reps) {
        dist.push_back(static_cast<double>(r.hausdorff));
        base_dist.push_back(static_cast<double>(r.baseline_hausdorff));
        runtime.push_back(r.runtime_ms);
    }
    report.median_hausdorff = median(dist);
    double total = 0.0;
    for (double d : dist) total += d;
    report.mean_hausdorff = total / static_cast<double>(dist.size());
    report.median_baseline = median(base_dist);
    report.median_runtime_ms = median(runtime);
    return report;
}

void write_repetitions_csv(std::ostream& out, std::span<const EvalReport> reports) {
    out << "case,kappa,side,rep,seed,lambda,hausdorff,runtime_ms\n";
    for (const auto& report : reports) {
        const auto& s = report.spec;
        for (const auto& r : report.reps) {
            out << s.case_id << ',' << io::format_real(s.kappa) << ',' << s.side << ',' << r.rep << ',' << s.seed
                << ',' << io::format_real(r.lambda) << ',' << r.hausdorff << ','
                << io::format_real(std::round(r.runtime_ms * 1000.0) / 1000.0) << '\n';
        }
    }
}

void write_summary_csv(std::ostream& out, std::span<const EvalReport> reports) {
    out << "case,kappa,side,reps,seed,median_hausdorff,mean_hausdorff,median_baseline\n";
    for (const auto& rep : reports) {
        const auto& s = rep.spec;
        out << s.case_id << ',' << io::format_real(s.kappa) << ',' << s.side << ',' << s.repetitions << ',' << s.seed
            << ',' << io::format_real(rep.median_hausdorff) << ',' << io::format_real(rep.mean_hausdorff) << ','
            << io::format_real(rep.median_baseline) << '\n';
    }
}

void write_pgm(std::ostream& out, std::span<const double> values, std::size_t side) {
    if (values.size() != side * side) {
        throw ValidationError(ValidationError::Kind::SizeMismatch, "write_pgm: signal is not side x side");
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;
    out << "P2\n" << side << ' ' << side << "\n255\n";
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            const double v = values[i * side + j];
            // nearbyint honours the default round-to-nearest-even mode.
            const long q = range > 0.0 ? static_cast<long>(std::nearbyint((v - lo) / range * 255.0)) : 0;
            out << q << (j + 1 < side ? ' ' : '\n');
        }
    }
}

}  // namespace gpr::bench
