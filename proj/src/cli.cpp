#include "gpr/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gpr/bench.hpp"
#include "gpr/error.hpp"
#include "gpr/io.hpp"
#include "gpr/potts.hpp"
#include "gpr/recursive.hpp"
#include "gpr/resistance.hpp"
#include "gpr/selection.hpp"

namespace gpr::cli {
namespace {

namespace fs = std::filesystem;

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Tracks files written by a command; unless committed they are deleted again.
class OutputSet {
public:
    OutputSet() = default;
    OutputSet(const OutputSet&) = delete;
    OutputSet& operator=(const OutputSet&) = delete;
    ~OutputSet() {
        if (committed_) return;
        std::error_code ec;
        for (auto it = files_.rbegin(); it != files_.rend(); ++it) fs::remove(*it, ec);
        for (auto it = dirs_.rbegin(); it != dirs_.rend(); ++it) fs::remove(*it, ec);
    }

    template <class Writer>
    void write(const fs::path& path, Writer&& writer) {
        if (path.has_parent_path()) make_dirs(path.parent_path());
        files_.push_back(path);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw OutputError("cannot write " + path.string());
        writer(f);
        f.close();
        if (!f) throw OutputError("error while writing " + path.string());
    }

    void make_dirs(const fs::path& dir) {
        // Remember only the directories this command creates.
        std::vector<fs::path> created;
        for (fs::path p = dir; !p.empty() && !fs::exists(p); p = p.parent_path()) created.push_back(p);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw OutputError("cannot create directory " + dir.string());
        dirs_.insert(dirs_.end(), created.rbegin(), created.rend());
    }

    void commit() { committed_ = true; }

private:
    std::vector<fs::path> files_;
    std::vector<fs::path> dirs_;
    bool committed_ = false;
};

double parse_real(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ParseError(what + ": not a number: '" + text + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_real(item, what));
    if (out.empty()) throw ParseError(what + ": empty list");
    return out;
}

bool parse_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw ParseError(what + ": expected true or false, got '" + text + "'");
}

long long parse_int(const std::string& text, const std::string& what) {
    long long v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ParseError(what + ": not an integer: '" + text + "'");
    return v;
}

// ---------------------------------------------------------------- resistance

struct ResistanceArgs {
    std::string graph;
    std::string out;
};

void cmd_resistance(const ResistanceArgs& a, std::ostream& out) {
    const Graph g = io::load_graph(a.graph);
    require_connected(g);
    const EdgeWeighting w = effective_resistance_weights(g);
    if (a.out.empty()) {
        io::write_weights(out, g, w);
        return;
    }
    OutputSet files;
    files.write(a.out, [&](std::ostream& f) { io::write_weights(f, g, w); });
    files.commit();
}

// --------------------------------------------------------------------- solve

struct SolveArgs {
    std::string graph;
    std::string signal;
    std::optional<double> delta;
    std::optional<double> tau;
    std::optional<double> lambda;
    std::string lambda_grid = "0.01,0.1,1,10,100";
    std::string weights = "unit";
    bool recursive = false;
    bool halve_sigma2 = false;
    bool unhalved_keep_link = false;
    unsigned jobs = 1;
    std::string out_prefix;
};

void cmd_solve(const SolveArgs& a, std::ostream& out) {
    const Graph g = io::load_graph(a.graph);
    const NodeSignal y = io::load_signal(a.signal);
    validate_signal(y, g.node_count(), "signal");
    require_connected(g);

    SolverConfig cfg;
    cfg.keep_link = a.unhalved_keep_link ? KeepLinkScale::Unhalved : KeepLinkScale::Half;
    cfg.jobs = a.jobs;
    if (a.weights == "unit") {
        cfg.weighting = WeightingKind::Unit;
    } else if (a.weights == "resistance") {
        cfg.weighting = WeightingKind::Resistance;
    } else {
        cfg.weighting = WeightingKind::Custom;
        cfg.custom_weights = io::load_weights(a.weights, g);
    }
    const EdgeWeighting w = resolve_weights(g, cfg);

    const double sigma2 = g.node_count() > 1 ? estimate_sigma2(y, spanning_path_order(g), a.halve_sigma2) : 0.0;
    const double n = static_cast<double>(g.node_count());
    cfg.delta = a.delta.value_or(sigma2 > 0.0 ? std::sqrt(sigma2 / n) : 1.0 / 60.0);
    cfg.tau = a.tau.value_or(sigma2);
    const SolverKind kind = a.recursive ? SolverKind::Recursive : SolverKind::TwoPiece;

    NodeSignal fit;
    if (a.lambda) {
        cfg.lambda = *a.lambda;
        cfg.validate();
        fit = a.recursive ? recursive_partition(g, y, w, cfg).fit : potts_two_piece(g, y, w, cfg);
    } else {
        const auto grid = parse_real_list(a.lambda_grid, "--lambda-grid");
        cfg.validate();
        LambdaSelection sel = select_lambda(g, y, grid, cfg, w, sigma2, kind);
        cfg.lambda = sel.lambda;
        fit = std::move(sel.fit);
    }
    const Partition p = induced_partition(fit);

    fs::path prefix = a.out_prefix;
    if (prefix.empty()) prefix = fs::path(a.signal).replace_extension();
    OutputSet files;
    const fs::path part_path = prefix.string() + ".partition";
    const fs::path fit_path = prefix.string() + ".fit";
    files.write(part_path, [&](std::ostream& f) { io::write_partition(f, p); });
    files.write(fit_path, [&](std::ostream& f) { io::write_signal(f, fit); });

    out << "lambda " << io::format_real(cfg.lambda) << '\n'
        << "delta " << io::format_real(cfg.delta) << '\n'
        << "tau " << io::format_real(cfg.tau) << '\n'
        << "sigma2 " << io::format_real(sigma2) << '\n'
        << "blocks " << p.block_count() << '\n'
        << "pieces " << connected_pieces(g, fit) << '\n'
        << "objective " << io::format_real(objective(y, fit, g, w, cfg.lambda)) << '\n'
        << "partition " << part_path.string() << '\n'
        << "fit " << fit_path.string() << '\n';
    files.commit();
}

// ------------------------------------------------------------------ simulate

struct SimulateArgs {
    int case_id = 1;
    std::size_t side = 64;
    double kappa = 1.0;
    double sigma = 1.0;
    std::uint64_t seed = 1;
    std::uint64_t rep = 0;
    std::string out_prefix;
};

void cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    if (a.side < 2) throw ValidationError(ValidationError::Kind::InvalidArgument, "--side must be at least 2");
    if (!(a.kappa > 0.0)) throw ValidationError(ValidationError::Kind::InvalidArgument, "--kappa must be > 0");
    const Graph g = grid_graph(a.side);
    const NodeSignal truth = bench::generate_case(a.case_id, a.side, a.kappa);
    const NodeSignal y = bench::add_noise(truth, a.sigma, a.seed, a.rep);
    const std::string prefix = a.out_prefix.empty() ? "case" + std::to_string(a.case_id) : a.out_prefix;

    OutputSet files;
    files.write(prefix + ".graph", [&](std::ostream& f) { io::write_graph(f, g); });
    files.write(prefix + ".signal", [&](std::ostream& f) { io::write_signal(f, y); });
    files.write(prefix + ".mean", [&](std::ostream& f) { io::write_signal(f, truth); });
    files.write(prefix + ".truth", [&](std::ostream& f) { io::write_partition(f, induced_partition(truth)); });
    out << prefix << ".graph\n" << prefix << ".signal\n" << prefix << ".mean\n" << prefix << ".truth\n";
    files.commit();
}

// --------------------------------------------------------------------- bench

const char* const kBenchKeys = R"(Config keys (key = value, '#' starts a comment):
  case          list of case ids 1..4           default 1
  kappa         list of jump sizes              default 1
  side          grid side length (>= 4)         default 64
  sigma         noise level                     default 1
  reps          repetitions per (case, kappa)   default 10
  seed          base seed                       default 1
  delta         grid spacing of the levels      default 1/60
  tau           improvement threshold or auto   default auto (estimated variance)
  lambda_grid   candidate penalties             default 0.01,0.1,1,10,100
  weights       unit | resistance               default unit
  keep_link     half | unhalved                 default half
  halve_sigma2  halve the variance estimate     default false
  pgm           dump truth/observed/fit images  default true
  jobs          parallel repetitions            default 1
  out_dir       output directory                default bench_out)";

struct BenchConfig {
    std::vector<int> cases{1};
    std::vector<double> kappas{1.0};
    bench::ExperimentSpec base;
    bool pgm = true;
    std::string out_dir = "bench_out";
};

BenchConfig read_bench_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    BenchConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, std::size_t> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (eq == std::string::npos) throw ParseError(where + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (seen.count(key)) throw ParseError(where + ": duplicate key '" + key + "'");
        seen[key] = line_no;
        const std::string what = where + ": " + key;

        if (key == "case") {
            cfg.cases.clear();
            for (const auto& item : split_list(value)) cfg.cases.push_back(static_cast<int>(parse_int(item, what)));
        } else if (key == "kappa") {
            cfg.kappas = parse_real_list(value, what);
        } else if (key == "side") {
            const long long side = parse_int(value, what);
            if (side < 0) throw ParseError(what + ": must be positive");
            cfg.base.side = static_cast<std::size_t>(side);
        } else if (key == "sigma") {
            cfg.base.sigma = parse_real(value, what);
        } else if (key == "reps") {
            const long long reps = parse_int(value, what);
            if (reps < 0) throw ParseError(what + ": must be positive");
            cfg.base.repetitions = static_cast<std::size_t>(reps);
        } else if (key == "seed") {
            cfg.base.seed = static_cast<std::uint64_t>(parse_int(value, what));
        } else if (key == "delta") {
            cfg.base.delta = parse_real(value, what);
        } else if (key == "tau") {
            if (value == "auto") {
                cfg.base.tau.reset();
            } else {
                cfg.base.tau = parse_real(value, what);
            }
        } else if (key == "lambda_grid") {
            cfg.base.lambda_grid = parse_real_list(value, what);
        } else if (key == "weights") {
            if (value == "unit") {
                cfg.base.weighting = WeightingKind::Unit;
            } else if (value == "resistance") {
                cfg.base.weighting = WeightingKind::Resistance;
            } else {
                throw ParseError(what + ": expected unit or resistance");
            }
        } else if (key == "keep_link") {
            if (value == "half") {
                cfg.base.keep_link = KeepLinkScale::Half;
            } else if (value == "unhalved") {
                cfg.base.keep_link = KeepLinkScale::Unhalved;
            } else {
                throw ParseError(what + ": expected half or unhalved");
            }
        } else if (key == "halve_sigma2") {
            cfg.base.halve_sigma2 = parse_bool(value, what);
        } else if (key == "pgm") {
            cfg.pgm = parse_bool(value, what);
        } else if (key == "jobs") {
            const long long jobs = parse_int(value, what);
            if (jobs < 0) throw ParseError(what + ": must be >= 0");
            cfg.base.jobs = static_cast<unsigned>(jobs);
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else {
            throw ParseError(where + ": unknown key '" + key + "'");
        }
    }
    if (cfg.cases.empty()) throw ParseError(path.string() + ": case list is empty");
    return cfg;
}

struct BenchArgs {
    std::string config;
    std::string out_dir;
    std::optional<unsigned> jobs;
};

void cmd_bench(const BenchArgs& a, std::ostream& out) {
    BenchConfig cfg = read_bench_config(a.config);
    if (!a.out_dir.empty()) cfg.out_dir = a.out_dir;
    if (a.jobs) cfg.base.jobs = *a.jobs;

    std::vector<bench::ExperimentSpec> specs;
    for (int c : cfg.cases) {
        for (double k : cfg.kappas) {
            bench::ExperimentSpec s = cfg.base;
            s.case_id = c;
            s.kappa = k;
            s.validate();
            specs.push_back(std::move(s));
        }
    }

    OutputSet files;
    const fs::path dir = cfg.out_dir;
    files.make_dirs(dir);
    std::vector<bench::EvalReport> reports;
    for (const auto& spec : specs) {
        // Images are buffered and written by this thread only.
        std::vector<std::pair<fs::path, std::string>> images;
        std::mutex images_mutex;
        auto dump = [&](const bench::RepetitionArtifacts& r) {
            const std::string stem = "case" + std::to_string(spec.case_id) + "_kappa" + io::format_real(spec.kappa) +
                                     "_rep" + std::to_string(r.rep);
            std::ostringstream t, o, f;
            bench::write_pgm(t, r.truth, spec.side);
            bench::write_pgm(o, r.observed, spec.side);
            bench::write_pgm(f, r.fit, spec.side);
            const std::lock_guard lock(images_mutex);
            images.emplace_back(dir / "pgm" / (stem + "_truth.pgm"), t.str());
            images.emplace_back(dir / "pgm" / (stem + "_observed.pgm"), o.str());
            images.emplace_back(dir / "pgm" / (stem + "_fit.pgm"), f.str());
        };
        reports.push_back(cfg.pgm ? bench::run_experiment(spec, dump) : bench::run_experiment(spec));
        std::sort(images.begin(), images.end());
        for (const auto& [path, text] : images) {
            files.write(path, [&](std::ostream& f) { f << text; });
        }
    }
    files.write(dir / "repetitions.csv", [&](std::ostream& f) { bench::write_repetitions_csv(f, reports); });
    files.write(dir / "summary.csv", [&](std::ostream& f) { bench::write_summary_csv(f, reports); });
    bench::write_summary_csv(out, reports);
    files.commit();
}

// ---------------------------------------------------------------------- eval

struct EvalArgs {
    std::string truth;
    std::string estimate;
};

void cmd_eval(const EvalArgs& a, std::ostream& out) {
    const Partition truth = io::load_partition(a.truth);
    const Partition est = io::load_partition(a.estimate);
    out << bench::hausdorff(truth, est) << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Piecewise-constant signal partitioning on graphs via Potts-model expansion moves", "gpr"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    ResistanceArgs ra;
    auto* res = app.add_subcommand("resistance", "Effective-resistance edge weights of a graph");
    res->add_option("graph", ra.graph, "Graph file")->required();
    res->add_option("-o,--out", ra.out, "Weights file to write (default: standard output)");

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Fit a piecewise-constant signal and write its partition");
    solve->add_option("graph", sa.graph, "Graph file")->required();
    solve->add_option("signal", sa.signal, "Signal file")->required();
    solve->add_option("--delta", sa.delta, "Level grid spacing (default: sqrt(sigma2 / n), 1/60 if sigma2 = 0)");
    solve->add_option("--tau", sa.tau, "Required objective improvement (default: estimated sigma2)");
    solve->add_option("--lambda", sa.lambda, "Fixed penalty; disables BIC selection");
    solve->add_option("--lambda-grid", sa.lambda_grid, "Comma-separated BIC candidates")->capture_default_str();
    solve->add_option("--weights", sa.weights, "unit, resistance, or a weights file")->capture_default_str();
    solve->add_flag("--recursive", sa.recursive, "Refine blocks recursively instead of a single two-piece fit");
    solve->add_flag("--halve-sigma2", sa.halve_sigma2, "Halve the difference-based variance estimate");
    solve->add_flag("--unhalved-keep-link", sa.unhalved_keep_link,
                    "Use (y - mu)^2 instead of (y - mu)^2 / 2 for the keep-label link");
    solve->add_option("--jobs", sa.jobs, "Worker threads (0 = all cores)")->capture_default_str();
    solve->add_option("--out-prefix", sa.out_prefix, "Output prefix (default: signal path without extension)");

    SimulateArgs ma;
    auto* sim = app.add_subcommand("simulate", "Generate a synthetic grid instance");
    sim->add_option("--case", ma.case_id, "Case id 1..4")->capture_default_str()->check(CLI::Range(1, 4));
    sim->add_option("--side", ma.side, "Grid side length")->capture_default_str();
    sim->add_option("--kappa", ma.kappa, "Jump size")->capture_default_str();
    sim->add_option("--sigma", ma.sigma, "Noise level")->capture_default_str();
    sim->add_option("--seed", ma.seed, "Seed")->capture_default_str();
    sim->add_option("--rep", ma.rep, "Repetition index (noise stream)")->capture_default_str();
    sim->add_option("--out-prefix", ma.out_prefix, "Output prefix (default: case<id>)");

    BenchArgs ba;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark described by a key = value config file");
    bench_cmd->add_option("config", ba.config, "Config file")->required();
    bench_cmd->add_option("--out-dir", ba.out_dir, "Override out_dir from the config");
    bench_cmd->add_option("--jobs", ba.jobs, "Override jobs from the config");
    bench_cmd->footer(kBenchKeys);

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Hausdorff distance between two partition files");
    eval->add_option("truth", ea.truth, "Reference partition")->required();
    eval->add_option("estimate", ea.estimate, "Estimated partition")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*res) cmd_resistance(ra, out);
        if (*solve) cmd_solve(sa, out);
        if (*sim) cmd_simulate(ma, out);
        if (*bench_cmd) cmd_bench(ba, out);
        if (*eval) cmd_eval(ea, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kValidation;
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << '\n';
        return kSolver;
    } catch (const OutputError& e) {
        err << "output error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kSolver;
    }
    return kOk;
}

}  // namespace gpr::cli
