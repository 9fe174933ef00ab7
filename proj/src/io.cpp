#include "gpr/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "gpr/error.hpp"

namespace gpr::io {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    std::ostringstream os;
    os << "line " << line << ": " << msg;
    throw ParseError(os.str());
}

template <class T>
T parse_number(std::string_view tok, std::size_t line) {
    T value{};
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        fail(line, "cannot parse '" + std::string(tok) + "'");
    }
    return value;
}

// Non-empty lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!trim(line).empty()) out.emplace_back(number, line);
    }
    return out;
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return in;
}

}  // namespace

std::string format_real(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

Graph read_graph(std::istream& in) {
    const auto lines = content_lines(in);
    if (lines.empty()) throw ParseError("graph file is empty");
    const auto header = split_ws(lines[0].second);
    if (header.size() != 2) fail(lines[0].first, "expected header 'n m'");
    const auto n = parse_number<std::size_t>(header[0], lines[0].first);
    const auto m = parse_number<std::size_t>(header[1], lines[0].first);
    if (lines.size() - 1 != m) {
        std::ostringstream os;
        os << "header declares " << m << " edges but " << lines.size() - 1 << " follow";
        throw ParseError(os.str());
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(m);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto tok = split_ws(lines[k].second);
        if (tok.size() != 2) fail(lines[k].first, "expected 'i j'");
        edges.emplace_back(parse_number<std::size_t>(tok[0], lines[k].first),
                           parse_number<std::size_t>(tok[1], lines[k].first));
    }
    return build_graph(n, edges);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
}

NodeSignal read_signal(std::istream& in) {
    NodeSignal values;
    for (const auto& [number, line] : content_lines(in)) {
        const auto tok = split_ws(line);
        if (tok.size() != 1) fail(number, "expected one value per line");
        values.push_back(parse_number<double>(tok[0], number));
    }
    if (values.empty()) throw ParseError("signal file is empty");
    return values;
}

void write_signal(std::ostream& out, const NodeSignal& values) {
    for (double v : values) out << format_real(v) << '\n';
}

Partition read_partition(std::istream& in) {
    std::vector<std::int64_t> labels;
    for (const auto& [number, line] : content_lines(in)) {
        const auto tok = split_ws(line);
        if (tok.size() != 1) fail(number, "expected one label per line");
        labels.push_back(parse_number<std::int64_t>(tok[0], number));
    }
    if (labels.empty()) throw ParseError("partition file is empty");
    return Partition::from_labels(labels);
}

void write_partition(std::ostream& out, const Partition& p) {
    for (auto label : p.labels()) out << label + 1 << '\n';
}

EdgeWeighting read_weights(std::istream& in, const Graph& g) {
    const auto lines = content_lines(in);
    if (lines.size() != g.edge_count()) {
        std::ostringstream os;
        os << "weights file has " << lines.size() << " lines, graph has " << g.edge_count() << " edges";
        throw ParseError(os.str());
    }
    std::vector<double> w;
    w.reserve(lines.size());
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto& [number, line] = lines[k];
        const auto tok = split_ws(line);
        if (tok.size() != 3) fail(number, "expected 'i j w'");
        const auto i = parse_number<std::size_t>(tok[0], number);
        const auto j = parse_number<std::size_t>(tok[1], number);
        const Edge& e = g.edge(static_cast<EdgeId>(k));
        const bool same = (i == e.u + 1 && j == e.v + 1) || (i == e.v + 1 && j == e.u + 1);
        if (!same) fail(number, "edge does not match the graph's edge order");
        w.push_back(parse_number<double>(tok[2], number));
    }
    return EdgeWeighting(std::move(w));
}

void write_weights(std::ostream& out, const Graph& g, const EdgeWeighting& w) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        out << edge.u + 1 << ' ' << edge.v + 1 << ' ' << format_real(w[e]) << '\n';
    }
}

Graph load_graph(const std::filesystem::path& path) {
    auto in = open(path);
    return read_graph(in);
}

NodeSignal load_signal(const std::filesystem::path& path) {
    auto in = open(path);
    return read_signal(in);
}

Partition load_partition(const std::filesystem::path& path) {
    auto in = open(path);
    return read_partition(in);
}

EdgeWeighting load_weights(const std::filesystem::path& path, const Graph& g) {
    auto in = open(path);
    return read_weights(in, g);
}

}  // namespace gpr::io
