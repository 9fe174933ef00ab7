#pragma once

// Text formats (all node ids 1-based):
//   graph      first line "n m", then m lines "i j"
//   signal     n lines, one decimal real each
//   partition  n lines, one integer block label each
//   weights    m lines "i j w", in the graph's edge order
//
// Reals are written in shortest round-trip form, so write/read is lossless.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "gpr/graph.hpp"
#include "gpr/partition.hpp"

namespace gpr::io {

Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

NodeSignal read_signal(std::istream& in);
void write_signal(std::ostream& out, const NodeSignal& values);

Partition read_partition(std::istream& in);
void write_partition(std::ostream& out, const Partition& p);

/// Weights must list the graph's edges in order; endpoints are checked.
EdgeWeighting read_weights(std::istream& in, const Graph& g);
void write_weights(std::ostream& out, const Graph& g, const EdgeWeighting& w);

Graph load_graph(const std::filesystem::path& path);
NodeSignal load_signal(const std::filesystem::path& path);
Partition load_partition(const std::filesystem::path& path);
EdgeWeighting load_weights(const std::filesystem::path& path, const Graph& g);

/// Shortest decimal text that parses back to exactly `x`.
std::string format_real(double x);

}  // namespace gpr::io
