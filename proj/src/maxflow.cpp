#include "gpr/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpr/error.hpp"

namespace gpr {

FlowNetwork::FlowNetwork(std::size_t node_count, Node source, Node sink)
    : node_count_(node_count), source_(source), sink_(sink) {
    if (source >= node_count || sink >= node_count) {
        throw ValidationError(ValidationError::Kind::EndpointOutOfRange, "terminal out of range");
    }
    if (source == sink) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "source and sink must differ");
    }
}

FlowNetwork::Node FlowNetwork::add_node() { return static_cast<Node>(node_count_++); }

void FlowNetwork::check_node(Node v) const {
    if (v >= node_count_) throw ValidationError(ValidationError::Kind::EndpointOutOfRange, "arc endpoint out of range");
}

void FlowNetwork::check_capacity(double c) {
    if (std::isnan(c) || c < 0.0) {
        throw ValidationError(ValidationError::Kind::InvalidArgument, "capacities must be nonnegative");
    }
}

std::size_t FlowNetwork::add_arc(Node from, Node to, double capacity) {
    check_node(from);
    check_node(to);
    check_capacity(capacity);
    arcs_.push_back({from, to, capacity, 0.0});
    return arcs_.size() - 1;
}

std::size_t FlowNetwork::add_edge(Node a, Node b, double capacity) {
    check_node(a);
    check_node(b);
    check_capacity(capacity);
    arcs_.push_back({a, b, capacity, capacity});
    return arcs_.size() - 1;
}

void FlowNetwork::set_capacity(std::size_t arc, double capacity, double reverse_capacity) {
    check_capacity(capacity);
    check_capacity(reverse_capacity);
    arcs_.at(arc).capacity = capacity;
    arcs_[arc].reverse_capacity = reverse_capacity;
}

void MinCutSolver::build(const FlowNetwork& net) {
    const std::size_t n = net.node_count();
    const auto& arcs = net.arcs();
    to_.resize(2 * arcs.size());
    residual_.resize(2 * arcs.size());
    head_.assign(n + 1, 0);
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto& a = arcs[k];
        to_[2 * k] = a.to;
        to_[2 * k + 1] = a.from;
        residual_[2 * k] = a.capacity;
        residual_[2 * k + 1] = a.reverse_capacity;
        if (a.from == a.to || (a.capacity == 0.0 && a.reverse_capacity == 0.0)) continue;
        ++head_[a.from + 1];
        ++head_[a.to + 1];
    }
    for (std::size_t v = 0; v < n; ++v) head_[v + 1] += head_[v];
    adj_.resize(head_[n]);
    cursor_.assign(head_.begin(), head_.end() - 1);
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto& a = arcs[k];
        if (a.from == a.to || (a.capacity == 0.0 && a.reverse_capacity == 0.0)) continue;
        adj_[cursor_[a.from]++] = static_cast<std::uint32_t>(2 * k);
        adj_[cursor_[a.to]++] = static_cast<std::uint32_t>(2 * k + 1);
    }
    level_.assign(n, -1);
    cursor_.assign(n, 0);
}

void MinCutSolver::check_finite_cut(std::uint32_t s, std::uint32_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    queue_.clear();
    queue_.push_back(s);
    level_[s] = 0;
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
        const auto v = queue_[qi];
        for (auto i = head_[v]; i < head_[v + 1]; ++i) {
            const auto a = adj_[i];
            const auto w = to_[a];
            if (level_[w] < 0 && std::isinf(residual_[a])) {
                if (w == t) throw SolverError("no finite s-t cut: an infinite-capacity path joins the terminals");
                level_[w] = 0;
                queue_.push_back(w);
            }
        }
    }
}

// Saturates every two-arc path s -> v -> t before the main phases. These are
// ordinary augmenting paths; on expansion networks they remove most of the work.
double MinCutSolver::cancel_terminal_pairs(std::uint32_t s, std::uint32_t t) {
    double pushed = 0.0;
    for (auto i = head_[s]; i < head_[s + 1]; ++i) {
        const auto sa = adj_[i];
        const auto v = to_[sa];
        if (v == t) continue;
        for (auto j = head_[v]; j < head_[v + 1] && residual_[sa] > 0.0; ++j) {
            const auto ta = adj_[j];
            if (to_[ta] != t || residual_[ta] <= 0.0) continue;
            const double f = std::min(residual_[sa], residual_[ta]);
            residual_[sa] -= f;
            residual_[sa ^ 1u] += f;
            residual_[ta] -= f;
            residual_[ta ^ 1u] += f;
            pushed += f;
        }
    }
    return pushed;
}

bool MinCutSolver::build_levels(std::uint32_t s, std::uint32_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    queue_.clear();
    queue_.push_back(s);
    level_[s] = 0;
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
        const auto v = queue_[qi];
        if (v == t) break;
        for (auto i = head_[v]; i < head_[v + 1]; ++i) {
            const auto a = adj_[i];
            const auto w = to_[a];
            if (level_[w] < 0 && residual_[a] > 0.0) {
                level_[w] = level_[v] + 1;
                queue_.push_back(w);
            }
        }
    }
    return level_[t] >= 0;
}

double MinCutSolver::blocking_flow(std::uint32_t s, std::uint32_t t) {
    for (std::size_t v = 0; v + 1 < head_.size(); ++v) cursor_[v] = head_[v];
    double total = 0.0;
    path_.clear();
    std::uint32_t v = s;
    while (true) {
        if (v == t) {
            double bottleneck = kInfiniteCapacity;
            for (auto a : path_) bottleneck = std::min(bottleneck, residual_[a]);
            std::size_t first_saturated = path_.size();
            for (std::size_t k = 0; k < path_.size(); ++k) {
                const auto a = path_[k];
                residual_[a] -= bottleneck;
                residual_[a ^ 1u] += bottleneck;
                if (residual_[a] <= 0.0 && first_saturated == path_.size()) first_saturated = k;
            }
            total += bottleneck;
            path_.resize(first_saturated);
            v = path_.empty() ? s : to_[path_.back()];
            continue;
        }
        bool advanced = false;
        for (auto& i = cursor_[v]; i < head_[v + 1]; ++i) {
            const auto a = adj_[i];
            const auto w = to_[a];
            if (residual_[a] > 0.0 && level_[w] == level_[v] + 1) {
                path_.push_back(a);
                v = w;
                advanced = true;
                break;
            }
        }
        if (advanced) continue;
        // Dead end: drop v from the level graph and retreat.
        level_[v] = -1;
        if (path_.empty()) break;
        const auto back = path_.back();
        path_.pop_back();
        v = to_[back ^ 1u];
        ++cursor_[v];
    }
    return total;
}

CutResult MinCutSolver::solve(const FlowNetwork& net) {
    build(net);
    const auto s = net.source();
    const auto t = net.sink();
    check_finite_cut(s, t);

    CutResult result;
    result.flow_value = cancel_terminal_pairs(s, t);
    while (build_levels(s, t)) result.flow_value += blocking_flow(s, t);

    // Minimal source side: residual reachability from s.
    const std::size_t n = net.node_count();
    result.source_side.assign(n, 0);
    queue_.clear();
    queue_.push_back(s);
    result.source_side[s] = 1;
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
        const auto v = queue_[qi];
        for (auto i = head_[v]; i < head_[v + 1]; ++i) {
            const auto a = adj_[i];
            const auto w = to_[a];
            if (!result.source_side[w] && residual_[a] > 0.0) {
                result.source_side[w] = 1;
                queue_.push_back(w);
            }
        }
    }

    const auto& arcs = net.arcs();
    result.arc_flow.resize(arcs.size());
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const auto& a = arcs[k];
        // Infinite arcs never saturate; their flow is what the reverse residual absorbed.
        if (!std::isinf(a.capacity)) {
            result.arc_flow[k] = a.capacity - residual_[2 * k];
        } else if (!std::isinf(a.reverse_capacity)) {
            result.arc_flow[k] = residual_[2 * k + 1] - a.reverse_capacity;
        } else {
            result.arc_flow[k] = 0.0;  // not recoverable when both directions are infinite
        }
        if (result.source_side[a.from] && !result.source_side[a.to]) result.value += a.capacity;
        if (result.source_side[a.to] && !result.source_side[a.from]) result.value += a.reverse_capacity;
    }
    return result;
}

CutResult min_st_cut(const FlowNetwork& net) {
    MinCutSolver solver;
    return solver.solve(net);
}

}  // namespace gpr
