#include "cdnet/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cdnet {

namespace {

void require_node(const NetworkState& state, NodeId i)
{
    if (i >= state.topology().size()) {
        throw std::out_of_range("node index " + std::to_string(i) + " out of range");
    }
}

}  // namespace

std::size_t virtual_neighborhood_size(const NetworkState& state, NodeId i)
{
    require_node(state, i);
    std::vector<NodeId> peers;
    for (const auto& l : state.links()) {
        if (l.node_a() == i || l.node_b() == i) {
            peers.push_back(l.peer_of(i));
        }
    }
    std::sort(peers.begin(), peers.end());
    return static_cast<std::size_t>(std::unique(peers.begin(), peers.end()) - peers.begin());
}

std::size_t virtual_degree(const NetworkState& state, NodeId i)
{
    require_node(state, i);
    return static_cast<std::size_t>(std::count_if(state.links().begin(), state.links().end(),
                                                  [i](const EntangledLink& l) {
                                                      return l.node_a() == i || l.node_b() == i;
                                                  }));
}

void take_snapshot(const NetworkState& state, MetricSnapshot& out)
{
    const std::size_t n = state.topology().size();
    out.time = state.clock();
    out.v.assign(n, 0);
    out.k.assign(n, 0);

    thread_local std::vector<std::uint64_t> pairs;
    pairs.clear();
    for (const auto& l : state.links()) {
        const NodeId a = std::min(l.node_a(), l.node_b());
        const NodeId b = std::max(l.node_a(), l.node_b());
        ++out.k[a];
        ++out.k[b];
        pairs.push_back(static_cast<std::uint64_t>(a) * n + b);
    }
    std::sort(pairs.begin(), pairs.end());
    const auto last = std::unique(pairs.begin(), pairs.end());
    for (auto it = pairs.begin(); it != last; ++it) {
        ++out.v[*it / n];
        ++out.v[*it % n];
    }
}

MetricSnapshot take_snapshot(const NetworkState& state)
{
    MetricSnapshot out;
    take_snapshot(state, out);
    return out;
}

}  // namespace cdnet
