#pragma once

#include <cstdint>
#include <vector>

#include "cdnet/netstate.hpp"

namespace cdnet {

/// Number of distinct nodes sharing at least one link with node i.
[[nodiscard]] std::size_t virtual_neighborhood_size(const NetworkState& state, NodeId i);

/// Number of links incident to node i.
[[nodiscard]] std::size_t virtual_degree(const NetworkState& state, NodeId i);

struct MetricSnapshot {
    std::int64_t time = 0;
    std::vector<std::uint32_t> v;  ///< virtual neighborhood size per node
    std::vector<std::uint32_t> k;  ///< virtual degree per node
};

/// Both metrics for every node in one pass over the links.
void take_snapshot(const NetworkState& state, MetricSnapshot& out);
[[nodiscard]] MetricSnapshot take_snapshot(const NetworkState& state);

}  // namespace cdnet
