#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cdnet::pareto {

/// A parameter choice and its objective vector (one steady-state virtual
/// neighborhood size per user node; larger is better).
struct ParetoPoint {
    std::string theta;
    std::vector<double> objectives;
};

/// True when `a` beats `b` strictly in every coordinate.
[[nodiscard]] bool strictly_dominates(const std::vector<double>& a, const std::vector<double>& b);

/// Indices (ascending) of the points not strictly dominated in every
/// coordinate by another point. Ties and duplicates survive. Throws
/// std::invalid_argument on empty input, ragged or non-finite/negative objectives.
std::vector<std::size_t> pareto_frontier(const std::vector<ParetoPoint>& points);

/// Indices (ascending) of the points meeting every per-user minimum.
std::vector<std::size_t> qos_filter(const std::vector<ParetoPoint>& points,
                                    const std::vector<double>& thresholds);

/// Frontier points that also satisfy the thresholds. May be empty.
std::vector<std::size_t> optimal_region(const std::vector<ParetoPoint>& points,
                                        const std::vector<double>& thresholds);

}  // namespace cdnet::pareto
