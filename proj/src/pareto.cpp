#include "cdnet/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cdnet::pareto {

namespace {

void validate(const std::vector<ParetoPoint>& points)
{
    if (points.empty()) {
        throw std::invalid_argument("pareto: parameter set is empty");
    }
    const std::size_t dim = points.front().objectives.size();
    if (dim == 0) {
        throw std::invalid_argument("pareto: points have no objectives");
    }
    for (const auto& p : points) {
        if (p.objectives.size() != dim) {
            throw std::invalid_argument("pareto: point '" + p.theta + "' has a different objective count");
        }
        for (double v : p.objectives) {
            if (!std::isfinite(v) || v < 0.0) {
                throw std::invalid_argument("pareto: point '" + p.theta +
                                            "' has a non-finite or negative objective");
            }
        }
    }
}

}  // namespace

bool strictly_dominates(const std::vector<double>& a, const std::vector<double>& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > b[i])) {
            return false;
        }
    }
    return true;
}

std::vector<std::size_t> pareto_frontier(const std::vector<ParetoPoint>& points)
{
    validate(points);

    // Sweep in decreasing first objective. A point can only be strictly
    // dominated by points with a strictly larger first objective, and if it
    // is dominated at all then some surviving point dominates it (strict
    // dominance is transitive), so comparing against survivors of earlier
    // groups suffices.
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return points[a].objectives[0] > points[b].objectives[0];
    });

    std::vector<std::size_t> survivors;
    std::size_t group_begin = 0;
    while (group_begin < order.size()) {
        std::size_t group_end = group_begin + 1;
        const double head = points[order[group_begin]].objectives[0];
        while (group_end < order.size() && points[order[group_end]].objectives[0] == head) {
            ++group_end;
        }
        const std::size_t earlier = survivors.size();
        for (std::size_t g = group_begin; g < group_end; ++g) {
            const auto& obj = points[order[g]].objectives;
            bool dominated = false;
            for (std::size_t s = 0; s < earlier && !dominated; ++s) {
                dominated = strictly_dominates(points[survivors[s]].objectives, obj);
            }
            if (!dominated) {
                survivors.push_back(order[g]);
            }
        }
        group_begin = group_end;
    }
    std::sort(survivors.begin(), survivors.end());
    return survivors;
}

std::vector<std::size_t> qos_filter(const std::vector<ParetoPoint>& points,
                                    const std::vector<double>& thresholds)
{
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < points.size(); ++p) {
        const auto& obj = points[p].objectives;
        if (obj.size() != thresholds.size()) {
            throw std::invalid_argument("qos_filter: threshold count does not match objective count");
        }
        bool ok = true;
        for (std::size_t i = 0; i < obj.size() && ok; ++i) {
            ok = obj[i] >= thresholds[i];
        }
        if (ok) {
            out.push_back(p);
        }
    }
    return out;
}

std::vector<std::size_t> optimal_region(const std::vector<ParetoPoint>& points,
                                        const std::vector<double>& thresholds)
{
    const auto frontier = pareto_frontier(points);
    const auto feasible = qos_filter(points, thresholds);
    std::vector<std::size_t> out;
    std::set_intersection(frontier.begin(), frontier.end(), feasible.begin(), feasible.end(),
                          std::back_inserter(out));
    return out;
}

}  // namespace cdnet::pareto
