#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cdnet/pareto.hpp"

using namespace cdnet::pareto;

namespace {

std::vector<std::size_t> brute_force(const std::vector<ParetoPoint>& pts)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
            bool all = true;
            for (std::size_t c = 0; c < pts[i].objectives.size(); ++c) {
                all = all && pts[j].objectives[c] > pts[i].objectives[c];
            }
            dominated = all;
        }
        if (!dominated) out.push_back(i);
    }
    return out;
}

std::vector<ParetoPoint> random_points(std::mt19937_64& gen, std::size_t n, std::size_t dim, int levels)
{
    // small integer grids force plenty of ties
    std::uniform_int_distribution<int> pick(0, levels);
    std::vector<ParetoPoint> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i].theta = std::to_string(i);
        for (std::size_t c = 0; c < dim; ++c) pts[i].objectives.push_back(pick(gen) * 0.5);
    }
    return pts;
}

}  // namespace

TEST_CASE("frontier on small sets")
{
    CHECK(pareto_frontier({{"a", {1.0, 2.0}}}) == std::vector<std::size_t>{0});
    const std::vector<ParetoPoint> pts = {{"a", {1, 2}}, {"b", {2, 1}}, {"c", {0, 0}}};
    CHECK(pareto_frontier(pts) == std::vector<std::size_t>{0, 1});
    // ties in one coordinate keep the weaker point
    const std::vector<ParetoPoint> tie = {{"a", {2, 2}}, {"b", {2, 1}}, {"c", {2, 2}}};
    CHECK(pareto_frontier(tie) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("frontier input errors")
{
    CHECK_THROWS_AS((void)pareto_frontier({}), std::invalid_argument);
    CHECK_THROWS_AS((void)pareto_frontier({{"a", {1, 2}}, {"b", {1}}}), std::invalid_argument);
    CHECK_THROWS_AS((void)pareto_frontier({{"a", {NAN}}}), std::invalid_argument);
    CHECK_THROWS_AS((void)pareto_frontier({{"a", {-1}}}), std::invalid_argument);
}

TEST_CASE("frontier matches brute force on random sets")
{
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t dim = 2 + trial % 3;
        const auto pts = random_points(gen, 200, dim, trial % 2 ? 6 : 1000);
        const auto got = pareto_frontier(pts);
        CHECK(got == brute_force(pts));
        CHECK_FALSE(got.empty());
    }
}

TEST_CASE("frontier is order independent and invariant under monotone maps")
{
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto pts = random_points(gen, 60, 3, 8);
        const auto base = pareto_frontier(pts);
        std::vector<std::string> names;
        for (auto i : base) names.push_back(pts[i].theta);

        auto shuffled = pts;
        std::shuffle(shuffled.begin(), shuffled.end(), gen);
        std::vector<std::string> again;
        for (auto i : pareto_frontier(shuffled)) again.push_back(shuffled[i].theta);
        std::sort(names.begin(), names.end());
        std::sort(again.begin(), again.end());
        CHECK(names == again);

        auto mapped = pts;
        for (auto& p : mapped) p.objectives[1] = std::exp(p.objectives[1]) + 3.0;
        CHECK(pareto_frontier(mapped) == base);
    }
}

TEST_CASE("qos filter and optimal region")
{
    const std::vector<ParetoPoint> pts = {
        {"0.3", {2.9, 1.9}}, {"0.4", {3.1, 1.8}}, {"0.5", {3.3, 1.7}}, {"0.7", {3.5, 1.5}}, {"0.9", {3.0, 1.2}}};
    CHECK(qos_filter(pts, {0, 0}).size() == pts.size());
    CHECK(qos_filter(pts, {3, 1.6}) == std::vector<std::size_t>{1, 2});
    CHECK(optimal_region(pts, {0, 0}) == pareto_frontier(pts));
    CHECK(optimal_region(pts, {3, 1.6}) == std::vector<std::size_t>{1, 2});
    CHECK(optimal_region(pts, {10, 10}).empty());
    CHECK_THROWS_AS((void)qos_filter(pts, {1}), std::invalid_argument);

    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto r = random_points(gen, 80, 2, 10);
        const std::vector<double> c = {1.0 + trial % 3, 2.0};
        const auto q = qos_filter(r, c);
        const auto raised = qos_filter(r, {c[0] + 0.5, c[1]});
        CHECK(std::includes(q.begin(), q.end(), raised.begin(), raised.end()));
        const auto star = optimal_region(r, c);
        const auto front = pareto_frontier(r);
        CHECK(std::includes(front.begin(), front.end(), star.begin(), star.end()));
        CHECK(std::includes(q.begin(), q.end(), star.begin(), star.end()));
    }
}
