#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "cdnet/topology.hpp"

using namespace cdnet;

TEST_CASE("tree (2,3) has 7 nodes with degrees 2/3/1 by level")
{
    const Topology t = tree_topology(2, 3);
    CHECK(t.size() == 7);
    CHECK(t.edges().size() == 6);
    CHECK(t.degree(0) == 2);
    CHECK(t.degree(1) == 3);
    CHECK(t.degree(2) == 3);
    for (NodeId leaf = 3; leaf < 7; ++leaf) {
        CHECK(t.degree(leaf) == 1);
    }
    CHECK(t.neighbors(1) == std::vector<NodeId>{0, 3, 4});
}

TEST_CASE("tree (3,3): 13 nodes, degrees 3/4/1")
{
    const Topology t = tree_topology(3, 3);
    REQUIRE(t.size() == (27 - 1) / 2);
    const auto depth = t.depths(0);
    std::size_t edges = 0;
    for (NodeId i = 0; i < t.size(); ++i) {
        edges += t.degree(i);
        const std::size_t expected = depth[i] == 0 ? 3 : depth[i] == 1 ? 4 : 1;
        CHECK(t.degree(i) == expected);
    }
    CHECK(edges / 2 == t.size() - 1);
    CHECK(tree_level_representatives(3, 3) == std::vector<NodeId>{0, 1, 4});
}

TEST_CASE("single-level tree is one isolated node")
{
    const Topology t = tree_topology(4, 1);
    CHECK(t.size() == 1);
    CHECK(t.edges().empty());
}

TEST_CASE("tree arguments are checked")
{
    CHECK_THROWS_AS((void)tree_topology(1, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)tree_topology(2, 0), std::invalid_argument);
}

TEST_CASE("adjacency validation")
{
    CHECK_NOTHROW(from_adjacency({{0, 1}, {1, 0}}));
    CHECK_THROWS_AS((void)from_adjacency({{0, 1}, {0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)from_adjacency({{1, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)from_adjacency({{0, 2}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS((void)from_adjacency({{0, 1, 0}, {1, 0}}), std::invalid_argument);
    // two components
    CHECK_THROWS_AS((void)from_adjacency({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}),
                    std::invalid_argument);
}

TEST_CASE("explicit (2,3)-tree adjacency equals the generator")
{
    // built by hand: 0-1, 0-2, 1-3, 1-4, 2-5, 2-6
    std::vector<std::vector<int>> m(7, std::vector<int>(7, 0));
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}}) {
        m[a][b] = m[b][a] = 1;
    }
    CHECK(from_adjacency(m) == tree_topology(2, 3));
    CHECK(tree_topology(2, 3).adjacency_matrix() == m);
}

TEST_CASE("adjacency text round trip")
{
    std::istringstream in("3\n0 1 0\n1 0 1\n0 1 0\n");
    const Topology t = read_adjacency(in);
    CHECK(t.size() == 3);
    CHECK(t.adjacent(0, 1));
    CHECK_FALSE(t.adjacent(0, 2));
    CHECK(t.neighbor_slot(1, 2) == 1);
    CHECK(t.neighbor_slot(0, 2) == -1);

    std::istringstream bad("2\n0 1\n");
    CHECK_THROWS((void)read_adjacency(bad));
}
