#include "doctest.h"

#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cdnet/netstate.hpp"

using namespace cdnet;

namespace {

std::shared_ptr<const Topology> chain3()
{
    return std::make_shared<const Topology>(from_adjacency({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}));
}

std::shared_ptr<const Topology> tree23() { return std::make_shared<const Topology>(tree_topology(2, 3)); }

}  // namespace

TEST_CASE("empty state")
{
    NetworkState s(tree23(), 3);
    CHECK(s.link_count() == 0);
    CHECK(s.link_count(0, 1) == 0);
    CHECK(s.link_count(3, 6) == 0);
    // r qubits per incident edge
    CHECK(s.qubit_count() == 3 * 2 * 6);
    CHECK_THROWS((void)s.link_count(2, 2));
    s.check_invariants();
}

TEST_CASE("qubit addressing is a bijection")
{
    NetworkState s(tree23(), 4);
    for (std::size_t q = 0; q < s.qubit_count(); ++q) {
        const QubitAddress a = s.address(q);
        CHECK(s.topology().adjacent(a.node, a.partner));
        CHECK(s.qubit_index(a) == q);
        CHECK(s.is_free(q));
    }
    CHECK_THROWS((void)s.qubit_index({0, 3, 0}));  // not a neighbor
    CHECK_THROWS((void)s.qubit_index({0, 1, 4}));  // index out of range
}

TEST_CASE("creation and link counts")
{
    NetworkState s(tree23(), 3);
    s.create_elementary_link(0, 1, 0);
    s.create_elementary_link(1, 0, 1);
    s.create_elementary_link(0, 2, 0);
    CHECK(s.link_count(0, 1) == 2);
    CHECK(s.link_count(1, 0) == 2);
    CHECK(s.link_count(0, 2) == 1);
    CHECK(s.occupied_qubits() == 6);
    CHECK_FALSE(s.is_free({0, 1, 0}));
    CHECK_FALSE(s.is_free({1, 0, 0}));
    CHECK(s.lowest_free_index(0, 1) == 2);
    CHECK_THROWS((void)s.create_elementary_link(0, 1, 0));
    CHECK_THROWS((void)s.create_elementary_link(0, 3, 0));
    s.check_invariants();
}

TEST_CASE("filling every qubit pair of an edge")
{
    const int r = 5;
    NetworkState s(chain3(), r);
    for (int m = 0; m < r; ++m) {
        s.create_elementary_link(0, 1, m);
    }
    CHECK(s.link_count(0, 1) == static_cast<std::size_t>(r));
    CHECK(s.lowest_free_index(0, 1) == -1);
    for (int m = 0; m < r; ++m) {
        CHECK_THROWS((void)s.create_elementary_link(0, 1, m));
    }
    s.check_invariants();
}

TEST_CASE("merge keeps the older age and sums counts")
{
    NetworkState s(chain3(), 2);
    const LinkId ab = s.create_elementary_link(0, 1, 0);
    s.advance_ages();
    s.advance_ages();
    const LinkId bc = s.create_elementary_link(1, 2, 0);
    s.advance_ages();
    s.advance_ages();
    s.advance_ages();
    // ages 5 and 3
    CHECK(s.find(ab)->age == 5);
    CHECK(s.find(bc)->age == 3);
    const LinkId ac = s.merge_links(1, ab, bc);
    REQUIRE(s.link_count() == 1);
    const EntangledLink* l = s.find(ac);
    REQUIRE(l != nullptr);
    CHECK(l->age == 5);
    CHECK(l->elementary_count == 2);
    CHECK(l->connects(0, 2));
    CHECK(s.is_free({1, 0, 0}));
    CHECK(s.is_free({1, 2, 0}));
    CHECK_FALSE(s.is_free({0, 1, 0}));
    CHECK(s.find(ab) == nullptr);
    s.check_invariants();
}

TEST_CASE("merge of fresh links and chained merges")
{
    // path 0-1-2-3-4
    std::vector<std::vector<int>> m(5, std::vector<int>(5, 0));
    for (int i = 0; i + 1 < 5; ++i) m[i][i + 1] = m[i + 1][i] = 1;
    NetworkState s(std::make_shared<const Topology>(from_adjacency(m)), 1);
    LinkId l01 = s.create_elementary_link(0, 1, 0);
    const LinkId l12 = s.create_elementary_link(1, 2, 0);
    const LinkId l23 = s.create_elementary_link(2, 3, 0);
    const LinkId l34 = s.create_elementary_link(3, 4, 0);
    LinkId acc = s.merge_links(1, l01, l12);
    CHECK(s.find(acc)->age == 0);
    CHECK(s.find(acc)->elementary_count == 2);
    acc = s.merge_links(2, acc, l23);
    CHECK(s.find(acc)->elementary_count == 3);
    acc = s.merge_links(3, acc, l34);
    CHECK(s.find(acc)->elementary_count == 4);
    CHECK(s.find(acc)->connects(0, 4));
    s.check_invariants();
    (void)l01;
}

TEST_CASE("merge preconditions")
{
    NetworkState s(chain3(), 2);
    const LinkId a = s.create_elementary_link(0, 1, 0);
    const LinkId b = s.create_elementary_link(0, 1, 1);
    const LinkId c = s.create_elementary_link(1, 2, 0);
    CHECK_THROWS((void)s.merge_links(1, a, b));   // far ends coincide
    CHECK_THROWS((void)s.merge_links(2, a, c));   // a not incident to 2
    CHECK_THROWS((void)s.merge_links(1, a, 999));
    s.check_invariants();
}

TEST_CASE("removal")
{
    NetworkState s(tree23(), 2);
    const LinkId only = s.create_elementary_link(1, 3, 1);
    s.remove_link(only);
    CHECK(s.link_count() == 0);
    CHECK_THROWS((void)s.remove_link(only));

    std::vector<LinkId> ids;
    for (const auto& [i, j] : s.topology().edges()) {
        ids.push_back(s.create_elementary_link(i, j, 0));
        ids.push_back(s.create_elementary_link(i, j, 1));
    }
    const std::size_t before = s.link_count(0, 2);
    s.remove_link(ids[2]);  // first 0-2 link
    CHECK(s.link_count(0, 2) == before - 1);
    for (LinkId id : ids) {
        if (id != ids[2]) s.remove_link(id);
    }
    for (std::size_t q = 0; q < s.qubit_count(); ++q) {
        CHECK(s.is_free(q));
    }
    s.check_invariants();
}

TEST_CASE("ageing")
{
    NetworkState s(chain3(), 1);
    s.advance_ages();
    CHECK(s.clock() == 1);
    CHECK(s.link_count() == 0);
    const LinkId a = s.create_elementary_link(0, 1, 0);
    s.advance_ages();
    CHECK(s.find(a)->age == 1);
    const LinkId b = s.create_elementary_link(1, 2, 0);
    for (int n = 0; n < 7; ++n) s.advance_ages();
    CHECK(s.find(a)->age == 8);
    CHECK(s.find(b)->age == 7);
    CHECK(s.clock() == 9);
}

TEST_CASE("link_count is symmetric on random states")
{
    const auto topo = std::make_shared<const Topology>(tree_topology(3, 3));
    std::mt19937 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        NetworkState s(topo, 3);
        for (const auto& [i, j] : topo->edges()) {
            for (int m = 0; m < 3; ++m) {
                if (gen() % 2) s.create_elementary_link(i, j, m);
            }
        }
        // some random merges at level-1 nodes
        for (int k = 0; k < 5; ++k) {
            const NodeId at = 1 + gen() % 3;
            std::vector<LinkId> inc;
            for (const auto& l : s.links()) {
                if (l.node_a() == at || l.node_b() == at) inc.push_back(l.id);
            }
            if (inc.size() < 2) continue;
            const LinkId x = inc[gen() % inc.size()];
            const LinkId y = inc[gen() % inc.size()];
            if (x == y || s.find(x)->peer_of(at) == s.find(y)->peer_of(at)) continue;
            s.merge_links(at, x, y);
        }
        s.check_invariants();
        for (NodeId i = 0; i < topo->size(); ++i) {
            for (NodeId j = 0; j < topo->size(); ++j) {
                if (i != j) CHECK(s.link_count(i, j) == s.link_count(j, i));
            }
        }
    }
}

TEST_CASE("snapshot text")
{
    NetworkState s(chain3(), 1);
    s.create_elementary_link(1, 2, 0);
    std::ostringstream out;
    s.write_snapshot(out);
    CHECK(out.str() == "1 2 0 1\n");
}
