#include "cdnet/netstate.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cdnet {

NetworkState::NetworkState(std::shared_ptr<const Topology> topology, int r)
    : topology_(std::move(topology)), r_(r)
{
    if (!topology_) {
        throw std::invalid_argument("NetworkState: null topology");
    }
    if (r_ < 1) {
        throw std::invalid_argument("NetworkState: r must be >= 1");
    }
    const std::size_t n = topology_->size();
    node_base_.resize(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        node_base_[i + 1] = node_base_[i] + static_cast<std::size_t>(r_) * topology_->degree(i);
    }
    occupancy_.assign(node_base_[n], 0);
}

std::size_t NetworkState::link_count(NodeId i, NodeId j) const
{
    if (i == j) {
        throw std::invalid_argument("link_count: nodes must be distinct");
    }
    return static_cast<std::size_t>(std::count_if(
        links_.begin(), links_.end(), [&](const EntangledLink& l) { return l.connects(i, j); }));
}

const EntangledLink* NetworkState::find(LinkId id) const
{
    for (const auto& l : links_) {
        if (l.id == id) {
            return &l;
        }
    }
    return nullptr;
}

std::size_t NetworkState::slot_of(LinkId id) const
{
    for (std::size_t s = 0; s < links_.size(); ++s) {
        if (links_[s].id == id) {
            return s;
        }
    }
    throw std::invalid_argument("unknown link id " + std::to_string(id));
}

std::size_t NetworkState::qubit_index(const QubitAddress& q) const
{
    const auto& topo = *topology_;
    if (q.node >= topo.size() || q.partner >= topo.size()) {
        throw std::out_of_range("qubit address: node out of range");
    }
    const int slot = topo.neighbor_slot(q.node, q.partner);
    if (slot < 0) {
        throw std::invalid_argument("qubit address: (" + std::to_string(q.node) + "," +
                                    std::to_string(q.partner) + ") is not a physical edge");
    }
    if (q.index < 0 || q.index >= r_) {
        throw std::out_of_range("qubit address: index out of [0, r)");
    }
    return node_base_[q.node] + static_cast<std::size_t>(slot) * r_ + q.index;
}

QubitAddress NetworkState::address(std::size_t qubit) const
{
    if (qubit >= occupancy_.size()) {
        throw std::out_of_range("qubit index out of range");
    }
    const auto it = std::upper_bound(node_base_.begin(), node_base_.end(), qubit);
    const auto node = static_cast<NodeId>(std::distance(node_base_.begin(), it) - 1);
    const std::size_t local = qubit - node_base_[node];
    return {node, topology_->neighbors(node)[local / r_], static_cast<int>(local % r_)};
}

std::optional<LinkId> NetworkState::occupant(const QubitAddress& q) const
{
    const std::size_t s = slot_of_qubit(qubit_index(q));
    if (s == npos) {
        return std::nullopt;
    }
    return links_[s].id;
}

int NetworkState::lowest_free_index(NodeId i, NodeId j) const
{
    const int slot = topology_->neighbor_slot(i, j);
    if (slot < 0) {
        return -1;
    }
    const std::size_t base = node_base_[i] + static_cast<std::size_t>(slot) * r_;
    for (int m = 0; m < r_; ++m) {
        if (occupancy_[base + m] == 0) {
            return m;
        }
    }
    return -1;
}

LinkId NetworkState::push_link(EntangledLink link)
{
    link.id = next_id_++;
    const auto slot = static_cast<std::uint32_t>(links_.size() + 1);
    occupancy_[link.qubit_a] = slot;
    occupancy_[link.qubit_b] = slot;
    links_.push_back(link);
    return link.id;
}

LinkId NetworkState::create_elementary_link(NodeId i, NodeId j, int m)
{
    return create_elementary_link(i, j, m, m);
}

LinkId NetworkState::create_elementary_link(NodeId i, NodeId j, int m_i, int m_j)
{
    if (i == j || i >= topology_->size() || j >= topology_->size() || !topology_->adjacent(i, j)) {
        throw std::invalid_argument("create_elementary_link: nodes " + std::to_string(i) + " and " +
                                    std::to_string(j) + " are not physical neighbors");
    }
    EntangledLink link;
    link.endpoint_a = {i, j, m_i};
    link.endpoint_b = {j, i, m_j};
    link.qubit_a = qubit_index(link.endpoint_a);
    link.qubit_b = qubit_index(link.endpoint_b);
    if (occupancy_[link.qubit_a] != 0 || occupancy_[link.qubit_b] != 0) {
        throw std::invalid_argument("create_elementary_link: qubit already occupied");
    }
    link.age = 0;
    link.elementary_count = 1;
    return push_link(link);
}

void NetworkState::remove_slot(std::size_t slot)
{
    const EntangledLink& victim = links_[slot];
    occupancy_[victim.qubit_a] = 0;
    occupancy_[victim.qubit_b] = 0;
    const std::size_t last = links_.size() - 1;
    if (slot != last) {
        links_[slot] = links_[last];
        const auto moved = static_cast<std::uint32_t>(slot + 1);
        occupancy_[links_[slot].qubit_a] = moved;
        occupancy_[links_[slot].qubit_b] = moved;
    }
    links_.pop_back();
}

void NetworkState::remove_link(LinkId id) { remove_slot(slot_of(id)); }

LinkId NetworkState::merge_links(NodeId at_node, LinkId link1, LinkId link2)
{
    if (link1 == link2) {
        throw std::invalid_argument("merge_links: a link cannot be merged with itself");
    }
    return merge_slots(at_node, slot_of(link1), slot_of(link2));
}

LinkId NetworkState::merge_slots(NodeId at_node, std::size_t slot1, std::size_t slot2)
{
    const EntangledLink l1 = links_[slot1];
    const EntangledLink l2 = links_[slot2];
    const bool l1_a = l1.node_a() == at_node;
    const bool l2_a = l2.node_a() == at_node;
    if ((!l1_a && l1.node_b() != at_node) || (!l2_a && l2.node_b() != at_node)) {
        throw std::invalid_argument("merge_links: both links must be incident to node " +
                                    std::to_string(at_node));
    }
    EntangledLink merged;
    merged.endpoint_a = l1_a ? l1.endpoint_b : l1.endpoint_a;
    merged.qubit_a = l1_a ? l1.qubit_b : l1.qubit_a;
    merged.endpoint_b = l2_a ? l2.endpoint_b : l2.endpoint_a;
    merged.qubit_b = l2_a ? l2.qubit_b : l2.qubit_a;
    if (merged.endpoint_a.node == merged.endpoint_b.node) {
        throw std::invalid_argument("merge_links: far endpoints coincide");
    }
    merged.age = std::max(l1.age, l2.age);
    merged.elementary_count = l1.elementary_count + l2.elementary_count;

    // Remove the higher slot first so the lower one is not relocated.
    remove_slot(std::max(slot1, slot2));
    remove_slot(std::min(slot1, slot2));
    return push_link(merged);
}

void NetworkState::advance_ages() noexcept
{
    for (auto& l : links_) {
        ++l.age;
    }
    ++clock_;
}

void NetworkState::check_invariants() const
{
    std::vector<std::size_t> seen(occupancy_.size(), 0);
    std::vector<std::size_t> per_node(topology_->size(), 0);
    for (std::size_t s = 0; s < links_.size(); ++s) {
        const auto& l = links_[s];
        if (l.node_a() == l.node_b()) {
            throw std::logic_error("link " + std::to_string(l.id) + " has both endpoints at one node");
        }
        if (l.elementary_count < 1 || l.age < 0) {
            throw std::logic_error("link " + std::to_string(l.id) + " has invalid age/count");
        }
        if (qubit_index(l.endpoint_a) != l.qubit_a || qubit_index(l.endpoint_b) != l.qubit_b) {
            throw std::logic_error("link " + std::to_string(l.id) + " address/index mismatch");
        }
        for (std::size_t q : {l.qubit_a, l.qubit_b}) {
            if (++seen[q] > 1) {
                throw std::logic_error("qubit " + std::to_string(q) + " held by two links");
            }
            if (occupancy_[q] != s + 1) {
                throw std::logic_error("occupancy table disagrees with link " + std::to_string(l.id));
            }
        }
        ++per_node[l.node_a()];
        ++per_node[l.node_b()];
    }
    std::size_t occupied = 0;
    for (std::size_t q = 0; q < occupancy_.size(); ++q) {
        if (occupancy_[q] != 0) {
            ++occupied;
            if (seen[q] == 0) {
                throw std::logic_error("qubit " + std::to_string(q) + " occupied by no link");
            }
        }
    }
    if (occupied != 2 * links_.size()) {
        throw std::logic_error("conservation violated: occupied qubits != 2 x links");
    }
    for (std::size_t i = 0; i < per_node.size(); ++i) {
        if (per_node[i] > static_cast<std::size_t>(r_) * topology_->degree(i)) {
            throw std::logic_error("node " + std::to_string(i) + " exceeds its qubit budget");
        }
    }
}

void NetworkState::write_snapshot(std::ostream& out) const
{
    for (const auto& l : links_) {
        out << l.node_a() << ' ' << l.node_b() << ' ' << l.age << ' ' << l.elementary_count << '\n';
    }
}

}  // namespace cdnet
