#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cdnet/topology.hpp"

namespace cdnet {

/// Hardware address of a qubit: held by `node`, wired to generate entanglement
/// with physical neighbor `partner`, distinguished by `index` in [0, r).
/// After swaps the qubit may be entangled with any node; the address only
/// records the generation partner.
struct QubitAddress {
    NodeId node = 0;
    NodeId partner = 0;
    int index = 0;

    friend auto operator<=>(const QubitAddress&, const QubitAddress&) = default;
};

using LinkId = std::uint64_t;

struct EntangledLink {
    LinkId id = 0;
    QubitAddress endpoint_a;
    QubitAddress endpoint_b;
    std::size_t qubit_a = 0;  ///< flat index of endpoint_a
    std::size_t qubit_b = 0;  ///< flat index of endpoint_b
    int age = 0;
    int elementary_count = 1;

    [[nodiscard]] NodeId node_a() const noexcept { return endpoint_a.node; }
    [[nodiscard]] NodeId node_b() const noexcept { return endpoint_b.node; }
    [[nodiscard]] bool connects(NodeId i, NodeId j) const noexcept
    {
        return (node_a() == i && node_b() == j) || (node_a() == j && node_b() == i);
    }
    /// The endpoint node opposite `node` (which must be one of the endpoints).
    [[nodiscard]] NodeId peer_of(NodeId node) const noexcept
    {
        return node_a() == node ? node_b() : node_a();
    }
};

/**
 * Live configuration of entangled links in a network.
 *
 * Every node i owns r qubits per physical neighbor, laid out contiguously
 * in neighbor order. Links are kept in a compact array (removal swaps the
 * last link into the hole) and an occupancy table maps each qubit to the
 * array slot of the link holding it. Link ids come from a monotone counter.
 */
class NetworkState {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    NetworkState(std::shared_ptr<const Topology> topology, int r);

    [[nodiscard]] const Topology& topology() const noexcept { return *topology_; }
    [[nodiscard]] const std::shared_ptr<const Topology>& topology_ptr() const noexcept { return topology_; }
    [[nodiscard]] int r() const noexcept { return r_; }
    [[nodiscard]] std::int64_t clock() const noexcept { return clock_; }

    [[nodiscard]] std::span<const EntangledLink> links() const noexcept { return links_; }
    [[nodiscard]] std::size_t link_count() const noexcept { return links_.size(); }

    /// Number of links whose endpoints are {i, j}. Throws on i == j.
    [[nodiscard]] std::size_t link_count(NodeId i, NodeId j) const;

    [[nodiscard]] const EntangledLink* find(LinkId id) const;

    // Qubit addressing.
    [[nodiscard]] std::size_t qubit_count() const noexcept { return occupancy_.size(); }
    [[nodiscard]] std::size_t qubit_begin(NodeId i) const { return node_base_[i]; }
    [[nodiscard]] std::size_t qubit_end(NodeId i) const { return node_base_[i + 1]; }
    [[nodiscard]] std::size_t qubit_index(const QubitAddress& q) const;
    [[nodiscard]] QubitAddress address(std::size_t qubit) const;
    [[nodiscard]] bool is_free(const QubitAddress& q) const { return is_free(qubit_index(q)); }
    [[nodiscard]] bool is_free(std::size_t qubit) const { return occupancy_[qubit] == 0; }
    [[nodiscard]] std::optional<LinkId> occupant(const QubitAddress& q) const;
    [[nodiscard]] std::size_t occupied_qubits() const noexcept { return 2 * links_.size(); }

    /// Lowest m with qubit (i, j, m) free, or -1.
    [[nodiscard]] int lowest_free_index(NodeId i, NodeId j) const;

    /// New age-0 elementary link between physical neighbors i and j on
    /// qubits (i,j,m) and (j,i,m). Throws if not adjacent or occupied.
    LinkId create_elementary_link(NodeId i, NodeId j, int m);
    /// As above with independent indices (i,j,m_i) and (j,i,m_j).
    LinkId create_elementary_link(NodeId i, NodeId j, int m_i, int m_j);

    /// Swaps link1 (a-b) and link2 (b-c) at node b into one a-c link with the
    /// older age and the summed elementary count. Frees the two qubits at b.
    LinkId merge_links(NodeId at_node, LinkId link1, LinkId link2);

    void remove_link(LinkId id);

    /// Ages every link by one step and advances the clock.
    void advance_ages() noexcept;

    // Slot-level access used by the protocol hot loop. Slots are invalidated
    // by any removal.
    [[nodiscard]] std::size_t slot_of_qubit(std::size_t qubit) const
    {
        return occupancy_[qubit] == 0 ? npos : occupancy_[qubit] - 1;
    }
    [[nodiscard]] const EntangledLink& link_at(std::size_t slot) const { return links_[slot]; }
    void remove_slot(std::size_t slot);
    LinkId merge_slots(NodeId at_node, std::size_t slot1, std::size_t slot2);

    /// Removes every link for which pred(link) holds. Returns the number removed.
    template <typename Pred>
    std::size_t remove_if(Pred pred)
    {
        std::size_t removed = 0;
        for (std::size_t s = links_.size(); s-- > 0;) {
            if (pred(links_[s])) {
                remove_slot(s);
                ++removed;
            }
        }
        return removed;
    }

    /// Conservation and addressing audit. Throws std::logic_error on violation.
    void check_invariants() const;

    /// One line per link: node_a node_b age elementary_count.
    void write_snapshot(std::ostream& out) const;

private:
    std::size_t slot_of(LinkId id) const;
    LinkId push_link(EntangledLink link);

    std::shared_ptr<const Topology> topology_;
    int r_;
    std::int64_t clock_ = 0;
    LinkId next_id_ = 1;
    std::vector<std::size_t> node_base_;
    std::vector<EntangledLink> links_;
    std::vector<std::uint32_t> occupancy_;  ///< slot + 1, or 0 when free
};

}  // namespace cdnet
