#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cdnet {

using NodeId = std::size_t;

/**
 * Immutable physical topology: a connected, undirected, unweighted graph
 * described by its adjacency matrix.
 *
 * Neighbor lists are kept sorted by node index; the position of a neighbor
 * in that list is what the qubit addressing scheme uses to lay out the
 * r qubits a node dedicates to each physical link.
 */
class Topology {
public:
    /// Validates and wraps a square 0/1 matrix. Throws std::invalid_argument
    /// on asymmetry, a nonzero diagonal, non-binary entries or a disconnected graph.
    explicit Topology(std::vector<std::vector<int>> adjacency);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] bool adjacent(NodeId i, NodeId j) const { return adjacency_[i * n_ + j] != 0; }
    [[nodiscard]] std::size_t degree(NodeId i) const { return neighbors_[i].size(); }
    [[nodiscard]] const std::vector<NodeId>& neighbors(NodeId i) const { return neighbors_[i]; }

    /// Index of j within neighbors(i), or -1 when the nodes are not adjacent.
    [[nodiscard]] int neighbor_slot(NodeId i, NodeId j) const { return slot_[i * n_ + j]; }

    /// Physical edges (i < j) in lexicographic order.
    [[nodiscard]] const std::vector<std::pair<NodeId, NodeId>>& edges() const noexcept { return edges_; }

    [[nodiscard]] std::vector<std::vector<int>> adjacency_matrix() const;

    /// BFS depth of every node measured from `root`.
    [[nodiscard]] std::vector<std::size_t> depths(NodeId root = 0) const;

    friend bool operator==(const Topology& a, const Topology& b) {
        return a.n_ == b.n_ && a.adjacency_ == b.adjacency_;
    }

private:
    std::size_t n_ = 0;
    std::vector<unsigned char> adjacency_;
    std::vector<int> slot_;
    std::vector<std::vector<NodeId>> neighbors_;
    std::vector<std::pair<NodeId, NodeId>> edges_;
};

/// (d,k)-tree: k levels, d^l nodes at level l, indices assigned breadth-first
/// from the root. Requires d >= 2 and k >= 1.
Topology tree_topology(std::size_t d, std::size_t k);

Topology from_adjacency(const std::vector<std::vector<int>>& matrix);

/// Reads "n" followed by n rows of n space-separated 0/1 entries.
Topology read_adjacency(std::istream& in);
Topology read_adjacency_file(const std::string& path);

/// Index of the first node of each tree level (0, 1, d+1, d^2+d+1, ...).
std::vector<NodeId> tree_level_representatives(std::size_t d, std::size_t k);

}  // namespace cdnet
