#include "cdnet/topology.hpp"

#include <fstream>
#include <istream>
#include <queue>
#include <stdexcept>
#include <string>

namespace cdnet {

Topology::Topology(std::vector<std::vector<int>> adjacency)
    : n_(adjacency.size())
{
    if (n_ == 0) {
        throw std::invalid_argument("topology: adjacency matrix is empty");
    }
    adjacency_.assign(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (adjacency[i].size() != n_) {
            throw std::invalid_argument("topology: adjacency matrix is not square (row " +
                                        std::to_string(i) + ")");
        }
        for (std::size_t j = 0; j < n_; ++j) {
            const int a = adjacency[i][j];
            if (a != 0 && a != 1) {
                throw std::invalid_argument("topology: entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") is not 0/1");
            }
            adjacency_[i * n_ + j] = static_cast<unsigned char>(a);
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        if (adjacency_[i * n_ + i] != 0) {
            throw std::invalid_argument("topology: nonzero diagonal at node " + std::to_string(i));
        }
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (adjacency_[i * n_ + j] != adjacency_[j * n_ + i]) {
                throw std::invalid_argument("topology: asymmetric entry (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
            }
        }
    }

    neighbors_.resize(n_);
    slot_.assign(n_ * n_, -1);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (adjacency_[i * n_ + j]) {
                slot_[i * n_ + j] = static_cast<int>(neighbors_[i].size());
                neighbors_[i].push_back(j);
                if (i < j) {
                    edges_.emplace_back(i, j);
                }
            }
        }
    }

    const auto depth = depths(0);
    for (std::size_t i = 0; i < n_; ++i) {
        if (depth[i] == static_cast<std::size_t>(-1)) {
            throw std::invalid_argument("topology: graph is disconnected (node " +
                                        std::to_string(i) + " unreachable from node 0)");
        }
    }
}

std::vector<std::vector<int>> Topology::adjacency_matrix() const
{
    std::vector<std::vector<int>> out(n_, std::vector<int>(n_, 0));
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            out[i][j] = adjacency_[i * n_ + j];
        }
    }
    return out;
}

std::vector<std::size_t> Topology::depths(NodeId root) const
{
    std::vector<std::size_t> depth(n_, static_cast<std::size_t>(-1));
    std::queue<NodeId> frontier;
    depth[root] = 0;
    frontier.push(root);
    while (!frontier.empty()) {
        const NodeId u = frontier.front();
        frontier.pop();
        for (NodeId v : neighbors_[u]) {
            if (depth[v] == static_cast<std::size_t>(-1)) {
                depth[v] = depth[u] + 1;
                frontier.push(v);
            }
        }
    }
    return depth;
}

Topology tree_topology(std::size_t d, std::size_t k)
{
    if (d < 2) {
        throw std::invalid_argument("tree_topology: branching factor d must be >= 2");
    }
    if (k < 1) {
        throw std::invalid_argument("tree_topology: level count k must be >= 1");
    }
    std::size_t n = 0;
    std::size_t level_size = 1;
    for (std::size_t l = 0; l < k; ++l) {
        n += level_size;
        level_size *= d;
    }
    // Breadth-first numbering: the children of node p are d*p+1 .. d*p+d.
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (std::size_t child = 1; child < n; ++child) {
        const std::size_t parent = (child - 1) / d;
        a[parent][child] = 1;
        a[child][parent] = 1;
    }
    return Topology(std::move(a));
}

Topology from_adjacency(const std::vector<std::vector<int>>& matrix)
{
    return Topology(matrix);
}

Topology read_adjacency(std::istream& in)
{
    long long n = 0;
    if (!(in >> n) || n <= 0) {
        throw std::invalid_argument("adjacency file: first token must be a positive node count");
    }
    std::vector<std::vector<int>> a(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n), 0));
    for (auto& row : a) {
        for (auto& entry : row) {
            if (!(in >> entry)) {
                throw std::invalid_argument("adjacency file: expected " + std::to_string(n * n) +
                                            " matrix entries");
            }
        }
    }
    return Topology(std::move(a));
}

Topology read_adjacency_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open adjacency file: " + path);
    }
    return read_adjacency(in);
}

std::vector<NodeId> tree_level_representatives(std::size_t d, std::size_t k)
{
    std::vector<NodeId> out;
    NodeId first = 0;
    std::size_t level_size = 1;
    for (std::size_t l = 0; l < k; ++l) {
        out.push_back(first);
        first += level_size;
        level_size *= d;
    }
    return out;
}

}  // namespace cdnet
