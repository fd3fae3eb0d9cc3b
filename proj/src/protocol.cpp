#include "cdnet/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cdnet {

namespace {

void require_probability(double p, const char* name)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

}  // namespace

void SimulationParams::validate() const
{
    if (!topology) {
        throw std::invalid_argument("topology is not set");
    }
    require_probability(p_gen, "p_gen");
    require_probability(p_swap, "p_swap");
    require_probability(p_cons, "p_cons");
    require_probability(q, "q");
    if (r < 1) {
        throw std::invalid_argument("r must be >= 1");
    }
    if (t_cut < 1) {
        throw std::invalid_argument("t_cut must be >= 1");
    }
    const int bound = physics::integer_cutoff(fidelity());
    if (t_cut > bound) {
        throw std::invalid_argument("t_cut = " + std::to_string(t_cut) +
                                    " exceeds the fidelity-guaranteeing cutoff " + std::to_string(bound));
    }
}

void apply_cutoffs(NetworkState& state, int t_cut)
{
    state.remove_if([t_cut](const EntangledLink& l) { return l.age >= t_cut; });
}

std::size_t attempt_generation(NetworkState& state, double p_gen, Rng& rng)
{
    std::size_t created = 0;
    for (const auto& [i, j] : state.topology().edges()) {
        const int m_i = state.lowest_free_index(i, j);
        if (m_i < 0) {
            continue;
        }
        const int m_j = state.lowest_free_index(j, i);
        if (m_j < 0) {
            continue;
        }
        if (bernoulli(rng, p_gen)) {
            state.create_elementary_link(i, j, m_i, m_j);
            ++created;
        }
    }
    return created;
}

void perform_swaps(NetworkState& state, double q, double p_swap, Rng& rng)
{
    if (q <= 0.0) {
        return;
    }
    const Topology& topo = state.topology();
    thread_local std::vector<NodeId> order;
    thread_local std::vector<std::size_t> occupied;
    thread_local std::vector<std::size_t> candidates;

    order.resize(topo.size());
    std::iota(order.begin(), order.end(), NodeId{0});
    std::shuffle(order.begin(), order.end(), rng);

    for (NodeId i : order) {
        occupied.clear();
        for (std::size_t qb = state.qubit_begin(i); qb < state.qubit_end(i); ++qb) {
            if (!state.is_free(qb)) {
                occupied.push_back(qb);
            }
        }
        if (occupied.size() < 2) {
            continue;
        }
        const std::size_t first = state.slot_of_qubit(occupied[uniform_index(rng, occupied.size())]);
        const NodeId j = state.link_at(first).peer_of(i);

        candidates.clear();
        for (std::size_t qb : occupied) {
            const NodeId k = state.link_at(state.slot_of_qubit(qb)).peer_of(i);
            if (k != j && !topo.adjacent(j, k)) {
                candidates.push_back(qb);
            }
        }
        if (candidates.empty()) {
            continue;
        }
        const std::size_t second = state.slot_of_qubit(candidates[uniform_index(rng, candidates.size())]);

        if (!bernoulli(rng, q)) {
            continue;
        }
        if (bernoulli(rng, p_swap)) {
            state.merge_slots(i, first, second);
        } else {
            state.remove_slot(std::max(first, second));
            state.remove_slot(std::min(first, second));
        }
    }
}

void remove_long_links(NetworkState& state, int M)
{
    state.remove_if([M](const EntangledLink& l) { return l.elementary_count > M; });
}

std::vector<std::pair<NodeId, NodeId>> consume(NetworkState& state, double p_cons, Rng& rng,
                                               ConsumePolicy policy)
{
    std::vector<std::pair<NodeId, NodeId>> consumed;
    if (p_cons <= 0.0 || state.link_count() == 0) {
        return consumed;
    }

    struct Entry {
        NodeId lo;
        NodeId hi;
        std::size_t slot;
    };
    thread_local std::vector<Entry> entries;
    thread_local std::vector<std::size_t> victims;
    entries.clear();
    victims.clear();

    const auto links = state.links();
    for (std::size_t s = 0; s < links.size(); ++s) {
        const auto& l = links[s];
        entries.push_back({std::min(l.node_a(), l.node_b()), std::max(l.node_a(), l.node_b()), s});
    }
    // Within a pair: oldest first, ties broken by creation order.
    std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        if (a.hi != b.hi) return a.hi < b.hi;
        if (links[a.slot].age != links[b.slot].age) return links[a.slot].age > links[b.slot].age;
        return links[a.slot].id < links[b.slot].id;
    });

    for (std::size_t begin = 0; begin < entries.size();) {
        std::size_t end = begin + 1;
        while (end < entries.size() && entries[end].lo == entries[begin].lo &&
               entries[end].hi == entries[begin].hi) {
            ++end;
        }
        if (bernoulli(rng, p_cons)) {
            std::size_t pick = begin;
            if (policy == ConsumePolicy::Random) {
                pick = begin + uniform_index(rng, end - begin);
            }
            victims.push_back(entries[pick].slot);
            consumed.emplace_back(entries[begin].lo, entries[begin].hi);
        }
        begin = end;
    }

    std::sort(victims.begin(), victims.end(), std::greater<>());
    for (std::size_t s : victims) {
        state.remove_slot(s);
    }
    return consumed;
}

void srs_step(NetworkState& state, const SimulationParams& params, Rng& rng, const SlotObserver& observe)
{
    apply_cutoffs(state, params.t_cut);
    attempt_generation(state, params.p_gen, rng);
    perform_swaps(state, params.q, params.p_swap, rng);
    remove_long_links(state, params.M);
    consume(state, params.p_cons, rng, params.consume_policy);
    if (observe) {
        observe(state);
    }
    state.advance_ages();
}

}  // namespace cdnet
