#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "cdnet/netstate.hpp"
#include "cdnet/physics.hpp"
#include "cdnet/random.hpp"

namespace cdnet {

enum class ConsumePolicy {
    Oldest,  ///< a consuming pair gives up its oldest link
    Random,  ///< a consuming pair gives up a uniformly chosen link
};

/// Full parameter tuple of a Single Random Swap (SRS) run.
struct SimulationParams {
    std::shared_ptr<const Topology> topology;
    double p_gen = 1.0;
    double F_new = 1.0;
    double p_swap = 1.0;
    int r = 1;
    double T = 2000.0;
    int M = 1;
    double p_cons = 0.0;
    double F_app = 0.6;
    double q = 0.0;
    int t_cut = 1;
    ConsumePolicy consume_policy = ConsumePolicy::Oldest;

    [[nodiscard]] physics::FidelityParams fidelity() const { return {T, F_new, F_app, M}; }

    /// Sets t_cut to the largest integer cutoff allowed by the fidelity model.
    void derive_cutoff() { t_cut = physics::integer_cutoff(fidelity()); }

    /// Throws std::invalid_argument if any field is out of range or t_cut
    /// exceeds the fidelity bound.
    void validate() const;
};

/// Step 1: drop links whose age has reached the cutoff.
void apply_cutoffs(NetworkState& state, int t_cut);

/// Step 2: one generation attempt per physical edge that has a free qubit
/// facing the other endpoint on both sides (lowest free index each side).
/// Returns the number of links created.
std::size_t attempt_generation(NetworkState& state, double p_gen, Rng& rng);

/// Step 3: nodes in a fresh random order each pick one of their links (peer j)
/// and a second link whose peer k != j is not physically adjacent to j, then
/// swap with probability q. A swap succeeds with probability p_swap; on failure
/// both links are discarded.
void perform_swaps(NetworkState& state, double q, double p_swap, Rng& rng);

/// Step 5: drop links assembled from more than M elementary links.
void remove_long_links(NetworkState& state, int M);

/// Step 6: every node pair sharing links consumes one with probability p_cons.
/// Returns the pairs (i < j) that consumed, in ascending order.
std::vector<std::pair<NodeId, NodeId>> consume(NetworkState& state, double p_cons, Rng& rng,
                                               ConsumePolicy policy = ConsumePolicy::Oldest);

/// Called once per slot after consumption and before ageing; metrics are
/// read here.
using SlotObserver = std::function<void(const NetworkState&)>;

/// One time slot of the SRS protocol: cutoffs, generation, swaps, (classical
/// communication is implicit), long-link removal, consumption, observation,
/// ageing.
void srs_step(NetworkState& state, const SimulationParams& params, Rng& rng,
              const SlotObserver& observe = {});

}  // namespace cdnet
