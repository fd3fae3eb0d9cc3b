#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Steady state of the SRS protocol without swaps. Each physical edge then
// carries an independent birth-death walk on the number of shared links
// w in {0..r}; the closed forms below are its stationary quantities.

namespace cdnet::analytic {

struct BirthDeathChain {
    std::vector<double> forward;   ///< p_w, w = 0..r (p_r = 0)
    std::vector<double> backward;  ///< q_w, w = 0..r (q_0 = 0)

    [[nodiscard]] std::size_t states() const noexcept { return forward.size(); }
    [[nodiscard]] double holding(std::size_t w) const { return 1.0 - forward[w] - backward[w]; }

    /// Throws std::invalid_argument on mismatched sizes, p_r != 0, q_0 != 0 or
    /// entries that do not form a stochastic row.
    void validate() const;
};

struct NoSwapParams {
    double p_gen = 0.5;
    double p_cons = 0.5;
    int r = 1;
    double d_i = 1.0;

    /// p_cons(1-p_gen) / (p_gen(1-p_cons))
    [[nodiscard]] double lambda() const;
    [[nodiscard]] double rho() const { return 1.0 / lambda(); }
};

/// Transition probabilities of the link-count walk on one physical edge.
BirthDeathChain noswap_chain(double p_gen, double p_cons, int r);

/// Stationary distribution obtained by solving the global balance equations
/// directly (dense linear solve). Reducible chains yield the distribution of
/// the closed class reached from w = 0, e.g. a point mass at r when p_cons = 0.
std::vector<double> stationary_oracle(const BirthDeathChain& chain);

/// True when the simplified closed forms are well posed: both
/// probabilities in (0, 1) and p_gen != p_cons.
bool closed_form_applicable(double p_gen, double p_cons);

/// Stationary link-count distribution; closed form where applicable,
/// otherwise the oracle.
std::vector<double> noswap_distribution(double p_gen, double p_cons, int r);

/// Expected steady-state virtual neighborhood size of a node of degree d_i.
double noswap_v(double d_i, double p_gen, double p_cons, int r);
inline double noswap_v(const NoSwapParams& p) { return noswap_v(p.d_i, p.p_gen, p.p_cons, p.r); }

/// Expected steady-state virtual degree of a node of degree d_i.
double noswap_k(double d_i, double p_gen, double p_cons, int r);
inline double noswap_k(const NoSwapParams& p) { return noswap_k(p.d_i, p.p_gen, p.p_cons, p.r); }

struct NoSwapLimits {
    double v = 0.0;
    double k = 0.0;          ///< +inf when k_unbounded
    bool k_unbounded = false;
};

/// r -> infinity limits. Throws std::invalid_argument if p_gen == p_cons or
/// either probability is outside (0, 1).
NoSwapLimits noswap_limits(double d_i, double p_gen, double p_cons);

/// Human-readable warnings when the closed forms are compared against a
/// simulation whose cutoff is not large enough (t_cut <= r or t_cut < 10/p_cons).
std::vector<std::string> validity_warnings(int t_cut, int r, double p_cons);

}  // namespace cdnet::analytic
