#include "cdnet/analytic.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cdnet::analytic {

namespace {

void require_probability(double p, const char* name)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

void require_r(int r)
{
    if (r < 1) {
        throw std::invalid_argument("r must be >= 1");
    }
}

double expected_links(const std::vector<double>& pi)
{
    double e = 0.0;
    for (std::size_t w = 0; w < pi.size(); ++w) {
        e += static_cast<double>(w) * pi[w];
    }
    return e;
}

}  // namespace

void BirthDeathChain::validate() const
{
    if (forward.empty() || forward.size() != backward.size()) {
        throw std::invalid_argument("birth-death chain: forward/backward sizes differ or are empty");
    }
    if (forward.back() != 0.0 || backward.front() != 0.0) {
        throw std::invalid_argument("birth-death chain: need p_r = 0 and q_0 = 0");
    }
    constexpr double slack = 1e-12;
    for (std::size_t w = 0; w < forward.size(); ++w) {
        const double z = holding(w);
        if (forward[w] < 0.0 || backward[w] < 0.0 || forward[w] > 1.0 || backward[w] > 1.0 ||
            z < -slack || z > 1.0 + slack) {
            throw std::invalid_argument("birth-death chain: row " + std::to_string(w) +
                                        " is not a probability row");
        }
    }
}

double NoSwapParams::lambda() const
{
    return p_cons * (1.0 - p_gen) / (p_gen * (1.0 - p_cons));
}

BirthDeathChain noswap_chain(double p_gen, double p_cons, int r)
{
    require_probability(p_gen, "p_gen");
    require_probability(p_cons, "p_cons");
    require_r(r);
    const auto states = static_cast<std::size_t>(r) + 1;
    BirthDeathChain chain;
    chain.forward.assign(states, p_gen * (1.0 - p_cons));
    chain.backward.assign(states, p_cons * (1.0 - p_gen));
    chain.forward[states - 1] = 0.0;
    chain.backward[0] = 0.0;
    chain.backward[states - 1] = p_cons;
    return chain;
}

std::vector<double> stationary_oracle(const BirthDeathChain& chain)
{
    chain.validate();
    const std::size_t states = chain.states();

    // Starting from w = 0 the walk climbs to the first state it cannot leave
    // upwards, then stays in the closed class [lower, upper] below it.
    std::size_t upper = 0;
    while (upper + 1 < states && chain.forward[upper] > 0.0) {
        ++upper;
    }
    std::size_t lower = upper;
    while (lower > 0 && chain.backward[lower] > 0.0) {
        --lower;
    }

    std::vector<double> pi(states, 0.0);
    const std::size_t m = upper - lower + 1;
    if (m == 1) {
        pi[lower] = 1.0;
        return pi;
    }

    // Solve pi (P - I) = 0 with sum(pi) = 1 on the closed class.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t s = 0; s < m; ++s) {
        const std::size_t w = lower + s;
        const auto row = static_cast<Eigen::Index>(s);
        // Column-major transpose of the generator: A(to, from).
        double stay = chain.holding(w);
        if (s + 1 < m) {
            A(row + 1, row) += chain.forward[w];
        } else {
            stay += chain.forward[w];
        }
        if (s > 0) {
            A(row - 1, row) += chain.backward[w];
        } else {
            stay += chain.backward[w];
        }
        A(row, row) += stay - 1.0;
    }
    A.row(static_cast<Eigen::Index>(m - 1)).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    b(static_cast<Eigen::Index>(m - 1)) = 1.0;
    const Eigen::VectorXd x = A.fullPivLu().solve(b);
    for (std::size_t s = 0; s < m; ++s) {
        pi[lower + s] = x(static_cast<Eigen::Index>(s));
    }
    return pi;
}

bool closed_form_applicable(double p_gen, double p_cons)
{
    return p_gen > 0.0 && p_gen < 1.0 && p_cons > 0.0 && p_cons < 1.0 && p_gen != p_cons;
}

std::vector<double> noswap_distribution(double p_gen, double p_cons, int r)
{
    require_probability(p_gen, "p_gen");
    require_probability(p_cons, "p_cons");
    require_r(r);
    if (!closed_form_applicable(p_gen, p_cons)) {
        return stationary_oracle(noswap_chain(p_gen, p_cons, r));
    }
    const double lambda = NoSwapParams{p_gen, p_cons, r, 1.0}.lambda();
    const double rho = 1.0 / lambda;
    std::vector<double> pi(static_cast<std::size_t>(r) + 1);
    if (rho <= 1.0) {
        const double pi0 = (p_gen - p_cons) / ((1.0 - p_gen) * (p_gen * std::pow(rho, r) - p_cons));
        for (int w = 0; w < r; ++w) {
            pi[w] = pi0 * std::pow(rho, w);
        }
        pi[r] = pi0 * std::pow(rho, r) * (1.0 - p_gen);
    } else {
        // Same expression scaled by rho^-r to stay finite for large r.
        const double denom = (1.0 - p_gen) * (p_gen - p_cons * std::pow(lambda, r));
        for (int w = 0; w < r; ++w) {
            pi[w] = (p_gen - p_cons) * std::pow(lambda, r - w) / denom;
        }
        pi[r] = (p_gen - p_cons) * (1.0 - p_gen) / denom;
    }
    return pi;
}

double noswap_v(double d_i, double p_gen, double p_cons, int r)
{
    require_probability(p_gen, "p_gen");
    require_probability(p_cons, "p_cons");
    require_r(r);
    if (!closed_form_applicable(p_gen, p_cons)) {
        return d_i * (1.0 - stationary_oracle(noswap_chain(p_gen, p_cons, r))[0]);
    }
    const double lambda = NoSwapParams{p_gen, p_cons, r, d_i}.lambda();
    const double a = (1.0 - p_cons) / (1.0 - p_gen);
    const double b = p_cons / p_gen;
    if (lambda < 1.0) {
        const double lr = std::pow(lambda, r);
        return d_i * (1.0 - a * lr) / (1.0 - b * lr);
    }
    const double inv = std::pow(1.0 / lambda, r);
    return d_i * (inv - a) / (inv - b);
}

double noswap_k(double d_i, double p_gen, double p_cons, int r)
{
    require_probability(p_gen, "p_gen");
    require_probability(p_cons, "p_cons");
    require_r(r);
    if (!closed_form_applicable(p_gen, p_cons)) {
        return d_i * expected_links(stationary_oracle(noswap_chain(p_gen, p_cons, r)));
    }
    const double lambda = NoSwapParams{p_gen, p_cons, r, d_i}.lambda();
    const double c = p_cons * (1.0 - p_cons) / (p_gen - p_cons);
    const double rr = static_cast<double>(r);
    if (lambda < 1.0) {
        const double lr = std::pow(lambda, r);
        return d_i * p_gen * (rr + c * (lr - 1.0)) / (p_gen - p_cons * lr);
    }
    const double inv = std::pow(1.0 / lambda, r);
    return d_i * p_gen * (rr * inv + c * (1.0 - inv)) / (p_gen * inv - p_cons);
}

NoSwapLimits noswap_limits(double d_i, double p_gen, double p_cons)
{
    if (!closed_form_applicable(p_gen, p_cons)) {
        throw std::invalid_argument("noswap_limits: need p_gen, p_cons in (0, 1) and p_gen != p_cons");
    }
    NoSwapLimits out;
    if (p_cons < p_gen) {
        out.v = d_i;
        out.k = std::numeric_limits<double>::infinity();
        out.k_unbounded = true;
    } else {
        out.v = d_i * p_gen * (1.0 - p_cons) / (p_cons * (1.0 - p_gen));
        out.k = d_i * p_gen * (1.0 - p_cons) / (p_cons - p_gen);
    }
    return out;
}

std::vector<std::string> validity_warnings(int t_cut, int r, double p_cons)
{
    std::vector<std::string> out;
    if (t_cut <= r) {
        std::ostringstream msg;
        msg << "t_cut = " << t_cut << " does not exceed r = " << r
            << "; the no-swap closed forms assume t_cut > r";
        out.push_back(msg.str());
    }
    if (p_cons > 0.0 && static_cast<double>(t_cut) < 10.0 / p_cons) {
        std::ostringstream msg;
        msg << "t_cut = " << t_cut << " is not much larger than 1/p_cons = " << 1.0 / p_cons
            << "; cutoffs will bias the no-swap closed forms";
        out.push_back(msg.str());
    }
    if (p_cons == 0.0) {
        out.emplace_back("p_cons = 0: links are only removed by cutoffs, which the no-swap closed forms ignore");
    }
    return out;
}

}  // namespace cdnet::analytic
