#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cdnet/analytic.hpp"

using namespace cdnet::analytic;

namespace {

// Stationary law by iterating pi <- pi P from the empty state. Independent of
// both the closed forms and the library's linear solve.
std::vector<double> power_iteration(double p_gen, double p_cons, int r)
{
    const auto c = noswap_chain(p_gen, p_cons, r);
    std::vector<double> pi(c.states(), 0.0);
    pi[0] = 1.0;
    for (int it = 0; it < 200000; ++it) {
        std::vector<double> next(c.states(), 0.0);
        for (std::size_t w = 0; w < c.states(); ++w) {
            next[w] += pi[w] * c.holding(w);
            if (w + 1 < c.states()) next[w + 1] += pi[w] * c.forward[w];
            if (w > 0) next[w - 1] += pi[w] * c.backward[w];
        }
        double diff = 0.0;
        for (std::size_t w = 0; w < c.states(); ++w) diff += std::abs(next[w] - pi[w]);
        pi.swap(next);
        if (diff < 1e-15) break;
    }
    return pi;
}

}  // namespace

TEST_CASE("chain transition probabilities")
{
    const auto c = noswap_chain(0.5, 0.25, 1);
    REQUIRE(c.states() == 2);
    CHECK(c.forward[0] == doctest::Approx(0.375));
    CHECK(c.backward[1] == doctest::Approx(0.25));
    CHECK(c.forward[1] == 0.0);
    CHECK(c.backward[0] == 0.0);

    const auto up = noswap_chain(1.0, 0.0, 4);
    for (int w = 0; w < 4; ++w) CHECK(up.forward[w] == 1.0);
    for (int w = 0; w <= 4; ++w) CHECK(up.backward[w] == 0.0);

    for (double pg : {0.1, 0.6, 1.0}) {
        for (double pc : {0.0, 0.3, 0.9}) {
            const auto ch = noswap_chain(pg, pc, 5);
            ch.validate();
            for (std::size_t w = 0; w < ch.states(); ++w) {
                CHECK(ch.forward[w] + ch.backward[w] + ch.holding(w) == doctest::Approx(1.0));
            }
        }
    }
    CHECK_THROWS((void)noswap_chain(0.5, 0.5, 0));
}

TEST_CASE("stationary oracle")
{
    const auto pi = stationary_oracle(noswap_chain(0.5, 0.25, 1));
    CHECK(pi[0] == doctest::Approx(0.4));
    CHECK(pi[1] == doctest::Approx(0.6));

    const auto mass = stationary_oracle(noswap_chain(0.7, 0.0, 4));
    CHECK(mass == std::vector<double>{0, 0, 0, 0, 1});

    const auto dead = stationary_oracle(noswap_chain(0.0, 0.5, 3));
    CHECK(dead == std::vector<double>{1, 0, 0, 0});

    for (double pg : {0.15, 0.5, 0.85}) {
        for (double pc : {0.05, 0.5, 0.95}) {
            for (int r : {1, 3, 8}) {
                const auto a = stationary_oracle(noswap_chain(pg, pc, r));
                const auto b = power_iteration(pg, pc, r);
                for (int w = 0; w <= r; ++w) CHECK(a[w] == doctest::Approx(b[w]).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("closed-form distribution")
{
    const auto pi = noswap_distribution(0.5, 0.25, 1);
    CHECK(pi[0] == doctest::Approx(0.4));
    CHECK(pi[1] == doctest::Approx(0.6));
    CHECK(NoSwapParams{0.5, 0.25, 1, 1}.rho() == doctest::Approx(3.0));

    for (int ig = 1; ig < 20; ++ig) {
        for (int ic = 1; ic < 20; ++ic) {
            if (ig == ic) continue;
            const double pg = ig * 0.05;
            const double pc = ic * 0.05;
            for (int r : {1, 2, 5, 10, 40}) {
                const auto d = noswap_distribution(pg, pc, r);
                const auto o = stationary_oracle(noswap_chain(pg, pc, r));
                double sum = 0.0;
                for (int w = 0; w <= r; ++w) {
                    CHECK(std::abs(d[w] - o[w]) < 1e-10);
                    sum += d[w];
                }
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
    // degenerate inputs fall back to the oracle
    CHECK(noswap_distribution(0.3, 0.3, 2) == stationary_oracle(noswap_chain(0.3, 0.3, 2)));
}

TEST_CASE("v and k")
{
    CHECK(noswap_v(1, 0.5, 0.25, 1) == doctest::Approx(0.6));
    CHECK(noswap_k(1, 0.5, 0.25, 1) == doctest::Approx(0.6));
    for (double d : {1.0, 2.0, 3.0}) {
        for (int r : {1, 5, 9}) {
            CHECK(noswap_v(d, 0.4, 0.0, r) == d);
            CHECK(noswap_k(d, 0.4, 0.0, r) == d * r);
        }
    }
    for (double pg : {0.1, 0.45, 0.9}) {
        for (double pc : {0.2, 0.6}) {
            for (int r : {1, 4, 7}) {
                const auto o = stationary_oracle(noswap_chain(pg, pc, r));
                double mean = 0.0;
                for (int w = 0; w <= r; ++w) mean += w * o[w];
                CHECK(std::abs(noswap_v(2.0, pg, pc, r) - 2.0 * (1.0 - o[0])) < 1e-10);
                CHECK(std::abs(noswap_k(2.0, pg, pc, r) - 2.0 * mean) < 1e-10);
            }
        }
    }
}

TEST_CASE("large r limits")
{
    const auto hi = noswap_limits(1, 0.8, 0.2);
    CHECK(hi.v == doctest::Approx(1.0));
    CHECK(hi.k_unbounded);
    CHECK(std::isinf(hi.k));

    const auto lo = noswap_limits(1, 0.2, 0.8);
    CHECK(lo.v == doctest::Approx(0.2 * 0.2 / (0.8 * 0.8)));
    CHECK(lo.v == doctest::Approx(0.0625));
    CHECK(lo.k == doctest::Approx(0.2 * 0.2 / 0.6));
    CHECK_FALSE(lo.k_unbounded);
    CHECK_THROWS_AS((void)noswap_limits(1, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)noswap_limits(1, 0.0, 0.5), std::invalid_argument);

    // v approaches its limit monotonically in r
    for (auto [pg, pc] : {std::pair{0.3, 0.6}, std::pair{0.6, 0.3}}) {
        const double lim = noswap_limits(3, pg, pc).v;
        double prev = std::abs(noswap_v(3, pg, pc, 1) - lim);
        for (int r = 2; r <= 50; ++r) {
            const double gap = std::abs(noswap_v(3, pg, pc, r) - lim);
            CHECK(gap <= prev + 1e-15);
            prev = gap;
        }
        CHECK(prev < 1e-6);
    }
}

TEST_CASE("no overflow for very large r")
{
    for (auto [pg, pc] : {std::pair{0.05, 0.95}, std::pair{0.95, 0.05}}) {
        const double v = noswap_v(2, pg, pc, 2000);
        const double k = noswap_k(2, pg, pc, 2000);
        CHECK(std::isfinite(v));
        CHECK(std::isfinite(k));
        CHECK(v == doctest::Approx(noswap_limits(2, pg, pc).v).epsilon(1e-9));
    }
}

TEST_CASE("validity warnings")
{
    CHECK(validity_warnings(221, 5, 0.1).empty());
    CHECK(validity_warnings(5, 5, 0.1).size() == 2);
    CHECK(validity_warnings(50, 5, 0.1).size() == 1);
}
