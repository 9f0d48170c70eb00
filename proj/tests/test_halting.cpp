#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "oracles.hpp"
#include "secpac/errors.hpp"
#include "secpac/halting.hpp"
#include "secpac/rng.hpp"

using namespace secpac;

TEST_CASE("mean run length") {
    CHECK(halting::run_length_mean(0.5, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(halting::run_length_mean(0.5, 2) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(halting::run_length_mean(0.812, 15) == doctest::Approx(115.602).epsilon(1e-4));

    SUBCASE("agrees with the absorbing-chain solve") {
        for (double q : {0.2, 0.45, 0.6, 0.812, 0.95}) {
            for (unsigned mh = 1; mh <= 12; ++mh) {
                CHECK(halting::run_length_mean(q, mh) ==
                      doctest::Approx(oracles::markov_run_mean(q, mh)).epsilon(1e-9));
            }
        }
    }
    SUBCASE("monotone in both arguments") {
        for (unsigned mh = 1; mh < 10; ++mh) {
            CHECK(halting::run_length_mean(0.6, mh + 1) > halting::run_length_mean(0.6, mh));
        }
        for (double q = 0.1; q < 0.9; q += 0.1) {
            CHECK(halting::run_length_mean(q + 0.05, 4) < halting::run_length_mean(q, 4));
        }
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(halting::run_length_mean(0.0, 3), domain_error);
        CHECK_THROWS_AS(halting::run_length_mean(1.0, 3), domain_error);
        CHECK_THROWS_AS(halting::run_length_mean(0.5, 0), domain_error);
    }
}

TEST_CASE("block halting bound") {
    CHECK(halting::halting_prob_block(0.5, 2, 4) == doctest::Approx(0.4375).epsilon(1e-12));
    CHECK(halting::halting_prob_block(0.9, 5, 4) == 0.0);
    CHECK(halting::halting_prob_block(1.0, 5, 5) == 1.0);
    CHECK(halting::halting_prob_block(1.0, 5, 4) == 0.0);
    CHECK(halting::halting_prob_block(0.0, 2, 100) == 0.0);
}

TEST_CASE("exact halting probability") {
    CHECK(halting::halting_prob_exact(0.5, 2, 3) == doctest::Approx(0.375).epsilon(1e-12));
    // 8 of the 16 length-4 strings contain a success pair (the 8 avoiding
    // one are counted by the Fibonacci number F(6) = 8).
    CHECK(halting::halting_prob_exact(0.5, 2, 4) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(halting::halting_prob_exact(0.5, 1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(halting::halting_prob_exact(0.7, 3, 0) == 0.0);
    CHECK(halting::halting_prob_exact(1.0, 4, 4) == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("matches exhaustive enumeration") {
        for (double q : {0.2, 0.5, 0.8}) {
            for (unsigned mh = 1; mh <= 5; ++mh) {
                for (unsigned m = 0; m <= 12; ++m) {
                    const double dp = halting::halting_prob_exact(q, mh, m);
                    const double brute = oracles::exhaustive_run_prob(q, mh, m);
                    CHECK(std::fabs(dp - brute) < 1e-12);
                }
            }
        }
    }
    SUBCASE("dominates the block bound") {
        for (double q = 0.1; q <= 0.91; q += 0.1) {
            for (unsigned mh = 1; mh <= 6; ++mh) {
                for (unsigned m = 0; m <= 60; ++m) {
                    CHECK(halting::halting_prob_exact(q, mh, m) >=
                          halting::halting_prob_block(q, mh, m) - 1e-12);
                }
            }
        }
    }
    SUBCASE("nondecreasing in m_cert and q") {
        double prev = -1.0;
        for (unsigned m = 0; m <= 80; ++m) {
            const double v = halting::halting_prob_exact(0.6, 3, m);
            CHECK(v >= prev);
            prev = v;
        }
        prev = -1.0;
        for (double q = 0.0; q <= 1.0001; q += 0.05) {
            const double v = halting::halting_prob_exact(std::min(q, 1.0), 3, 20);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("streak distribution conserves mass") {
    auto s = halting::streak_init(4);
    double prev_q = 0.0;
    for (int t = 0; t < 200; ++t) {
        halting::streak_advance(s, 0.6);
        double alive = 0.0;
        for (double v : s.streak_probs) alive += v;
        CHECK(std::fabs(alive + s.halted_mass - 1.0) < 1e-10);
        CHECK(s.halted_mass >= prev_q);
        prev_q = s.halted_mass;
    }
    CHECK(s.t == 200);
}

TEST_CASE("trace matches the scalar result") {
    const auto tr = halting::halting_trace(0.55, 3, 40);
    REQUIRE(tr.size() == 41);
    CHECK(tr.front() == 0.0);
    CHECK(tr.back() == doctest::Approx(halting::halting_prob_exact(0.55, 3, 40)).epsilon(1e-15));
    for (std::size_t i = 1; i < tr.size(); ++i) {
        CHECK(tr[i] >= tr[i - 1]);
        CHECK(tr[i] == doctest::Approx(halting::halting_prob_exact(0.55, 3, i)).epsilon(1e-12));
    }
}

TEST_CASE("streak tracker state machine") {
    halting::StreakTracker t;
    t.m_h = 2;
    t = halting::tracker_step(t, true);
    CHECK_FALSE(t.halted);
    t = halting::tracker_step(t, true);
    CHECK(t.halted);
    CHECK(t.trials_consumed == 2);
    CHECK(t.current_run == 2);
    CHECK_THROWS_AS(halting::tracker_step(t, true), std::logic_error);

    halting::StreakTracker u;
    u.m_h = 2;
    for (bool outcome : {true, false, true, true}) {
        u = halting::tracker_step(u, outcome);
    }
    CHECK(u.halted);
    CHECK(u.trials_consumed == 4);

    halting::StreakTracker v;
    v.m_h = 3;
    for (int i = 0; i < 10; ++i) {
        v = halting::tracker_step(v, false);
        CHECK(v.current_run <= v.m_h);
    }
    CHECK_FALSE(v.halted);
    CHECK(v.trials_consumed == 10);
}

TEST_CASE("tracker halting time matches the mean formula") {
    // 1e5 simulated certification runs at q = 0.6, m_h = 3.
    Rng rng(20260816);
    const double q = 0.6;
    double total_trials = 0.0;
    const int replicas = 100000;
    for (int r = 0; r < replicas; ++r) {
        halting::StreakTracker t;
        t.m_h = 3;
        while (!t.halted) {
            t = halting::tracker_step(t, rng.bernoulli(q));
        }
        total_trials += static_cast<double>(t.trials_consumed);
    }
    const double mc_mean = total_trials / replicas;
    const double expected = halting::run_length_mean(q, 3);
    CHECK(std::fabs(mc_mean - expected) <= 0.02 * expected);
}
