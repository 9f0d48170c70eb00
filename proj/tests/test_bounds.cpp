#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "secpac/bounds.hpp"
#include "secpac/errors.hpp"

using namespace secpac;
using bounds::ClassCapacity;
using bounds::LearningTarget;
using bounds::PrlBaseline;

namespace {
LearningTarget tgt(double eps, double delta) { return LearningTarget{eps, delta}; }
}  // namespace

TEST_CASE("noiseless sample bound") {
    CHECK(bounds::sample_bound_noiseless(tgt(0.25, 1.0), ClassCapacity{1}) == 0);
    CHECK(bounds::sample_bound_noiseless(tgt(0.1, 0.05), ClassCapacity{2}) == 37);
    CHECK(bounds::sample_bound_noiseless(tgt(0.05, 0.05), ClassCapacity{16}) == 116);
    CHECK_THROWS_AS(bounds::sample_bound_noiseless(tgt(0.0, 0.05), ClassCapacity{2}),
                    domain_error);
}

TEST_CASE("noisy sample bound") {
    CHECK(bounds::sample_bound_rcn(tgt(0.1, 0.05), ClassCapacity{2}, 0.0) == 877);
    // ceil(328.731 * ln 640) evaluated independently.
    CHECK(bounds::sample_bound_rcn(tgt(0.1, 0.05), ClassCapacity{16}, 0.11) == 2125);
    // (1-2 eta)^-2 divergence near eta = 1/2.
    CHECK(bounds::sample_bound_rcn(tgt(0.1, 0.05), ClassCapacity{2}, 0.49) >
          100 * bounds::sample_bound_rcn(tgt(0.1, 0.05), ClassCapacity{2}, 0.0));
    CHECK_THROWS_AS(bounds::sample_bound_rcn(tgt(0.1, 0.05), ClassCapacity{2}, 0.5),
                    domain_error);
}

TEST_CASE("certifiable failure level") {
    const auto at_zero = bounds::delta_min(0, 0.3, 0.2, ClassCapacity{1});
    CHECK(at_zero.raw == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(at_zero.clamped == 1.0);

    const auto inverted = bounds::delta_min(877, 0.1, 0.0, ClassCapacity{2});
    CHECK(inverted.clamped <= 0.05);
    CHECK(inverted.clamped == doctest::Approx(0.04985).epsilon(1e-3));

    SUBCASE("strictly decreasing in m") {
        double prev = bounds::delta_min(0, 0.1, 0.11, ClassCapacity{16}).raw;
        for (std::uint64_t m = 1; m <= 50; ++m) {
            const double cur = bounds::delta_min(m, 0.1, 0.11, ClassCapacity{16}).raw;
            CHECK(cur < prev);
            prev = cur;
        }
    }
    SUBCASE("inverts the sample bound on a grid") {
        for (double eps : {0.05, 0.1, 0.2}) {
            for (double delta : {0.01, 0.05, 0.2}) {
                for (double eta : {0.0, 0.11, 0.3}) {
                    for (std::uint64_t h : {1ULL, 2ULL, 16ULL, 1024ULL}) {
                        const auto m =
                            bounds::sample_bound_rcn(tgt(eps, delta), ClassCapacity{h}, eta);
                        CHECK(bounds::delta_min(m, eps, eta, ClassCapacity{h}).clamped <=
                              delta + 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("learning-probability surrogate") {
    CHECK(bounds::p_bl(0, 0.1, 0.11) == 0.0);
    CHECK(bounds::p_bl(1000000000ULL, 0.1, 0.0) > 0.999);
    // gamma = 0.5 * 0.01 * 0.78^2 = 3.042e-3; 1 - exp(-3.042).
    CHECK(bounds::p_bl(1000, 0.1, 0.11) == doctest::Approx(0.9522608).epsilon(1e-3));
}

TEST_CASE("geometric baseline") {
    CHECK(bounds::p_prl(0, PrlBaseline{0.7}) == 0.0);
    CHECK(bounds::p_prl(1, PrlBaseline{std::log(2.0)}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(bounds::p_prl(10, PrlBaseline{0.0}), domain_error);

    SUBCASE("calibrated baseline never beats the learning curve") {
        const double g = bounds::gamma_rate(0.1, 0.11);
        for (double frac : {0.1, 0.5, 1.0}) {
            const PrlBaseline b{frac * g};
            for (std::uint64_t m = 0; m <= 5000; m += 250) {
                CHECK(bounds::p_prl(m, b) <= bounds::p_bl(m, 0.1, 0.11) + 1e-15);
            }
        }
    }
    SUBCASE("nondecreasing and within [0,1]") {
        double prev_bl = -1.0, prev_prl = -1.0;
        for (std::uint64_t m = 0; m <= 2000; m += 100) {
            const double bl = bounds::p_bl(m, 0.1, 0.11);
            const double pr = bounds::p_prl(m, PrlBaseline{1e-3});
            CHECK(bl >= prev_bl);
            CHECK(pr >= prev_prl);
            CHECK((bl >= 0.0 && bl <= 1.0));
            CHECK((pr >= 0.0 && pr <= 1.0));
            prev_bl = bl;
            prev_prl = pr;
        }
    }
}

TEST_CASE("single-validation pass probability") {
    CHECK(bounds::q_obs(0.0, 0.0) == 1.0);
    CHECK(bounds::q_obs(0.1, 0.11) == doctest::Approx(0.812).epsilon(1e-12));
    CHECK(bounds::q_obs(0.5, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bounds::q_obs(0.5, 0.37) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(bounds::q_obs(0.51, 0.1), domain_error);
    CHECK_THROWS_AS(bounds::q_obs(0.1, 0.5), domain_error);

    SUBCASE("monotone in both arguments on a 50x50 grid") {
        for (int i = 0; i < 50; ++i) {
            const double eps = i * (0.5 / 49.0);
            for (int j = 0; j < 50; ++j) {
                const double eta = j * 0.01;
                const double q = bounds::q_obs(eps, eta);
                CHECK(q >= 0.5 - 1e-12);
                CHECK(q <= 1.0 + 1e-12);
                if (i > 0) CHECK(q <= bounds::q_obs((i - 1) * (0.5 / 49.0), eta) + 1e-12);
                if (j > 0) CHECK(q <= bounds::q_obs(eps, (j - 1) * 0.01) + 1e-12);
            }
        }
    }
}

TEST_CASE("false-certification level of the run test") {
    const auto t = tgt(0.1, 0.05);
    CHECK(bounds::delta_cert(t, 0.11, 15) == doctest::Approx(0.0439886).epsilon(1e-3));
    CHECK(bounds::delta_cert(t, 0.11, 1) == doctest::Approx(bounds::q_obs(0.1, 0.11)));

    SUBCASE("decreasing in the run length") {
        double prev = 2.0;
        for (std::uint64_t mh = 1; mh <= 40; ++mh) {
            const double d = bounds::delta_cert(t, 0.11, mh);
            CHECK(d < prev);
            prev = d;
        }
    }
    SUBCASE("log-domain consistency with q_obs") {
        for (double eps : {0.0, 0.05, 0.1, 0.3}) {
            for (double eta : {0.0, 0.11, 0.3}) {
                for (std::uint64_t mh : {1ULL, 2ULL, 15ULL, 200ULL}) {
                    const double d = bounds::delta_cert(tgt(eps, 0.05), eta, mh);
                    const double back = std::exp(std::log(d) / static_cast<double>(mh));
                    if (d > 0.0) {
                        CHECK(std::fabs(back - bounds::q_obs(eps, eta)) < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("minimal run length") {
    CHECK(bounds::min_memory(tgt(0.1, 0.05), 0.11) == 15);
    CHECK(bounds::min_memory(tgt(0.1, 0.05), 0.0) == 29);
    CHECK_THROWS_AS(bounds::min_memory(tgt(0.0, 0.05), 0.0), domain_error);
    CHECK(bounds::min_memory(tgt(0.0, 1.0), 0.0) == 1);

    SUBCASE("returned length is minimal") {
        for (double eps : {0.05, 0.1, 0.2}) {
            for (double delta : {0.01, 0.05, 0.25}) {
                for (double eta : {0.0, 0.11, 0.3}) {
                    const auto t = tgt(eps, delta);
                    const auto k = bounds::min_memory(t, eta);
                    CHECK(bounds::delta_cert(t, eta, k) <= delta);
                    if (k > 1) CHECK(bounds::delta_cert(t, eta, k - 1) > delta);
                }
            }
        }
    }
    SUBCASE("small-parameter scaling law") {
        for (double eps : {0.01, 0.02, 0.05}) {
            for (double eta : {0.0, 0.01, 0.05}) {
                if (eps == 0.0 && eta == 0.0) continue;
                for (double delta : {0.01, 0.05}) {
                    const auto k = bounds::min_memory(tgt(eps, delta), eta);
                    const double approx =
                        -std::log(delta) / ((1.0 - 2.0 * eta) * eps + eta);
                    CHECK(std::fabs(static_cast<double>(k) - approx) <= 0.15 * approx);
                }
            }
        }
    }
}

TEST_CASE("domain type validation") {
    CHECK_THROWS_AS(bounds::validate(tgt(0.5, 0.05)), domain_error);
    CHECK_THROWS_AS(bounds::validate(tgt(-0.1, 0.05)), domain_error);
    CHECK_THROWS_AS(bounds::validate(tgt(0.1, 0.0)), domain_error);
    CHECK_THROWS_AS(bounds::validate(tgt(0.1, 1.5)), domain_error);
    CHECK_THROWS_AS(bounds::validate(bounds::ClassCapacity{0}), domain_error);
    CHECK_THROWS_AS(bounds::validate(bounds::HaltingDesign{tgt(0.1, 0.05), 0, 0.11}),
                    domain_error);
    CHECK_NOTHROW(bounds::validate(bounds::HaltingDesign{tgt(0.1, 0.05), 15, 0.11}));
}
