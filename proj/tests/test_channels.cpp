#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "secpac/channels.hpp"
#include "secpac/errors.hpp"
#include "secpac/rng.hpp"

using namespace secpac;
using channels::ChannelKind;
using channels::ChannelSpec;

namespace {

std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = static_cast<std::uint8_t>(rng.bit());
    return out;
}

ChannelSpec bb84_spec(double f, double p) {
    ChannelSpec spec;
    spec.kind = ChannelKind::Bb84;
    spec.eavesdrop_fraction = f;
    spec.intrinsic_flip = p;
    return spec;
}

}  // namespace

TEST_CASE("label corruption") {
    const auto clean = random_bits(1000000, 42);

    SUBCASE("identity at zero noise") {
        CHECK(channels::rcn_corrupt(clean, 0.0, 7) == clean);
    }
    SUBCASE("empirical flip rate matches eta") {
        const auto noisy = channels::rcn_corrupt(clean, 0.11, 7);
        std::uint64_t flips = 0;
        for (std::size_t i = 0; i < clean.size(); ++i) flips += clean[i] != noisy[i];
        const double rate = static_cast<double>(flips) / static_cast<double>(clean.size());
        // 3 sigma = 3 sqrt(0.11 * 0.89 / 1e6) = 0.00094
        CHECK(std::fabs(rate - 0.11) < 0.001);
    }
    SUBCASE("deterministic per seed") {
        CHECK(channels::rcn_corrupt(clean, 0.3, 99) == channels::rcn_corrupt(clean, 0.3, 99));
        CHECK(channels::rcn_corrupt(clean, 0.3, 99) != channels::rcn_corrupt(clean, 0.3, 98));
    }
    SUBCASE("domain") {
        CHECK_THROWS_AS(channels::rcn_corrupt(clean, 0.5, 7), domain_error);
        CHECK_THROWS_AS(channels::rcn_corrupt(clean, -0.1, 7), domain_error);
    }
}

TEST_CASE("quiet quantum channel sifts half and adds no errors") {
    const auto clean = random_bits(1000000, 5);
    const auto batch = channels::bb84_transmit(clean, bb84_spec(0.0, 0.0), 11);
    CHECK(batch.raw_uses == clean.size());
    CHECK(batch.labels_sent.size() == batch.labels_received.size());
    CHECK(batch.labels_sent.size() <= batch.raw_uses);
    CHECK(std::fabs(batch.sift_fraction - 0.5) < 0.0015);
    CHECK(batch.qber_estimate == 0.0);
    CHECK(batch.labels_sent == batch.labels_received);

    SUBCASE("kept indices map back into the raw sequence") {
        REQUIRE(batch.kept_indices.size() == batch.labels_sent.size());
        CHECK(std::is_sorted(batch.kept_indices.begin(), batch.kept_indices.end()));
        CHECK(batch.kept_indices.back() < batch.raw_uses);
        for (std::size_t i = 0; i < batch.kept_indices.size(); ++i) {
            CHECK(batch.labels_sent[i] == clean[batch.kept_indices[i]]);
        }
    }
}

TEST_CASE("full interception disturbs a quarter of the sifted bits") {
    const auto clean = random_bits(2000000, 6);
    const auto batch = channels::bb84_transmit(clean, bb84_spec(1.0, 0.0), 12);
    CHECK(batch.labels_sent.size() > 900000);
    CHECK(std::fabs(batch.qber_estimate - 0.25) < 0.002);
}

TEST_CASE("error rate composes as p + f(1-2p)/4") {
    for (double p : {0.0, 0.02, 0.05}) {
        for (double f : {0.0, 0.4, 1.0}) {
            const auto clean = random_bits(200000, 17);
            const auto batch = channels::bb84_transmit(
                clean, bb84_spec(f, p), 1000 + static_cast<std::uint64_t>(p * 1e4 + f * 10));
            const double expected = p + f * (1.0 - 2.0 * p) / 4.0;
            const double n = static_cast<double>(batch.labels_sent.size());
            if (expected == 0.0) {
                CHECK(batch.qber_estimate == 0.0);
            } else {
                const double sigma = std::sqrt(expected * (1.0 - expected) / n);
                CHECK(std::fabs(batch.qber_estimate - expected) < 3.0 * sigma);
            }
        }
    }
}

TEST_CASE("transmission is deterministic per seed") {
    const auto clean = random_bits(50000, 8);
    const auto a = channels::bb84_transmit(clean, bb84_spec(0.4, 0.02), 77);
    const auto b = channels::bb84_transmit(clean, bb84_spec(0.4, 0.02), 77);
    CHECK(a.labels_sent == b.labels_sent);
    CHECK(a.labels_received == b.labels_received);
    CHECK(a.kept_indices == b.kept_indices);
    CHECK(a.qber_estimate == b.qber_estimate);
    const auto c = channels::bb84_transmit(clean, bb84_spec(0.4, 0.02), 78);
    CHECK(a.labels_received != c.labels_received);
}

TEST_CASE("channel spec validation") {
    auto spec = bb84_spec(1.2, 0.0);
    CHECK_THROWS_AS(channels::bb84_transmit({1, 0}, spec, 3), domain_error);
    spec = bb84_spec(0.0, -0.1);
    CHECK_THROWS_AS(channels::bb84_transmit({1, 0}, spec, 3), domain_error);
    ChannelSpec rcn;
    rcn.kind = ChannelKind::Rcn;
    CHECK_THROWS_AS(channels::bb84_transmit({1, 0}, rcn, 3), domain_error);
    rcn.eta = 0.7;
    CHECK_THROWS_AS(channels::validate(rcn), domain_error);
    rcn.eta = 0.2;
    rcn.kappa = 0.0;
    CHECK_THROWS_AS(channels::validate(rcn), domain_error);
}

TEST_CASE("holdout estimation") {
    SUBCASE("planted mismatch count is recovered exactly at full disclosure") {
        channels::SiftedBatch batch;
        batch.raw_uses = 1000;
        batch.labels_sent.assign(1000, 0);
        batch.labels_received.assign(1000, 0);
        for (int i = 0; i < 100; ++i) batch.labels_received[i * 10] = 1;
        const auto est = channels::estimate_qber(batch, 1.0, 5);
        CHECK(est.estimate == doctest::Approx(0.1).epsilon(1e-12));
        CHECK(est.holdout_size == 1000);
        CHECK(est.released_positions.empty());
    }
    SUBCASE("half holdout of an intercepted batch") {
        const auto clean = random_bits(400000, 9);
        const auto batch = channels::bb84_transmit(clean, bb84_spec(1.0, 0.0), 13);
        const auto est = channels::estimate_qber(batch, 0.5, 21);
        const double n = static_cast<double>(est.holdout_size);
        CHECK(std::fabs(est.estimate - 0.25) < 3.0 * std::sqrt(0.25 * 0.75 / n));
        CHECK(est.holdout_size + est.released_positions.size() == batch.labels_sent.size());
        CHECK(std::is_sorted(est.released_positions.begin(), est.released_positions.end()));
        CHECK(std::adjacent_find(est.released_positions.begin(),
                                 est.released_positions.end()) ==
              est.released_positions.end());
        CHECK(est.released_positions.back() < batch.labels_sent.size());
    }
    SUBCASE("small fractions still disclose at least one bit") {
        channels::SiftedBatch batch;
        batch.labels_sent.assign(10, 1);
        batch.labels_received.assign(10, 1);
        const auto est = channels::estimate_qber(batch, 0.01, 3);
        CHECK(est.holdout_size == 1);
        CHECK(est.released_positions.size() == 9);
    }
    SUBCASE("errors") {
        channels::SiftedBatch empty;
        CHECK_THROWS_AS(channels::estimate_qber(empty, 0.5, 3), domain_error);
        channels::SiftedBatch tiny;
        tiny.labels_sent.assign(5, 0);
        tiny.labels_received.assign(5, 0);
        CHECK_THROWS_AS(channels::estimate_qber(tiny, 0.0, 3), domain_error);
        CHECK_THROWS_AS(channels::estimate_qber(tiny, 1.5, 3), domain_error);
    }
}

TEST_CASE("noisy labels obey the affine risk identity") {
    // Fixed hypothesis with true risk 1/8 over a uniform 8-point domain:
    // the observed disagreement rate with RCN labels must sit at
    // eta + (1 - 2 eta) * risk.
    const std::uint8_t concept_labels[8] = {0, 1, 1, 0, 1, 0, 0, 1};
    std::uint8_t hypothesis[8];
    std::copy(std::begin(concept_labels), std::end(concept_labels), hypothesis);
    hypothesis[5] ^= 1;  // disagree on exactly one of eight points

    const std::size_t n = 1000000;
    Rng xdraw(31);
    std::vector<std::uint8_t> xs(n);
    std::vector<std::uint8_t> clean(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = static_cast<std::uint8_t>(xdraw.below(8));
        clean[i] = concept_labels[xs[i]];
    }
    const double eta = 0.11;
    const auto noisy = channels::rcn_corrupt(clean, eta, 32);
    std::uint64_t disagreements = 0;
    for (std::size_t i = 0; i < n; ++i) {
        disagreements += hypothesis[xs[i]] != noisy[i];
    }
    const double observed = static_cast<double>(disagreements) / static_cast<double>(n);
    const double expected = eta + (1.0 - 2.0 * eta) * 0.125;  // 0.2075
    const double sigma = std::sqrt(expected * (1.0 - expected) / static_cast<double>(n));
    CHECK(std::fabs(observed - expected) < 3.0 * sigma);
}
