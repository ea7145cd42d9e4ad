#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "rfidcap/channels.hpp"
#include "rfidcap/errors.hpp"
#include "rfidcap/prob.hpp"
#include "rfidcap/regions.hpp"
#include "rfidcap/rng.hpp"
#include "rfidcap/sim_discrete.hpp"
#include "rfidcap/sim_gaussian.hpp"
#include "rfidcap/sim_result.hpp"

using namespace rfidcap;

namespace {

JointPmf mixing_witness() {
    return JointPmf({2, 2, 2}, {0.25, 0.0, 0.125, 0.125, 0.125, 0.125, 0.0, 0.25});
}

DiscreteSystem noiseless_xor_system() {
    return DiscreteSystem{BccChannel::bsc_pair(0.0, 0.0),
                          ImperfectionChannel::identity(2),
                          ImperfectionChannel::identity(2),
                          MacChannel::xor_erasure(0.3)};
}

// Slack small enough to leave room between rate and the ~0.131 nat id bound.
const double kCellEps = 0.05;

} // namespace

TEST_CASE("wilson interval hand values") {
    const WilsonInterval w = wilson_ci(5, 100);
    CHECK(std::abs(w.lo - 0.0215436791543680) < 1e-12);
    CHECK(std::abs(w.hi - 0.1117504692319191) < 1e-12);

    const WilsonInterval none = wilson_ci(0, 0); // no data, no information
    CHECK(none.lo == 0.0);
    CHECK(none.hi == 1.0);

    CHECK(wilson_ci(0, 50).lo == 0.0);
    CHECK(wilson_ci(50, 50).hi == 1.0);
    CHECK(wilson_ci(25, 50).lo > wilson_ci(10, 50).lo);

    const RateEstimate e = RateEstimate::from_counts(5, 100);
    CHECK(e.hat == 0.05);
    CHECK(e.ci.lo == w.lo);
}

TEST_CASE("message counts integerize the exponential rate") {
    CHECK(message_count(0.0, 64) == 1);
    CHECK(message_count(kLn2 / 64, 64) == 2);  // 2^(64/64)
    CHECK(message_count(kLn2 / 64, 128) == 4); // 2^(128/64)
    CHECK(message_count(kLn2 / 64, 256) == 16);
    CHECK(message_count(std::log(3.0) / 100, 100) == 3);
    CHECK_THROWS_AS(message_count(1.0, 64), InfeasibleError); // count overflows
}

TEST_CASE("codebook cells partition the typical list") {
    Rng rng(19);
    const DiscreteSystem sys = noiseless_xor_system();
    // four messages per unit at n=128
    const double r = 2 * kLn2 / 128;
    const auto cb = build_discrete_bcc_codebook(mixing_witness(), sys.bcc, r, r,
                                                128, kCellEps, rng);
    REQUIRE(cb.w1_count == 4);
    REQUIRE(cb.w2_count == 4);
    for (std::size_t w = 1; w <= cb.w1_count; ++w) {
        const auto [first, last] = cb.u_cell_range(w);
        REQUIRE(first <= last);
        CHECK(cb.cell_of_u(first) == w);
        CHECK(cb.cell_of_u(last) == w);
        if (w > 1) {
            const auto [pf, pl] = cb.u_cell_range(w - 1);
            CHECK(pl + 1 == first); // contiguous, no gaps
        }
    }
    const auto [f1, l1] = cb.u_cell_range(1);
    CHECK(f1 == 1);
    const auto [fl, ll] = cb.u_cell_range(cb.w1_count);
    CHECK(ll == cb.u_list_size); // remainder folds into the last cell
}

TEST_CASE("infeasible rates are rejected up front") {
    Rng rng(23);
    const DiscreteSystem sys = noiseless_xor_system();
    // id bound under this witness is ~0.13 nats; demand more than it
    CHECK_THROWS_AS(build_discrete_bcc_codebook(mixing_witness(), sys.bcc, 0.2,
                                                0.01, 64, 0.05, rng),
                    InfeasibleError);
}

TEST_CASE("discrete estimate composes its tallies exactly") {
    const DiscreteSystem sys = noiseless_xor_system();
    DiscreteSimConfig cfg;
    cfg.rates = RateQuadruple{kLn2 / 64, kLn2 / 64, kLn2 / 64, kLn2 / 64};
    cfg.n = 128;
    cfg.trials = 150;
    cfg.epsilon = 0.105 * kLn2;
    Rng rng(101);
    const SimResult res = estimate_error_rates_discrete(
        sys, mixing_witness(), Pmf::uniform(2), Pmf::uniform(2), cfg, rng);

    CHECK(res.trials == 150);
    CHECK(res.bcc.total == 150);
    CHECK(res.mac.total == 150 - res.bcc.errors);
    CHECK(res.overall.errors == res.bcc.errors + res.mac.errors);
    CHECK(res.overall.total == 150);
    if (res.mac.total > 0) {
        const double composed =
            1.0 - (1.0 - res.bcc.hat) * (1.0 - res.mac.hat);
        CHECK(std::abs(res.overall.hat - composed) < 1e-12);
    }
    CHECK(res.encode_failures + res.miss_type + res.wrong_message >=
          res.overall.errors); // every error is attributed to some event
    // this configuration should decode most trials at n=128
    CHECK(res.overall.hat < 0.5);
}

TEST_CASE("worker threads do not change the counts") {
    const DiscreteSystem sys = noiseless_xor_system();
    DiscreteSimConfig cfg;
    cfg.rates = RateQuadruple{kLn2 / 64, kLn2 / 64, kLn2 / 64, kLn2 / 64};
    cfg.n = 64;
    cfg.trials = 80;
    cfg.epsilon = 0.105 * kLn2;

    Rng a(7);
    const SimResult one = estimate_error_rates_discrete(
        sys, mixing_witness(), Pmf::uniform(2), Pmf::uniform(2), cfg, a);
    cfg.threads = 4;
    Rng b(7);
    const SimResult four = estimate_error_rates_discrete(
        sys, mixing_witness(), Pmf::uniform(2), Pmf::uniform(2), cfg, b);
    CHECK(one.bcc.errors == four.bcc.errors);
    CHECK(one.mac.errors == four.mac.errors);
    CHECK(one.encode_failures == four.encode_failures);
}

TEST_CASE("estimate validates trials and rates") {
    const DiscreteSystem sys = noiseless_xor_system();
    DiscreteSimConfig cfg;
    cfg.rates = RateQuadruple{0.01, 0.01, 0.01, 0.01};
    cfg.n = 64;
    cfg.trials = 0;
    cfg.epsilon = 0.07;
    Rng rng(1);
    CHECK_THROWS_WITH_AS(
        estimate_error_rates_discrete(sys, mixing_witness(), Pmf::uniform(2),
                                      Pmf::uniform(2), cfg, rng),
        doctest::Contains("trials"), UsageError);
}

TEST_CASE("ml decoding runs and stays sane") {
    const DiscreteSystem sys{BccChannel::bsc_pair(0.02, 0.02),
                             ImperfectionChannel::identity(2),
                             ImperfectionChannel::identity(2),
                             MacChannel::xor_erasure(0.3)};
    DiscreteSimConfig cfg;
    cfg.rates = RateQuadruple{kLn2 / 64, kLn2 / 64, kLn2 / 64, kLn2 / 64};
    cfg.n = 128;
    cfg.trials = 100;
    cfg.epsilon = 0.105 * kLn2;
    cfg.ml_decoder = true;
    Rng rng(3);
    const SimResult res = estimate_error_rates_discrete(
        sys, mixing_witness(), Pmf::uniform(2), Pmf::uniform(2), cfg, rng);
    CHECK(res.trials == 100);
    CHECK(res.overall.hat < 0.6);
}

TEST_CASE("gaussian codebook variances match their design") {
    const GaussianSystem sys{10, 1, 2, 5, 0.9, 0.9};
    Rng rng(41);
    const RateQuadruple r{0, 0, 0, 0}; // single message everywhere
    const auto cb = build_gaussian_codebook(sys, 0.5, r, 8192, 0.1, rng);
    CHECK(cb.sigma1_sq == doctest::Approx(0.5 * 10 - 0.1));
    CHECK(cb.sigma2_sq == doctest::Approx(0.5 * 10 - 0.1));
    CHECK(cb.q1_var == doctest::Approx(0.9 * 0.5 * 10 - 0.2));

    const auto power = [](std::span<const double> row) {
        double acc = 0;
        for (const double v : row) acc += v * v;
        return acc / double(row.size());
    };
    CHECK(std::abs(power(cb.x1_row(1)) - cb.sigma1_sq) < 0.05 * cb.sigma1_sq);
    CHECK(std::abs(power(cb.x2_row(1)) - cb.sigma2_sq) < 0.05 * cb.sigma2_sq);
    CHECK(std::abs(power(cb.q1_row(1, 1)) - cb.q1_var) < 0.05 * cb.q1_var);
}

TEST_CASE("power backoff must leave room for codewords") {
    const GaussianSystem sys{10, 1, 2, 5, 0.9, 0.9};
    Rng rng(2);
    CHECK_THROWS_AS(
        build_gaussian_codebook(sys, 0.5, RateQuadruple{}, 64, 6.0, rng),
        InfeasibleError); // 0.5 * 10 - 6 < 0
}

TEST_CASE("gaussian estimate composes and stays reproducible") {
    const GaussianSystem sys{10, 1, 2, 5, 0.9, 0.9};
    GaussianSimConfig cfg;
    cfg.alpha = 0.5;
    cfg.rates = RateQuadruple{kLn2 / 128, kLn2 / 128, kLn2 / 128, kLn2 / 128};
    cfg.n = 256;
    cfg.trials = 120;
    cfg.epsilon = 0.2;
    cfg.power_backoff = 1.0;

    Rng a(55), b(55);
    const SimResult r1 = estimate_error_rates_gaussian(sys, cfg, a);
    const SimResult r2 = estimate_error_rates_gaussian(sys, cfg, b);
    CHECK(r1.bcc.errors == r2.bcc.errors);
    CHECK(r1.mac.errors == r2.mac.errors);

    CHECK(r1.mac.total == r1.trials - r1.bcc.errors);
    CHECK(r1.overall.errors == r1.bcc.errors + r1.mac.errors);
    CHECK(r1.overall.hat < 0.6); // modest rates at n=256 mostly decode
}

TEST_CASE("successive decoding recovers both messages on a clean channel") {
    // tiny noise, one candidate per unit: the decode chain must succeed
    const GaussianSystem sys{10, 0.01, 0.02, 5, 0.9, 0.9};
    Rng rng(9);
    const auto cb =
        build_gaussian_codebook(sys, 0.5, RateQuadruple{}, 512, 0.05, rng);
    bool violated = false;
    const auto x = gaussian_bcc_encode(cb, 1, 1, &violated);
    REQUIRE_FALSE(violated);
    const auto out = sample_gaussian_bcc(sys, x, rng);
    std::size_t w2_inner = 0;
    CHECK(gaussian_bcc_decode_unit2(cb, sys, out.y2, 0.2) == 1);
    CHECK(gaussian_bcc_decode_unit1(cb, sys, out.y1, 0.2, &w2_inner) == 1);
    CHECK(w2_inner == 1);
}
