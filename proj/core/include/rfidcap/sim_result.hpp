#pragma once

#include <cstdint>

namespace rfidcap {

// 95% Wilson score interval for a binomial proportion.
struct WilsonInterval {
    double lo = 0, hi = 1;
};
WilsonInterval wilson_ci(std::uint64_t successes, std::uint64_t total);

// One estimated error probability: errors out of total Bernoulli trials.
struct RateEstimate {
    std::uint64_t errors = 0;
    std::uint64_t total = 0;
    double hat = 0;
    WilsonInterval ci;

    static RateEstimate from_counts(std::uint64_t errors, std::uint64_t total);
};

/*
 * Monte Carlo error-rate estimates for one (system, rates, n) configuration.
 * bcc counts a trial as an error when either unit fails to recover its
 * downlink message. mac is conditioned on downlink success (total = number
 * of bcc successes), matching the composition
 *    lambda_overall = 1 - (1 - lambda_bcc)(1 - lambda_mac).
 * Event counters break errors down by cause: encoder gave up (no typical
 * codeword / power violation), a decoder returned the no-decision value 0,
 * or a decoder returned a wrong message index.
 */
struct SimResult {
    std::uint64_t trials = 0;
    RateEstimate bcc, mac, overall;
    std::uint64_t encode_failures = 0;
    std::uint64_t miss_type = 0;
    std::uint64_t wrong_message = 0;
};

} // namespace rfidcap
