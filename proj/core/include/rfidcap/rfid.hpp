#pragma once

/******************************************************************************
 * RFID protocol limits derived from a computed rate frontier.
 *
 * Two readings of the same region: a TDMA protocol gives each tag the whole
 * uplink in its slot, so its throughput is the best single-user data bound;
 * a universal protocol may use any multiple-access strategy and is limited
 * by the sum bound. The tag population limit 2^{n R_ID} comes from the
 * identification rate at the equal-rate point of the frontier.
 ******************************************************************************/

#include <cstddef>
#include <cstdint>
#include <span>

#include "rfidcap/regions.hpp"

namespace rfidcap {

struct RfidLimits {
    std::uint64_t max_tags = 1;
    double per_tag_id_rate = 0;          // bits per symbol
    double tdma_uplink_rate = 0;         // nats per symbol
    double universal_uplink_sum_rate = 0; // nats per symbol
    std::size_t n = 1;
};

// floor(2^{n r}) distinct addressable tags at identification rate r (bits).
std::uint64_t max_tag_count(double r_id_bits, std::size_t n);

RfidLimits tdma_limit_report(std::span<const FrontierPoint> frontier, std::size_t n);
RfidLimits tdma_limit_report(std::span<const GaussianFrontierRow> frontier,
                             std::size_t n);

RfidLimits universal_limit_report(std::span<const FrontierPoint> frontier,
                                  std::size_t n);
RfidLimits universal_limit_report(std::span<const GaussianFrontierRow> frontier,
                                  std::size_t n);

} // namespace rfidcap
