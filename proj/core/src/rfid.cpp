#include "rfidcap/rfid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "rfidcap/errors.hpp"

namespace rfidcap {

std::uint64_t max_tag_count(double r_id_bits, std::size_t n) {
    if (!(r_id_bits >= 0) || !std::isfinite(r_id_bits))
        throw ValidationError("tag count: rate must be finite and non-negative");
    if (n == 0) throw UsageError("tag count: block length must be positive");
    const double exponent = double(n) * r_id_bits;
    if (exponent >= 64) return UINT64_MAX; // saturate, the count no longer fits
    return std::uint64_t(std::floor(std::exp2(exponent)));
}

namespace {

// Best symmetric identification rate along the frontier, nats.
double equal_id_rate(std::span<const FrontierPoint> frontier) {
    double best = 0;
    for (const auto& p : frontier) {
        const auto& b = p.witness.bounds;
        best = std::max(best, std::min({b.id1, b.id2, b.id_sum / 2}));
    }
    return best;
}

double equal_id_rate(std::span<const GaussianFrontierRow> frontier) {
    double best = 0;
    // The sum bound is implied here, so the symmetric rate is min(id1, id2).
    for (const auto& row : frontier)
        best = std::max(best, std::min(row.bounds.id1, row.bounds.id2));
    return best;
}

template <typename Row>
RfidLimits id_limits(std::span<const Row> frontier, std::size_t n) {
    if (n == 0) throw UsageError("protocol limits: block length must be positive");
    RfidLimits out;
    out.n = n;
    out.per_tag_id_rate = from_nats(equal_id_rate(frontier), LogBase::bits);
    out.max_tags = max_tag_count(out.per_tag_id_rate, n);
    return out;
}

} // namespace

RfidLimits tdma_limit_report(std::span<const FrontierPoint> frontier, std::size_t n) {
    RfidLimits out = id_limits(frontier, n);
    for (const auto& p : frontier)
        out.tdma_uplink_rate =
            std::max(out.tdma_uplink_rate,
                     std::max(p.witness.bounds.data1, p.witness.bounds.data2));
    return out;
}

RfidLimits tdma_limit_report(std::span<const GaussianFrontierRow> frontier,
                             std::size_t n) {
    RfidLimits out = id_limits(frontier, n);
    for (const auto& r : frontier)
        out.tdma_uplink_rate = std::max(out.tdma_uplink_rate,
                                        std::max(r.bounds.data1, r.bounds.data2));
    return out;
}

RfidLimits universal_limit_report(std::span<const FrontierPoint> frontier,
                                  std::size_t n) {
    RfidLimits out = id_limits(frontier, n);
    for (const auto& p : frontier)
        out.universal_uplink_sum_rate =
            std::max(out.universal_uplink_sum_rate, p.witness.bounds.data_sum);
    return out;
}

RfidLimits universal_limit_report(std::span<const GaussianFrontierRow> frontier,
                                  std::size_t n) {
    RfidLimits out = id_limits(frontier, n);
    for (const auto& r : frontier)
        out.universal_uplink_sum_rate =
            std::max(out.universal_uplink_sum_rate, r.bounds.data_sum);
    return out;
}

} // namespace rfidcap
