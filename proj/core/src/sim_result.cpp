#include "rfidcap/sim_result.hpp"

#include <algorithm>
#include <cmath>

namespace rfidcap {

WilsonInterval wilson_ci(std::uint64_t successes, std::uint64_t total) {
    if (total == 0) return {0.0, 1.0}; // no data, no information
    constexpr double z = 1.959963984540054; // two-sided 95%
    const double n = double(total);
    const double phat = double(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        (z / denom) * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

RateEstimate RateEstimate::from_counts(std::uint64_t errors, std::uint64_t total) {
    RateEstimate e;
    e.errors = errors;
    e.total = total;
    e.hat = total == 0 ? 0.0 : double(errors) / double(total);
    e.ci = wilson_ci(errors, total);
    return e;
}

} // namespace rfidcap
