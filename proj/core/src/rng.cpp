#include "rfidcap/rng.hpp"

#include <cmath>

#include "rfidcap/errors.hpp"
#include "rfidcap/prob.hpp"

namespace rfidcap {

CdfSampler::CdfSampler(std::span<const double> probs) {
    if (probs.empty()) throw ValidationError("sampler: empty distribution");
    cdf_.reserve(probs.size());
    double acc = 0;
    for (double p : probs) {
        if (p < 0) throw ValidationError("sampler: negative probability");
        acc += p;
        cdf_.push_back(acc);
    }
    if (std::abs(acc - 1.0) > kMassTolerance)
        throw ValidationError("sampler: mass not 1 within tolerance");
    cdf_.back() = 1.0; // absorb rounding so uniform01 always lands
}

std::size_t CdfSampler::operator()(Rng& rng) const {
    const double u = rng.uniform01();
    // inverse CDF by linear scan; alphabets here are tiny
    for (std::size_t i = 0; i + 1 < cdf_.size(); ++i)
        if (u < cdf_[i]) return i;
    return cdf_.size() - 1;
}

} // namespace rfidcap
