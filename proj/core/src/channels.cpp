#include "rfidcap/channels.hpp"

#include <cmath>
#include <string>

#include "rfidcap/errors.hpp"

namespace rfidcap {

namespace {

constexpr std::size_t kMaxAlphabet = 256; // Symbol is one byte

void check_alphabet(std::size_t size, const char* what) {
    if (size == 0) throw ValidationError(std::string(what) + ": empty alphabet");
    if (size > kMaxAlphabet)
        throw ValidationError(std::string(what) + ": alphabet larger than 256");
}

void check_rows(const std::vector<double>& cond, std::size_t rows, std::size_t row_len,
                const char* what) {
    if (cond.size() != rows * row_len)
        throw ValidationError(std::string(what) + ": tensor has " +
                              std::to_string(cond.size()) + " entries, needs " +
                              std::to_string(rows * row_len));
    for (std::size_t r = 0; r < rows; ++r) {
        double sum = 0;
        for (std::size_t c = 0; c < row_len; ++c) {
            const double p = cond[r * row_len + c];
            if (p < 0 || !std::isfinite(p))
                throw ValidationError(std::string(what) + ": negative entry in row " +
                                      std::to_string(r));
            sum += p;
        }
        if (std::abs(sum - 1.0) > kMassTolerance)
            throw ValidationError(std::string(what) + ": row " + std::to_string(r) +
                                  " sums to " + std::to_string(sum));
    }
}

void check_crossover(double c, const char* what) {
    if (!(c >= 0 && c <= 1))
        throw ValidationError(std::string(what) + ": crossover must be in [0,1]");
}

std::vector<CdfSampler> row_samplers(const std::vector<double>& cond, std::size_t rows,
                                     std::size_t row_len) {
    std::vector<CdfSampler> out;
    out.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r)
        out.emplace_back(std::span<const double>(cond.data() + r * row_len, row_len));
    return out;
}

} // namespace

BccChannel::BccChannel(std::size_t x_size, std::size_t y1_size, std::size_t y2_size,
                       std::vector<double> cond)
    : x_(x_size), y1_(y1_size), y2_(y2_size), cond_(std::move(cond)) {
    check_alphabet(x_, "bcc input");
    check_alphabet(y1_, "bcc output 1");
    check_alphabet(y2_, "bcc output 2");
    check_rows(cond_, x_, y1_ * y2_, "bcc");
    samplers_ = row_samplers(cond_, x_, y1_ * y2_);
}

BccChannel BccChannel::bsc_pair(double crossover1, double crossover2) {
    check_crossover(crossover1, "bcc branch 1");
    check_crossover(crossover2, "bcc branch 2");
    std::vector<double> cond(8);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y1 = 0; y1 < 2; ++y1)
            for (std::size_t y2 = 0; y2 < 2; ++y2) {
                const double p1 = (y1 == x) ? 1 - crossover1 : crossover1;
                const double p2 = (y2 == x) ? 1 - crossover2 : crossover2;
                cond[(x * 2 + y1) * 2 + y2] = p1 * p2;
            }
    return BccChannel(2, 2, 2, std::move(cond));
}

std::vector<double> BccChannel::branch1_cond() const {
    std::vector<double> out(x_ * y1_, 0.0);
    for (std::size_t x = 0; x < x_; ++x)
        for (std::size_t y1 = 0; y1 < y1_; ++y1)
            for (std::size_t y2 = 0; y2 < y2_; ++y2)
                out[x * y1_ + y1] += prob(x, y1, y2);
    return out;
}

std::vector<double> BccChannel::branch2_cond() const {
    std::vector<double> out(x_ * y2_, 0.0);
    for (std::size_t x = 0; x < x_; ++x)
        for (std::size_t y1 = 0; y1 < y1_; ++y1)
            for (std::size_t y2 = 0; y2 < y2_; ++y2)
                out[x * y2_ + y2] += prob(x, y1, y2);
    return out;
}

std::pair<Symbol, Symbol> BccChannel::sample(Symbol x, Rng& rng) const {
    if (x >= x_) throw UsageError("bcc: input symbol out of range");
    const std::size_t flat = samplers_[x](rng);
    return {static_cast<Symbol>(flat / y2_), static_cast<Symbol>(flat % y2_)};
}

ImperfectionChannel::ImperfectionChannel(std::size_t q_size, std::size_t qhat_size,
                                         std::vector<double> cond)
    : q_(q_size), qhat_(qhat_size), cond_(std::move(cond)) {
    check_alphabet(q_, "imperfection input");
    check_alphabet(qhat_, "imperfection output");
    check_rows(cond_, q_, qhat_, "imperfection");
    samplers_ = row_samplers(cond_, q_, qhat_);
}

ImperfectionChannel ImperfectionChannel::identity(std::size_t size) {
    std::vector<double> cond(size * size, 0.0);
    for (std::size_t i = 0; i < size; ++i) cond[i * size + i] = 1.0;
    return ImperfectionChannel(size, size, std::move(cond));
}

ImperfectionChannel ImperfectionChannel::bsc(double crossover) {
    check_crossover(crossover, "imperfection");
    return ImperfectionChannel(
        2, 2, {1 - crossover, crossover, crossover, 1 - crossover});
}

Symbol ImperfectionChannel::sample(Symbol q, Rng& rng) const {
    if (q >= q_) throw UsageError("imperfection: input symbol out of range");
    return static_cast<Symbol>(samplers_[q](rng));
}

MacChannel::MacChannel(std::size_t qhat1_size, std::size_t qhat2_size,
                       std::size_t s_size, std::vector<double> cond)
    : q1_(qhat1_size), q2_(qhat2_size), s_(s_size), cond_(std::move(cond)) {
    check_alphabet(q1_, "mac input 1");
    check_alphabet(q2_, "mac input 2");
    check_alphabet(s_, "mac output");
    check_rows(cond_, q1_ * q2_, s_, "mac");
    samplers_ = row_samplers(cond_, q1_ * q2_, s_);
}

MacChannel MacChannel::xor_erasure(double erasure) {
    if (!(erasure >= 0 && erasure <= 1))
        throw ValidationError("mac: erasure must be in [0,1]");
    std::vector<double> cond(4 * 3, 0.0);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            cond[(a * 2 + b) * 3 + (a ^ b)] = 1 - erasure;
            cond[(a * 2 + b) * 3 + 2] = erasure;
        }
    return MacChannel(2, 2, 3, std::move(cond));
}

MacChannel MacChannel::adder() {
    std::vector<double> cond(4 * 3, 0.0);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) cond[(a * 2 + b) * 3 + (a + b)] = 1.0;
    return MacChannel(2, 2, 3, std::move(cond));
}

Symbol MacChannel::sample(Symbol qhat1, Symbol qhat2, Rng& rng) const {
    if (qhat1 >= q1_ || qhat2 >= q2_)
        throw UsageError("mac: input symbol out of range");
    return static_cast<Symbol>(samplers_[qhat1 * q2_ + qhat2](rng));
}

void GaussianSystem::validate(bool allow_alpha_one) const {
    if (!(power > 0)) throw ValidationError("gaussian system: power must be positive");
    if (!(n1 > 0) || !(n2 > 0) || !(n3 > 0))
        throw ValidationError("gaussian system: noise variances must be positive");
    if (!(n1 < n2))
        throw ValidationError("gaussian system: requires n1 < n2 (branch 1 is the "
                              "less noisy one)");
    const double cap = allow_alpha_one ? 1.0 + 1e-12 : 1.0;
    if (!(alpha1 >= 0) || !(alpha2 >= 0) ||
        (allow_alpha_one ? (alpha1 > cap || alpha2 > cap)
                         : (alpha1 >= 1.0 || alpha2 >= 1.0)))
        throw ValidationError(
            allow_alpha_one
                ? "gaussian system: alpha1, alpha2 must be in [0,1]"
                : "gaussian system: alpha1, alpha2 must be in [0,1); pass the "
                  "alpha-one override to allow 1");
}

void DiscreteSystem::validate_dims() const {
    if (imp1.qhat_size() != mac.qhat1_size())
        throw UsageError("system: imperfection 1 output alphabet (" +
                         std::to_string(imp1.qhat_size()) +
                         ") does not feed mac input 1 (" +
                         std::to_string(mac.qhat1_size()) + ")");
    if (imp2.qhat_size() != mac.qhat2_size())
        throw UsageError("system: imperfection 2 output alphabet (" +
                         std::to_string(imp2.qhat_size()) +
                         ") does not feed mac input 2 (" +
                         std::to_string(mac.qhat2_size()) + ")");
}

JointPmf induced_mac_joint(const Pmf& p_q1, const Pmf& p_q2,
                           const ImperfectionChannel& imp1,
                           const ImperfectionChannel& imp2, const MacChannel& mac) {
    if (p_q1.size() != imp1.q_size() || p_q2.size() != imp2.q_size())
        throw UsageError("induced joint: input pmf does not match imperfection input");
    if (imp1.qhat_size() != mac.qhat1_size() || imp2.qhat_size() != mac.qhat2_size())
        throw UsageError("induced joint: imperfection output does not match mac input");

    const std::size_t nq1 = p_q1.size(), nq2 = p_q2.size(), ns = mac.s_size();
    std::vector<double> probs(nq1 * nq2 * ns, 0.0);
    for (std::size_t q1 = 0; q1 < nq1; ++q1)
        for (std::size_t q2 = 0; q2 < nq2; ++q2) {
            const double pq = p_q1.at(q1) * p_q2.at(q2);
            if (pq == 0) continue;
            for (std::size_t h1 = 0; h1 < imp1.qhat_size(); ++h1) {
                const double w1 = imp1.prob(q1, h1);
                if (w1 == 0) continue;
                for (std::size_t h2 = 0; h2 < imp2.qhat_size(); ++h2) {
                    const double w = pq * w1 * imp2.prob(q2, h2);
                    if (w == 0) continue;
                    for (std::size_t s = 0; s < ns; ++s)
                        probs[(q1 * nq2 + q2) * ns + s] += w * mac.prob(h1, h2, s);
                }
            }
        }
    return JointPmf({nq1, nq2, ns}, std::move(probs));
}

std::pair<std::vector<Symbol>, std::vector<Symbol>>
sample_bcc(const BccChannel& ch, std::span<const Symbol> x_seq, Rng& rng) {
    std::vector<Symbol> y1(x_seq.size()), y2(x_seq.size());
    for (std::size_t k = 0; k < x_seq.size(); ++k) {
        const auto [a, b] = ch.sample(x_seq[k], rng);
        y1[k] = a;
        y2[k] = b;
    }
    return {std::move(y1), std::move(y2)};
}

std::vector<Symbol> sample_imperfection(const ImperfectionChannel& ch,
                                        std::span<const Symbol> q_seq, Rng& rng) {
    std::vector<Symbol> out(q_seq.size());
    for (std::size_t k = 0; k < q_seq.size(); ++k) out[k] = ch.sample(q_seq[k], rng);
    return out;
}

std::vector<Symbol> sample_mac(const MacChannel& ch, std::span<const Symbol> qhat1_seq,
                               std::span<const Symbol> qhat2_seq, Rng& rng) {
    if (qhat1_seq.size() != qhat2_seq.size())
        throw UsageError("mac sampling: input length mismatch");
    std::vector<Symbol> out(qhat1_seq.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = ch.sample(qhat1_seq[k], qhat2_seq[k], rng);
    return out;
}

GaussianBccOutputs sample_gaussian_bcc(const GaussianSystem& sys,
                                       std::span<const double> x_seq, Rng& rng) {
    GaussianBccOutputs out;
    out.y1.resize(x_seq.size());
    out.y2.resize(x_seq.size());
    const double s1 = std::sqrt(sys.n1), s2 = std::sqrt(sys.n2);
    for (std::size_t k = 0; k < x_seq.size(); ++k) {
        out.y1[k] = x_seq[k] + rng.gaussian(0.0, s1);
        out.y2[k] = x_seq[k] + rng.gaussian(0.0, s2);
    }
    return out;
}

std::vector<double> sample_gaussian_mac(const GaussianSystem& sys,
                                        std::span<const double> g1_seq,
                                        std::span<const double> g2_seq, Rng& rng) {
    if (g1_seq.size() != g2_seq.size())
        throw UsageError("mac sampling: input length mismatch");
    std::vector<double> out(g1_seq.size());
    const double s3 = std::sqrt(sys.n3);
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = g1_seq[k] + g2_seq[k] + rng.gaussian(0.0, s3);
    return out;
}

} // namespace rfidcap
