#include "rfidcap/typicality.hpp"

#include <cmath>
#include <limits>

#include "rfidcap/errors.hpp"

namespace rfidcap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double nlog(double p) { return p < kProbFloor ? kInf : -std::log(p); }

} // namespace

TypicalityChecker::TypicalityChecker(const Pmf& p, double epsilon_nats)
    : entropy_(entropy(p, LogBase::nats)), eps_(epsilon_nats) {
    if (eps_ <= 0) throw UsageError("typicality: epsilon must be positive");
    neg_log_table_.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) neg_log_table_.push_back(nlog(p.at(i)));
}

double TypicalityChecker::neg_log(std::span<const Symbol> seq) const {
    double sum = 0;
    for (Symbol s : seq) {
        if (s >= neg_log_table_.size()) throw UsageError("typicality: symbol out of range");
        sum += neg_log_table_[s];
    }
    return sum;
}

bool TypicalityChecker::is_typical(std::span<const Symbol> seq) const {
    if (seq.empty()) throw UsageError("typicality: empty sequence");
    const double score = neg_log(seq);
    if (!std::isfinite(score)) return false; // zero-probability symbol present
    return std::abs(score / static_cast<double>(seq.size()) - entropy_) <= eps_;
}

JointTypicalityChecker::JointTypicalityChecker(const JointPmf& joint,
                                               double epsilon_nats)
    : dims_(joint.dims()), eps_(epsilon_nats) {
    if (eps_ <= 0) throw UsageError("typicality: epsilon must be positive");
    const std::size_t rank = dims_.size();
    const unsigned mask_end = 1u << rank;
    neg_log_.resize(mask_end);
    entropy_.resize(mask_end, 0.0);
    strides_.resize(mask_end);

    for (unsigned mask = 1; mask < mask_end; ++mask) {
        // marginal probabilities over the included axes
        std::vector<std::size_t> keep;
        for (std::size_t ax = 0; ax < rank; ++ax)
            if (mask & (1u << ax)) keep.push_back(ax);

        std::vector<double> marg;
        if (keep.size() == rank) {
            marg.assign(joint.probs().begin(), joint.probs().end());
        } else if (keep.size() == 1) {
            Pmf m = marginal(joint, keep[0]);
            marg.assign(m.probs().begin(), m.probs().end());
        } else {
            JointPmf m = marginal(joint, keep[0], keep[1]);
            marg.assign(m.probs().begin(), m.probs().end());
        }

        double h = 0;
        std::vector<double> table(marg.size());
        for (std::size_t i = 0; i < marg.size(); ++i) {
            table[i] = nlog(marg[i]);
            if (marg[i] >= kProbFloor) h -= marg[i] * std::log(marg[i]);
        }
        neg_log_[mask] = std::move(table);
        entropy_[mask] = h;

        // row-major strides over the included dims, 0 for excluded axes
        std::vector<std::size_t> stride(rank, 0);
        std::size_t acc = 1;
        for (std::size_t i = keep.size(); i-- > 0;) {
            stride[keep[i]] = acc;
            acc *= dims_[keep[i]];
        }
        strides_[mask] = std::move(stride);
    }
}

double JointTypicalityChecker::subset_neg_log(
    unsigned mask, std::span<const std::span<const Symbol>> seqs) const {
    const auto& table = neg_log_[mask];
    const auto& stride = strides_[mask];
    const std::size_t n = seqs[0].size();
    double sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t idx = 0;
        for (std::size_t ax = 0; ax < dims_.size(); ++ax)
            if (mask & (1u << ax)) idx += stride[ax] * seqs[ax][k];
        sum += table[idx];
        if (!std::isfinite(sum)) return kInf;
    }
    return sum;
}

bool JointTypicalityChecker::is_typical(
    std::span<const std::span<const Symbol>> seqs) const {
    if (seqs.size() != dims_.size())
        throw UsageError("typicality: sequence tuple has wrong arity");
    const std::size_t n = seqs[0].size();
    if (n == 0) throw UsageError("typicality: empty sequence");
    for (std::size_t ax = 0; ax < seqs.size(); ++ax) {
        if (seqs[ax].size() != n) throw UsageError("typicality: length mismatch");
        for (Symbol s : seqs[ax])
            if (s >= dims_[ax]) throw UsageError("typicality: symbol out of range");
    }

    // every non-empty axis subset must sit within eps of its entropy
    const unsigned mask_end = 1u << dims_.size();
    const double dn = static_cast<double>(n);
    for (unsigned mask = 1; mask < mask_end; ++mask) {
        const double score = subset_neg_log(mask, seqs);
        if (!std::isfinite(score)) return false;
        if (std::abs(score / dn - entropy_[mask]) > eps_) return false;
    }
    return true;
}

bool JointTypicalityChecker::is_typical(std::span<const Symbol> a,
                                        std::span<const Symbol> b) const {
    const std::span<const Symbol> seqs[2] = {a, b};
    return is_typical(std::span<const std::span<const Symbol>>(seqs, 2));
}

bool JointTypicalityChecker::is_typical(std::span<const Symbol> a,
                                        std::span<const Symbol> b,
                                        std::span<const Symbol> c) const {
    const std::span<const Symbol> seqs[3] = {a, b, c};
    return is_typical(std::span<const std::span<const Symbol>>(seqs, 3));
}

bool is_typical(const Pmf& p, std::span<const Symbol> seq, double epsilon,
                LogBase base) {
    return TypicalityChecker(p, to_nats(epsilon, base)).is_typical(seq);
}

bool is_jointly_typical(const JointPmf& joint,
                        std::span<const std::span<const Symbol>> seqs, double epsilon,
                        LogBase base) {
    return JointTypicalityChecker(joint, to_nats(epsilon, base)).is_typical(seqs);
}

} // namespace rfidcap
