#pragma once

/******************************************************************************
 * Weak (entropy) typicality for sequences over finite alphabets.
 *
 * A tuple of sequences is jointly epsilon-typical iff for EVERY non-empty
 * subset of axes the empirical per-symbol neg-log-likelihood under the
 * corresponding marginal sits within epsilon of that marginal's entropy.
 * Epsilon and all scores are in nats.
 ******************************************************************************/

#include <cstddef>
#include <span>
#include <vector>

#include "rfidcap/prob.hpp"

namespace rfidcap {

// Single-axis checker.
class TypicalityChecker {
public:
    TypicalityChecker(const Pmf& p, double epsilon_nats);

    bool is_typical(std::span<const Symbol> seq) const;
    // Total -ln p(seq); +inf when a zero-probability letter appears.
    double neg_log(std::span<const Symbol> seq) const;
    double entropy_nats() const { return entropy_; }
    double epsilon() const { return eps_; }

private:
    std::vector<double> neg_log_table_;
    double entropy_;
    double eps_;
};

// Joint checker over a rank-2 or rank-3 pmf. Subsets of axes are addressed by
// bitmask (bit i set = axis i included); tables and entropies for all
// non-empty masks are precomputed at construction.
class JointTypicalityChecker {
public:
    JointTypicalityChecker(const JointPmf& joint, double epsilon_nats);

    std::size_t rank() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    double epsilon() const { return eps_; }

    bool is_typical(std::span<const Symbol> a, std::span<const Symbol> b) const;
    bool is_typical(std::span<const Symbol> a, std::span<const Symbol> b,
                    std::span<const Symbol> c) const;
    bool is_typical(std::span<const std::span<const Symbol>> seqs) const;

    // Per-subset pieces, for callers that reuse partial scores across many
    // candidates (list decoders score one axis against a fixed remainder).
    double subset_entropy(unsigned mask) const { return entropy_[mask]; }
    double subset_neg_log(unsigned mask,
                          std::span<const std::span<const Symbol>> seqs) const;

private:
    std::vector<std::size_t> dims_;
    double eps_;
    // Indexed by axis-subset mask; entry 0 unused.
    std::vector<std::vector<double>> neg_log_;
    std::vector<double> entropy_;
    // strides_[mask][axis] for flattening subset tuples; 0 for excluded axes.
    std::vector<std::vector<std::size_t>> strides_;
};

// Convenience one-shot forms; epsilon is interpreted in the given base.
bool is_typical(const Pmf& p, std::span<const Symbol> seq, double epsilon,
                LogBase base = LogBase::nats);
bool is_jointly_typical(const JointPmf& joint,
                        std::span<const std::span<const Symbol>> seqs, double epsilon,
                        LogBase base = LogBase::nats);

} // namespace rfidcap
