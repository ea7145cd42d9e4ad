#pragma once

/******************************************************************************
 * Channel models of the cascaded downlink/uplink system.
 *
 * Downlink: one transceiver input X feeds a broadcast channel p(y1,y2|x)
 * toward two mobile units. Each unit then pushes its chosen uplink letter
 * through a per-unit imperfection channel p(qhat|q), and the multiple access
 * channel p(s|qhat1,qhat2) merges both into the transceiver observation S.
 * All channels are memoryless; sequence samplers apply them per symbol.
 ******************************************************************************/

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rfidcap/prob.hpp"
#include "rfidcap/rng.hpp"

namespace rfidcap {

// p(y1, y2 | x), stored row-major as cond[x][y1][y2].
class BccChannel {
public:
    BccChannel(std::size_t x_size, std::size_t y1_size, std::size_t y2_size,
               std::vector<double> cond);

    // Two independent binary symmetric branches with the given crossovers.
    static BccChannel bsc_pair(double crossover1, double crossover2);

    std::size_t x_size() const { return x_; }
    std::size_t y1_size() const { return y1_; }
    std::size_t y2_size() const { return y2_; }

    double prob(std::size_t x, std::size_t y1, std::size_t y2) const {
        return cond_[(x * y1_ + y1) * y2_ + y2];
    }

    // Branch marginals p(y1|x), p(y2|x), row-major [x][y]; these are what the
    // identification-rate bounds see.
    std::vector<double> branch1_cond() const;
    std::vector<double> branch2_cond() const;

    std::pair<Symbol, Symbol> sample(Symbol x, Rng& rng) const;

private:
    std::size_t x_, y1_, y2_;
    std::vector<double> cond_;
    std::vector<CdfSampler> samplers_; // per x, over the (y1,y2) product
};

// p(qhat | q); rectangular alphabets allowed.
class ImperfectionChannel {
public:
    ImperfectionChannel(std::size_t q_size, std::size_t qhat_size,
                        std::vector<double> cond);

    static ImperfectionChannel identity(std::size_t size);
    static ImperfectionChannel bsc(double crossover);

    std::size_t q_size() const { return q_; }
    std::size_t qhat_size() const { return qhat_; }

    double prob(std::size_t q, std::size_t qhat) const { return cond_[q * qhat_ + qhat]; }

    Symbol sample(Symbol q, Rng& rng) const;

private:
    std::size_t q_, qhat_;
    std::vector<double> cond_;
    std::vector<CdfSampler> samplers_;
};

// p(s | qhat1, qhat2), row-major cond[qhat1][qhat2][s].
class MacChannel {
public:
    MacChannel(std::size_t qhat1_size, std::size_t qhat2_size, std::size_t s_size,
               std::vector<double> cond);

    // Binary inputs; output is XOR, erased (mapped to symbol 2) w.p. erasure.
    static MacChannel xor_erasure(double erasure);
    // Noiseless adder: s = qhat1 + qhat2 over {0,1} inputs, s in {0,1,2}.
    static MacChannel adder();

    std::size_t qhat1_size() const { return q1_; }
    std::size_t qhat2_size() const { return q2_; }
    std::size_t s_size() const { return s_; }

    double prob(std::size_t qhat1, std::size_t qhat2, std::size_t s) const {
        return cond_[(qhat1 * q2_ + qhat2) * s_ + s];
    }

    Symbol sample(Symbol qhat1, Symbol qhat2, Rng& rng) const;

private:
    std::size_t q1_, q2_, s_;
    std::vector<double> cond_;
    std::vector<CdfSampler> samplers_;
};

// Power/noise description of the Gaussian cascade: downlink branches with
// noise variances n1 < n2, uplink with variance n3, total transceiver power
// budget, and per-unit power conversion factors alpha1, alpha2.
struct GaussianSystem {
    double power = 0;
    double n1 = 0, n2 = 0, n3 = 0;
    double alpha1 = 0, alpha2 = 0;

    // alpha_i = 1 models lossless conversion and is only legal when
    // explicitly allowed.
    void validate(bool allow_alpha_one = false) const;
};

// Full discrete system bundle used by simulations and frontier search.
struct DiscreteSystem {
    BccChannel bcc;
    ImperfectionChannel imp1, imp2;
    MacChannel mac;

    void validate_dims() const; // imperfection outputs must feed the MAC inputs
};

/*
 * End-to-end uplink joint p(q1,q2,s) induced by independent codeword letters:
 *   p(q1,q2,s) = sum over (qhat1,qhat2) of
 *                p(s|qhat1,qhat2) p(qhat1|q1) p(qhat2|q2) p(q1) p(q2).
 * The data-rate bounds are computed on this joint.
 */
JointPmf induced_mac_joint(const Pmf& p_q1, const Pmf& p_q2,
                           const ImperfectionChannel& imp1,
                           const ImperfectionChannel& imp2, const MacChannel& mac);

// Per-symbol memoryless sequence samplers.
std::pair<std::vector<Symbol>, std::vector<Symbol>>
sample_bcc(const BccChannel& ch, std::span<const Symbol> x_seq, Rng& rng);

std::vector<Symbol> sample_imperfection(const ImperfectionChannel& ch,
                                        std::span<const Symbol> q_seq, Rng& rng);

std::vector<Symbol> sample_mac(const MacChannel& ch, std::span<const Symbol> qhat1_seq,
                               std::span<const Symbol> qhat2_seq, Rng& rng);

// Additive white Gaussian noise links of the continuous system.
struct GaussianBccOutputs {
    std::vector<double> y1, y2;
};
GaussianBccOutputs sample_gaussian_bcc(const GaussianSystem& sys,
                                       std::span<const double> x_seq, Rng& rng);
std::vector<double> sample_gaussian_mac(const GaussianSystem& sys,
                                        std::span<const double> g1_seq,
                                        std::span<const double> g2_seq, Rng& rng);

} // namespace rfidcap
