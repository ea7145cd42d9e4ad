#pragma once

/******************************************************************************
 * Random-coding construction for the Gaussian cascade.
 *
 * Downlink: superposition coding. x(w1,w2) = x1(w1) + x2(w2) with codebooks
 * drawn i.i.d. N(0, alpha P - beta) and N(0, (1-alpha) P - beta), beta a
 * power backoff keeping empirical powers under the constraint at finite n.
 * Unit 2 decodes w2 directly against y2. Unit 1 (the less noisy branch)
 * successively decodes: first w2 against y1, subtracts x2(w2_hat), then
 * decodes w1 from the residual. Decisions use second-moment typicality.
 *
 * Uplink: nested Gaussian codebooks N(0, alpha_i * share - 2 beta); the
 * transceiver scans message pairs against s = q1 + q2 + noise.
 ******************************************************************************/

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rfidcap/channels.hpp"
#include "rfidcap/regions.hpp"
#include "rfidcap/rng.hpp"
#include "rfidcap/sim_result.hpp"

namespace rfidcap {

// Reference second moments of a jointly Gaussian zero-mean tuple (up to 3).
struct SecondMoments {
    std::size_t rank = 0;
    double m[3][3] = {};
};

/*
 * Empirical second-moment typicality: every power |mean(a_i^2) - m[i][i]|
 * must be within epsilon * m[i][i], and every cross moment within
 * epsilon * sqrt(m[i][i] m[j][j]). The relative scaling lets one epsilon
 * govern all magnitudes.
 */
bool gaussian_typicality(std::span<const double> a, const SecondMoments& ref,
                         double epsilon);
bool gaussian_typicality(std::span<const double> a, std::span<const double> b,
                         const SecondMoments& ref, double epsilon);
bool gaussian_typicality(std::span<const double> a, std::span<const double> b,
                         std::span<const double> c, const SecondMoments& ref,
                         double epsilon);

struct GaussianSuperpositionCodebook {
    std::size_t n = 0;
    double alpha = 0;
    double sigma1_sq = 0, sigma2_sq = 0; // downlink codebook variances
    double q1_var = 0, q2_var = 0;       // uplink codebook variances
    double power_backoff = 0;

    std::size_t w1_count = 0, w2_count = 0;
    std::size_t m1_count = 0, m2_count = 0;

    std::vector<double> x1, x2;     // [w][k]
    std::vector<double> q1, q2;     // [w][m][k], nested books

    std::span<const double> x1_row(std::size_t w1) const {
        return {x1.data() + (w1 - 1) * n, n};
    }
    std::span<const double> x2_row(std::size_t w2) const {
        return {x2.data() + (w2 - 1) * n, n};
    }
    std::span<const double> q1_row(std::size_t w, std::size_t m) const {
        return {q1.data() + ((w - 1) * m1_count + (m - 1)) * n, n};
    }
    std::span<const double> q2_row(std::size_t w, std::size_t m) const {
        return {q2.data() + ((w - 1) * m2_count + (m - 1)) * n, n};
    }
};

GaussianSuperpositionCodebook
build_gaussian_codebook(const GaussianSystem& sys, double alpha,
                        const RateQuadruple& rates, std::size_t n,
                        double power_backoff, Rng& rng);

// Sum of the two selected codewords. Violation of the average power
// constraint (empirical power above P) is reported through the flag and
// scored as an encode failure by the caller.
std::vector<double> gaussian_bcc_encode(const GaussianSuperpositionCodebook& cb,
                                        std::size_t w1, std::size_t w2,
                                        bool* power_violation);

std::size_t gaussian_bcc_decode_unit2(const GaussianSuperpositionCodebook& cb,
                                      const GaussianSystem& sys,
                                      std::span<const double> y2, double epsilon);

// Successive decoding at the stronger branch; returns unit 1's own message.
// w2_hat_out (optional) reports the intermediate decision.
std::size_t gaussian_bcc_decode_unit1(const GaussianSuperpositionCodebook& cb,
                                      const GaussianSystem& sys,
                                      std::span<const double> y1, double epsilon,
                                      std::size_t* w2_hat_out = nullptr);

std::pair<std::size_t, std::size_t>
gaussian_mac_decode(const GaussianSuperpositionCodebook& cb,
                    const GaussianSystem& sys, std::size_t true_w1,
                    std::size_t true_w2, std::span<const double> s_seq,
                    double epsilon);

struct GaussianSimConfig {
    double alpha = 0.5;
    RateQuadruple rates; // nats
    std::size_t n = 0;
    std::uint64_t trials = 0;
    double epsilon = 0;        // relative moment tolerance
    double power_backoff = -1; // < 0 means the epsilon/2 default
    unsigned threads = 1;
};

SimResult estimate_error_rates_gaussian(const GaussianSystem& sys,
                                        const GaussianSimConfig& cfg, Rng& rng);

} // namespace rfidcap
