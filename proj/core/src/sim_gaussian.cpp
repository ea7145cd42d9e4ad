#include "rfidcap/sim_gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "rfidcap/errors.hpp"
#include "rfidcap/sim_discrete.hpp" // message_count, search cap

namespace rfidcap {

namespace {

constexpr double kDoubleStorageCap = double(1u << 25); // entries, 8 bytes each

double mean_product(std::span<const double> a, std::span<const double> b) {
    double acc = 0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
    return acc / double(a.size());
}

bool moments_within(std::span<const double>* seqs, std::size_t count,
                    const SecondMoments& ref, double epsilon) {
    if (ref.rank != count) throw UsageError("moment check: rank mismatch");
    if (!(epsilon > 0)) throw UsageError("moment check: epsilon must be positive");
    const std::size_t n = seqs[0].size();
    if (n == 0) throw UsageError("moment check: empty sequence");
    for (std::size_t i = 1; i < count; ++i)
        if (seqs[i].size() != n)
            throw UsageError("moment check: sequence length mismatch");

    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i; j < count; ++j) {
            const double tol =
                i == j ? epsilon * ref.m[i][i]
                       : epsilon * std::sqrt(ref.m[i][i] * ref.m[j][j]);
            if (std::abs(mean_product(seqs[i], seqs[j]) - ref.m[i][j]) > tol)
                return false;
        }
    return true;
}

void fill_gaussian(std::vector<double>& out, std::size_t first, std::size_t count,
                   double stddev, Rng& rng) {
    for (std::size_t k = 0; k < count; ++k) out[first + k] = rng.gaussian(0.0, stddev);
}

SecondMoments pair_moments(double self, double other_total) {
    // (codeword, observation) with observation = codeword + independent rest.
    SecondMoments ref;
    ref.rank = 2;
    ref.m[0][0] = self;
    ref.m[0][1] = self;
    ref.m[1][1] = other_total;
    return ref;
}

} // namespace

bool gaussian_typicality(std::span<const double> a, const SecondMoments& ref,
                         double epsilon) {
    std::span<const double> seqs[1] = {a};
    return moments_within(seqs, 1, ref, epsilon);
}

bool gaussian_typicality(std::span<const double> a, std::span<const double> b,
                         const SecondMoments& ref, double epsilon) {
    std::span<const double> seqs[2] = {a, b};
    return moments_within(seqs, 2, ref, epsilon);
}

bool gaussian_typicality(std::span<const double> a, std::span<const double> b,
                         std::span<const double> c, const SecondMoments& ref,
                         double epsilon) {
    std::span<const double> seqs[3] = {a, b, c};
    return moments_within(seqs, 3, ref, epsilon);
}

GaussianSuperpositionCodebook
build_gaussian_codebook(const GaussianSystem& sys, double alpha,
                        const RateQuadruple& rates, std::size_t n,
                        double power_backoff, Rng& rng) {
    sys.validate(true);
    rates.validate();
    if (!(alpha >= 0 && alpha <= 1)) throw UsageError("alpha must be in [0,1]");
    if (n == 0) throw UsageError("block length must be positive");
    if (!(power_backoff >= 0))
        throw UsageError("power backoff must be non-negative");

    GaussianSuperpositionCodebook cb;
    cb.n = n;
    cb.alpha = alpha;
    cb.power_backoff = power_backoff;

    const double beta = power_backoff;
    cb.sigma1_sq = alpha * sys.power - beta;
    cb.sigma2_sq = (1 - alpha) * sys.power - beta;
    if (!(cb.sigma1_sq > 0) || !(cb.sigma2_sq > 0))
        throw InfeasibleError("power backoff leaves no downlink power");
    cb.q1_var = sys.alpha1 * alpha * sys.power - 2 * beta;
    cb.q2_var = sys.alpha2 * (1 - alpha) * sys.power - 2 * beta;
    if (!(cb.q1_var > 0) || !(cb.q2_var > 0))
        throw InfeasibleError("power backoff leaves no uplink power");

    cb.w1_count = message_count(rates.r1_id, n);
    cb.w2_count = message_count(rates.r2_id, n);
    cb.m1_count = message_count(rates.r1_data, n);
    cb.m2_count = message_count(rates.r2_data, n);
    if (double(cb.m1_count) * double(cb.m2_count) > double(kMacSearchCap))
        throw InfeasibleError("uplink message pair space exceeds the search cap");

    const double entries =
        double(cb.w1_count + cb.w2_count) * double(n) +
        double(cb.w1_count) * double(cb.m1_count) * double(n) +
        double(cb.w2_count) * double(cb.m2_count) * double(n);
    if (entries > kDoubleStorageCap)
        throw InfeasibleError("codebooks would exceed the storage cap");

    cb.x1.resize(cb.w1_count * n);
    cb.x2.resize(cb.w2_count * n);
    fill_gaussian(cb.x1, 0, cb.x1.size(), std::sqrt(cb.sigma1_sq), rng);
    fill_gaussian(cb.x2, 0, cb.x2.size(), std::sqrt(cb.sigma2_sq), rng);

    // One derived stream per (unit, identity) keeps the nested books
    // independent of each other and of the downlink draws.
    cb.q1.resize(cb.w1_count * cb.m1_count * n);
    for (std::size_t w = 1; w <= cb.w1_count; ++w) {
        Rng sub = rng.derive(1, w);
        fill_gaussian(cb.q1, (w - 1) * cb.m1_count * n, cb.m1_count * n,
                      std::sqrt(cb.q1_var), sub);
    }
    cb.q2.resize(cb.w2_count * cb.m2_count * n);
    for (std::size_t w = 1; w <= cb.w2_count; ++w) {
        Rng sub = rng.derive(2, w);
        fill_gaussian(cb.q2, (w - 1) * cb.m2_count * n, cb.m2_count * n,
                      std::sqrt(cb.q2_var), sub);
    }
    return cb;
}

std::vector<double> gaussian_bcc_encode(const GaussianSuperpositionCodebook& cb,
                                        std::size_t w1, std::size_t w2,
                                        bool* power_violation) {
    if (w1 == 0 || w1 > cb.w1_count || w2 == 0 || w2 > cb.w2_count)
        throw UsageError("encode: message index out of range");
    const auto a = cb.x1_row(w1);
    const auto b = cb.x2_row(w2);
    std::vector<double> x(cb.n);
    double power = 0;
    for (std::size_t k = 0; k < cb.n; ++k) {
        x[k] = a[k] + b[k];
        power += x[k] * x[k];
    }
    power /= double(cb.n);
    // sigma1^2 + sigma2^2 + 2 beta reconstructs the system power constraint P,
    // so the check is against the true limit, not the backed-off variance.
    const double p_limit = cb.sigma1_sq + cb.sigma2_sq + 2 * cb.power_backoff;
    if (power_violation) *power_violation = power > p_limit;
    return x;
}

std::size_t gaussian_bcc_decode_unit2(const GaussianSuperpositionCodebook& cb,
                                      const GaussianSystem& sys,
                                      std::span<const double> y2, double epsilon) {
    if (y2.size() != cb.n) throw UsageError("decode: observation length mismatch");
    const SecondMoments ref =
        pair_moments(cb.sigma2_sq, cb.sigma1_sq + cb.sigma2_sq + sys.n2);
    std::size_t hit = 0;
    for (std::size_t w = 1; w <= cb.w2_count; ++w) {
        if (!gaussian_typicality(cb.x2_row(w), y2, ref, epsilon)) continue;
        if (hit != 0) return 0;
        hit = w;
    }
    return hit;
}

std::size_t gaussian_bcc_decode_unit1(const GaussianSuperpositionCodebook& cb,
                                      const GaussianSystem& sys,
                                      std::span<const double> y1, double epsilon,
                                      std::size_t* w2_hat_out) {
    if (y1.size() != cb.n) throw UsageError("decode: observation length mismatch");

    // Stage one: the coarse layer against the raw observation.
    const SecondMoments ref2 =
        pair_moments(cb.sigma2_sq, cb.sigma1_sq + cb.sigma2_sq + sys.n1);
    std::size_t w2_hat = 0;
    for (std::size_t w = 1; w <= cb.w2_count; ++w) {
        if (!gaussian_typicality(cb.x2_row(w), y1, ref2, epsilon)) continue;
        if (w2_hat != 0) {
            w2_hat = 0;
            break;
        }
        w2_hat = w;
    }
    if (w2_hat_out) *w2_hat_out = w2_hat;
    if (w2_hat == 0) return 0;

    // Stage two: strip the decoded layer, decode w1 from the residual.
    const auto x2 = cb.x2_row(w2_hat);
    std::vector<double> residual(cb.n);
    for (std::size_t k = 0; k < cb.n; ++k) residual[k] = y1[k] - x2[k];

    const SecondMoments ref1 = pair_moments(cb.sigma1_sq, cb.sigma1_sq + sys.n1);
    std::size_t hit = 0;
    for (std::size_t w = 1; w <= cb.w1_count; ++w) {
        if (!gaussian_typicality(cb.x1_row(w), residual, ref1, epsilon)) continue;
        if (hit != 0) return 0;
        hit = w;
    }
    return hit;
}

std::pair<std::size_t, std::size_t>
gaussian_mac_decode(const GaussianSuperpositionCodebook& cb,
                    const GaussianSystem& sys, std::size_t true_w1,
                    std::size_t true_w2, std::span<const double> s_seq,
                    double epsilon) {
    if (true_w1 == 0 || true_w1 > cb.w1_count || true_w2 == 0 ||
        true_w2 > cb.w2_count)
        throw UsageError("uplink decode: identity out of range");
    if (s_seq.size() != cb.n) throw UsageError("decode: observation length mismatch");
    if (double(cb.m1_count) * double(cb.m2_count) > double(kMacSearchCap))
        throw InfeasibleError("uplink message pair space exceeds the search cap");

    SecondMoments ref;
    ref.rank = 3;
    ref.m[0][0] = cb.q1_var;
    ref.m[1][1] = cb.q2_var;
    ref.m[2][2] = cb.q1_var + cb.q2_var + sys.n3;
    ref.m[0][1] = 0;
    ref.m[0][2] = cb.q1_var;
    ref.m[1][2] = cb.q2_var;

    std::pair<std::size_t, std::size_t> found{0, 0};
    for (std::size_t m1 = 1; m1 <= cb.m1_count; ++m1) {
        const auto q1 = cb.q1_row(true_w1, m1);
        for (std::size_t m2 = 1; m2 <= cb.m2_count; ++m2) {
            if (!gaussian_typicality(q1, cb.q2_row(true_w2, m2), s_seq, ref, epsilon))
                continue;
            if (found.first != 0) return {0, 0}; // ambiguous
            found = {m1, m2};
        }
    }
    return found;
}

SimResult estimate_error_rates_gaussian(const GaussianSystem& sys,
                                        const GaussianSimConfig& cfg, Rng& rng) {
    if (cfg.trials == 0) throw UsageError("trials must be positive");
    if (cfg.n == 0) throw UsageError("block length must be positive");
    if (!(cfg.epsilon > 0)) throw UsageError("epsilon must be positive");
    if (!(cfg.alpha >= 0 && cfg.alpha <= 1))
        throw UsageError("alpha must be in [0,1]");
    cfg.rates.validate();
    sys.validate(true);

    const double beta =
        cfg.power_backoff < 0 ? cfg.epsilon / 2 : cfg.power_backoff;
    const double up1_cap = sys.alpha1 * cfg.alpha * sys.power;
    const double up2_cap = sys.alpha2 * (1 - cfg.alpha) * sys.power;

    struct Tally {
        std::uint64_t bcc_err = 0, mac_err = 0, mac_total = 0;
        std::uint64_t encode_failures = 0, miss_type = 0, wrong_message = 0;
    };

    const auto empirical_power = [](std::span<const double> a) {
        double acc = 0;
        for (const double v : a) acc += v * v;
        return acc / double(a.size());
    };

    const auto run_trial = [&](std::uint64_t t, Tally& tally) {
        const Rng trial = rng.derive(t);
        Rng book_rng = trial.derive(1);
        Rng noise_rng = trial.derive(3);
        Rng msg_rng = trial.derive(4);

        const GaussianSuperpositionCodebook cb =
            build_gaussian_codebook(sys, cfg.alpha, cfg.rates, cfg.n, beta, book_rng);

        const std::size_t w1 = 1 + msg_rng.uniform_below(cb.w1_count);
        const std::size_t w2 = 1 + msg_rng.uniform_below(cb.w2_count);
        const std::size_t m1 = 1 + msg_rng.uniform_below(cb.m1_count);
        const std::size_t m2 = 1 + msg_rng.uniform_below(cb.m2_count);

        bool violation = false;
        const auto x = gaussian_bcc_encode(cb, w1, w2, &violation);
        if (violation) {
            ++tally.encode_failures;
            ++tally.bcc_err;
            return;
        }

        const auto ys = sample_gaussian_bcc(sys, x, noise_rng);
        const std::size_t w2_hat = gaussian_bcc_decode_unit2(cb, sys, ys.y2, cfg.epsilon);
        const std::size_t w1_hat = gaussian_bcc_decode_unit1(cb, sys, ys.y1, cfg.epsilon);
        if (w1_hat != w1 || w2_hat != w2) {
            ++tally.bcc_err;
            if (w1_hat == 0 || w2_hat == 0) ++tally.miss_type;
            if ((w1_hat != 0 && w1_hat != w1) || (w2_hat != 0 && w2_hat != w2))
                ++tally.wrong_message;
            return;
        }

        ++tally.mac_total;
        const auto q1 = cb.q1_row(w1_hat, m1);
        const auto q2 = cb.q2_row(w2_hat, m2);
        if (empirical_power(q1) > up1_cap || empirical_power(q2) > up2_cap) {
            ++tally.encode_failures;
            ++tally.mac_err;
            return;
        }

        const auto s = sample_gaussian_mac(sys, q1, q2, noise_rng);
        const auto decoded = gaussian_mac_decode(cb, sys, w1, w2, s, cfg.epsilon);
        if (decoded != std::make_pair(m1, m2)) {
            ++tally.mac_err;
            if (decoded == std::make_pair(std::size_t{0}, std::size_t{0}))
                ++tally.miss_type;
            else
                ++tally.wrong_message;
        }
    };

    const unsigned threads = std::max(1u, cfg.threads);
    std::vector<Tally> tallies(threads);
    if (threads == 1) {
        for (std::uint64_t t = 0; t < cfg.trials; ++t) run_trial(t, tallies[0]);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (cfg.trials + threads - 1) / threads;
        for (unsigned j = 0; j < threads; ++j) {
            const std::uint64_t lo = j * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(cfg.trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, j, lo, hi] {
                for (std::uint64_t t = lo; t < hi; ++t) run_trial(t, tallies[j]);
            });
        }
        for (auto& th : pool) th.join();
    }

    Tally total;
    for (const auto& t : tallies) {
        total.bcc_err += t.bcc_err;
        total.mac_err += t.mac_err;
        total.mac_total += t.mac_total;
        total.encode_failures += t.encode_failures;
        total.miss_type += t.miss_type;
        total.wrong_message += t.wrong_message;
    }

    SimResult out;
    out.trials = cfg.trials;
    out.bcc = RateEstimate::from_counts(total.bcc_err, cfg.trials);
    out.mac = RateEstimate::from_counts(total.mac_err, total.mac_total);
    out.overall = RateEstimate::from_counts(total.bcc_err + total.mac_err, cfg.trials);
    out.encode_failures = total.encode_failures;
    out.miss_type = total.miss_type;
    out.wrong_message = total.wrong_message;
    return out;
}

} // namespace rfidcap
