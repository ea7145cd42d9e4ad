/******************************************************************************
 * Acceptance checks. Each criterion prints exactly one PASS/FAIL line and the
 * binary exits nonzero if any of them fail. Tolerances and runtime budgets
 * are pinned here, next to the checks they guard.
 *
 * Monte Carlo criteria run on the default seed with the same stream layout
 * the CLI uses (one derived stream per block length), so their outcomes are
 * reproducible bit for bit.
 ******************************************************************************/

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfidcap/channel_io.hpp"
#include "rfidcap/channels.hpp"
#include "rfidcap/experiment.hpp"
#include "rfidcap/prob.hpp"
#include "rfidcap/regions.hpp"
#include "rfidcap/rfid.hpp"
#include "rfidcap/rng.hpp"
#include "rfidcap/sim_discrete.hpp"
#include "rfidcap/sim_gaussian.hpp"

using namespace rfidcap;

namespace {

double now_s() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail, double secs) {
    std::printf("criterion %2d: %s  %s (%.1f s)\n", criterion,
                pass ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

Pmf random_pmf(std::size_t k, Rng& rng) {
    std::vector<double> w(k);
    double sum = 0;
    for (auto& x : w) {
        x = 0.05 + rng.uniform01();
        sum += x;
    }
    for (auto& x : w) x /= sum;
    return Pmf(w);
}

std::vector<double> random_rows(std::size_t rows, std::size_t cols, Rng& rng) {
    std::vector<double> out;
    out.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const Pmf row = random_pmf(cols, rng);
        for (std::size_t c = 0; c < cols; ++c) out.push_back(row.at(c));
    }
    return out;
}

GaussianSystem random_gaussian(Rng& rng, bool share_conversion) {
    GaussianSystem sys;
    sys.power = 0.5 + 25 * rng.uniform01();
    sys.n1 = 0.1 + 2 * rng.uniform01();
    sys.n2 = sys.n1 + 0.02 + 2 * rng.uniform01();
    sys.n3 = 0.2 + 5 * rng.uniform01();
    sys.alpha1 = 0.02 + 0.96 * rng.uniform01();
    sys.alpha2 = share_conversion ? sys.alpha1 : 0.02 + 0.96 * rng.uniform01();
    return sys;
}

// ---------------------------------------------------------------------------

// The analytic split-interval must agree with brute force: sweep alpha at
// step 1e-5 and compare endpoints, skipping intervals narrower than 2e-5.
// Each strict bound r < 1/2 ln(1 + g(alpha)) is tested per gridpoint in the
// equivalent form e^{2r} - 1 < g(alpha) (one exp per instance, affine work
// per gridpoint); the monotone transform preserves strictness exactly and
// keeps the whole sweep inside the runtime budget.
void criterion_1() {
    const double t0 = now_s();
    const double step = 1e-5;
    Rng rng(101);
    int checked = 0, skipped = 0;
    std::string fail;

    for (int k = 0; k < 1000 && fail.empty(); ++k) {
        const GaussianSystem sys = random_gaussian(rng, k % 5 == 0);
        const double s1 = 0.5 * std::log1p(sys.power / sys.n1);
        const double s2 = 0.5 * std::log1p(sys.power / sys.n2);
        const double d1 = 0.5 * std::log1p(sys.alpha1 * sys.power / sys.n3);
        const double d2 = 0.5 * std::log1p(sys.alpha2 * sys.power / sys.n3);
        const RateQuadruple r{rng.uniform01() * 1.1 * s1,
                              rng.uniform01() * 1.1 * s2,
                              rng.uniform01() * 1.1 * d1,
                              rng.uniform01() * 1.1 * d2};

        const AlphaInterval iv = gaussian_membership(r, sys);
        if (!iv.empty() && iv.width() < 2 * step) {
            ++skipped;
            continue;
        }

        const double p = sys.power;
        const double e_id1 = sys.n1 * std::expm1(2 * r.r1_id);
        const double e_id2 = std::expm1(2 * r.r2_id);
        const double e_d1 = sys.n3 * std::expm1(2 * r.r1_data);
        const double e_d2 = sys.n3 * std::expm1(2 * r.r2_data);
        const double e_sum = sys.n3 * std::expm1(2 * (r.r1_data + r.r2_data));

        double first = -1, last = -1;
        for (int i = 0; i <= 100000; ++i) {
            const double a = i * step;
            const bool ok = e_id1 < a * p &&
                            e_id2 * (sys.n2 + a * p) < (1 - a) * p &&
                            e_d1 < sys.alpha1 * a * p &&
                            e_d2 < sys.alpha2 * (1 - a) * p &&
                            e_sum < (sys.alpha1 * a + sys.alpha2 * (1 - a)) * p;
            if (ok) {
                if (first < 0) first = a;
                last = a;
            }
        }

        if (iv.empty()) {
            if (first >= 0)
                fail = "analytic interval empty but the sweep found a feasible "
                       "split at alpha=" + std::to_string(first);
        } else if (first < 0) {
            fail = "analytic interval nonempty but the sweep found nothing";
        } else if (std::abs(first - iv.lo) > 1.5 * step ||
                   std::abs(last - iv.hi) > 1.5 * step) {
            fail = "interval endpoints off by more than one sweep step";
        }
        ++checked;
    }

    report(1, fail.empty() && now_s() - t0 < 10.0,
           fail.empty()
               ? "analytic split interval matches a 1e-5 brute sweep on " +
                     std::to_string(checked) + " random systems (" +
                     std::to_string(skipped) + " skipped as sub-resolution)"
               : fail,
           now_s() - t0);
}

// Closed-form spot values, frozen to well over the 1e-9 tolerance.
void criterion_2() {
    const double t0 = now_s();
    const double kHalfLn11 = 1.19894763639918527;   // 0.5 ln 11
    const double kHalfLn12o7 = 0.269498250366343503; // 0.5 ln(12/7)
    const double kHalfLn6 = 0.895879734614027500;    // 0.5 ln 6
    const double kHalfLn19o10 = 0.320926943086197388; // 0.5 ln 1.9
    const double kHalfLn28o10 = 0.514809708590579120; // 0.5 ln 2.8

    GaussianSystem sys;
    sys.power = 10;
    sys.n1 = 1;
    sys.n2 = 2;
    sys.n3 = 5;
    sys.alpha1 = 1;
    sys.alpha2 = 1;
    const GaussianBounds full = gaussian_bounds(sys, 1.0);

    sys.alpha1 = 0.9;
    sys.alpha2 = 0.9;
    const GaussianBounds half = gaussian_bounds(sys, 0.5);

    const GaussianBounds none = gaussian_bounds(sys, 0.0);

    bool ok = std::abs(full.id1 - kHalfLn11) < 1e-9 &&
              std::abs(half.id1 - kHalfLn6) < 1e-9 &&
              std::abs(half.id2 - kHalfLn12o7) < 1e-9 &&
              std::abs(half.data1 - kHalfLn19o10) < 1e-9 &&
              std::abs(half.data2 - kHalfLn19o10) < 1e-9 &&
              std::abs(half.data_sum - kHalfLn28o10) < 1e-9 &&
              none.id1 == 0.0 && none.data1 == 0.0;
    report(2, ok, "closed-form bound spot values within 1e-9 nats", now_s() - t0);
}

// Induced uplink joint vs exhaustive five-tuple enumeration, alphabets <= 4.
void criterion_3() {
    const double t0 = now_s();
    Rng rng(303);
    double worst = 0;
    int cases = 0;

    for (std::size_t a1 = 1; a1 <= 4; ++a1)
        for (std::size_t a2 = 1; a2 <= 4; ++a2)
            for (std::size_t b1 = 1; b1 <= 4; ++b1)
                for (std::size_t b2 = 1; b2 <= 4; ++b2)
                    for (std::size_t sc = 1; sc <= 4; ++sc) {
                        const Pmf p1 = random_pmf(a1, rng);
                        const Pmf p2 = random_pmf(a2, rng);
                        const ImperfectionChannel imp1(a1, b1,
                                                       random_rows(a1, b1, rng));
                        const ImperfectionChannel imp2(a2, b2,
                                                       random_rows(a2, b2, rng));
                        const MacChannel mac(b1, b2, sc,
                                             random_rows(b1 * b2, sc, rng));

                        const JointPmf got =
                            induced_mac_joint(p1, p2, imp1, imp2, mac);

                        std::vector<double> want(a1 * a2 * sc, 0.0);
                        for (std::size_t q1 = 0; q1 < a1; ++q1)
                            for (std::size_t q2 = 0; q2 < a2; ++q2)
                                for (std::size_t h1 = 0; h1 < b1; ++h1)
                                    for (std::size_t h2 = 0; h2 < b2; ++h2)
                                        for (std::size_t s = 0; s < sc; ++s)
                                            want[(q1 * a2 + q2) * sc + s] +=
                                                p1.at(q1) * p2.at(q2) *
                                                imp1.prob(q1, h1) *
                                                imp2.prob(q2, h2) *
                                                mac.prob(h1, h2, s);

                        double l1 = 0;
                        const auto probs = got.probs();
                        for (std::size_t i = 0; i < want.size(); ++i)
                            l1 += std::abs(probs[i] - want[i]);
                        worst = std::max(worst, l1);
                        ++cases;
                    }

    const double secs = now_s() - t0;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "induced joint matches 5-tuple enumeration on %d size combos, "
                  "worst L1 %.2e",
                  cases, worst);
    report(3, worst < 1e-12 && secs < 1.0, buf, secs);
}

// Entropy / MI / conditional-MI against hand values and the chain rule.
void criterion_4() {
    const double t0 = now_s();
    const double kH11 = 0.49991595816452800;       // H2(0.11) bits
    const double kMiBsc11 = 0.50008404183547200;   // 1 - H2(0.11)
    const double kMiBsc275 = 0.151451821705384185; // 1 - H2(0.275)

    bool ok = std::abs(entropy(Pmf({0.89, 0.11}), LogBase::bits) - kH11) < 1e-9;

    const auto bsc_joint = [](double p) {
        return JointPmf({2, 2}, {0.5 * (1 - p), 0.5 * p, 0.5 * p, 0.5 * (1 - p)});
    };
    ok = ok &&
         std::abs(mutual_information(bsc_joint(0.11), LogBase::bits) - kMiBsc11) <
             1e-9 &&
         std::abs(mutual_information(bsc_joint(0.275), LogBase::bits) -
                  kMiBsc275) < 1e-9;

    // Pure XOR uplink with fair inputs: I(Q1;S|Q2) = 1 bit, I(Q1;S) = 0.
    const JointPmf xj =
        induced_mac_joint(Pmf::uniform(2), Pmf::uniform(2),
                          ImperfectionChannel::identity(2),
                          ImperfectionChannel::identity(2),
                          MacChannel::xor_erasure(0.0));
    ok = ok &&
         std::abs(conditional_mutual_information(xj, 1, LogBase::bits) - 1.0) <
             1e-9 &&
         std::abs(mutual_information(marginal(xj, 0, 2), LogBase::bits)) < 1e-9;

    // I(A;B,C) = I(A;B) + I(A;C|B) on random rank-3 joints.
    Rng rng(404);
    double worst = 0;
    const std::size_t shapes[4][3] = {{2, 2, 2}, {3, 4, 2}, {4, 3, 5}, {2, 5, 3}};
    for (int k = 0; k < 100; ++k) {
        const auto& s = shapes[k % 4];
        const Pmf flat = random_pmf(s[0] * s[1] * s[2], rng);
        const JointPmf j({s[0], s[1], s[2]},
                         {flat.probs().begin(), flat.probs().end()});
        const double lhs = mutual_information_against_axis(j, 0, LogBase::nats);
        const double rhs = mutual_information(marginal(j, 0, 1), LogBase::nats) +
                           conditional_mutual_information(j, 1, LogBase::nats);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    ok = ok && worst < 1e-9;

    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "hand-value and chain-rule residuals below 1e-9 (worst %.2e)",
                  worst);
    report(4, ok, buf, now_s() - t0);
}

// Shared setup for the discrete Monte Carlo criteria: two independent
// BSC(0.05) downlink branches, identity imperfections, XOR-with-erasure(0.3)
// uplink. The witness mixes x between u and v with fair auxiliaries.
DiscreteSystem mc_system() {
    return DiscreteSystem{BccChannel::bsc_pair(0.05, 0.05),
                          ImperfectionChannel::identity(2),
                          ImperfectionChannel::identity(2),
                          MacChannel::xor_erasure(0.3)};
}

JointPmf mc_witness() {
    return JointPmf({2, 2, 2}, {0.25, 0.0, 0.125, 0.125, 0.125, 0.125, 0.0, 0.25});
}

std::vector<SimResult> g_c5_results; // reused by criterion 7

// Error decay over block length, with the rates held strictly inside the
// witness bounds. The bounds themselves sit near 0.151 bits (identification,
// both branches see an effective BSC(0.275)) and 0.7 bits (uplink), so the
// 1/64-bit operating point is deep inside even after the 0.7x derating; the
// desk-scale message-count caps rule out running at the derated bounds
// themselves.
void criterion_5() {
    const double t0 = now_s();
    const DiscreteSystem sys = mc_system();
    const JointPmf w = mc_witness();
    const Pmf fair = Pmf::uniform(2);

    g_c5_results.clear();
    const std::size_t ns[3] = {64, 128, 256};
    Rng master(kDefaultSeed);
    for (const std::size_t n : ns) {
        DiscreteSimConfig cfg;
        cfg.rates = RateQuadruple{kLn2 / 64, kLn2 / 64, kLn2 / 64, kLn2 / 64};
        cfg.n = n;
        cfg.trials = 2000;
        cfg.epsilon = 0.105 * kLn2; // bits -> nats
        Rng rng = master.derive(5, n);
        g_c5_results.push_back(
            estimate_error_rates_discrete(sys, w, fair, fair, cfg, rng));
    }

    const auto& a = g_c5_results[0];
    const auto& b = g_c5_results[1];
    const auto& c = g_c5_results[2];
    const bool decreasing =
        a.overall.hat > b.overall.hat && b.overall.hat > c.overall.hat;
    const bool separated =
        a.overall.ci.lo > b.overall.ci.hi && b.overall.ci.lo > c.overall.ci.hi;
    const bool small_tail = c.overall.hat < 0.1;
    const double secs = now_s() - t0;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "overall error decays %.3f / %.3f / %.4f over n=64/128/256 "
                  "with disjoint 95%% CIs at 2000 trials",
                  a.overall.hat, b.overall.hat, c.overall.hat);
    report(5, decreasing && separated && small_tail && secs < 300.0, buf, secs);
}

// Rate above the uplink bound: with unit 1 overshooting I(Q1;S|Q2) by 20%,
// the uplink decoder must keep failing at every block length.
void criterion_6() {
    const double t0 = now_s();
    const DiscreteSystem sys = mc_system();
    const JointPmf w = mc_witness();
    const Pmf skew = Pmf({0.99, 0.01});
    const Pmf fair = Pmf::uniform(2);

    const JointPmf induced =
        induced_mac_joint(skew, fair, sys.imp1, sys.imp2, sys.mac);
    const double bound = conditional_mutual_information(induced, 1, LogBase::nats);

    bool ok = true;
    double min_hat = 1.0;
    const std::size_t ns[3] = {64, 128, 192};
    Rng master(kDefaultSeed);
    for (const std::size_t n : ns) {
        DiscreteSimConfig cfg;
        cfg.rates = RateQuadruple{kLn2 / 64, kLn2 / 64, 1.2 * bound, 0.0};
        cfg.n = n;
        cfg.trials = 500;
        cfg.epsilon = 0.105 * kLn2;
        Rng rng = master.derive(5, n);
        const SimResult res =
            estimate_error_rates_discrete(sys, w, skew, fair, cfg, rng);
        min_hat = std::min(min_hat, res.mac.hat);
        ok = ok && res.mac.hat > 0.3;
    }

    const double secs = now_s() - t0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "uplink error stays pinned high above an overshot bound: "
                  "min rate %.3f > 0.3 over n=64/128/192",
                  min_hat);
    report(6, ok && secs < 300.0, buf, secs);
}

// The overall estimate must equal the two-stage composition
// 1 - (1 - bcc)(1 - mac) within 3 sigma; the tallies make it exact.
void criterion_7() {
    const double t0 = now_s();
    bool ok = !g_c5_results.empty();
    double worst = 0;
    for (const auto& r : g_c5_results) {
        const double composed = 1.0 - (1.0 - r.bcc.hat) * (1.0 - r.mac.hat);
        const double sigma = std::sqrt(
            std::max(r.overall.hat * (1 - r.overall.hat), 1e-12) / r.trials);
        const double gap = std::abs(r.overall.hat - composed);
        worst = std::max(worst, gap / (3 * sigma));
        ok = ok && gap <= 3 * sigma;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "overall rate equals the composed two-stage rate "
                  "(worst gap %.1e of the 3-sigma budget)",
                  worst);
    report(7, ok, buf, now_s() - t0);
}

// Gaussian decay at a fixed power split, superposition downlink and
// successive decoding, backscatter conversion 0.9 on both units.
void criterion_8() {
    const double t0 = now_s();
    GaussianSystem sys;
    sys.power = 10;
    sys.n1 = 1;
    sys.n2 = 2;
    sys.n3 = 5;
    sys.alpha1 = 0.9;
    sys.alpha2 = 0.9;

    std::vector<SimResult> res;
    const std::size_t ns[3] = {128, 256, 512};
    Rng master(kDefaultSeed);
    for (const std::size_t n : ns) {
        GaussianSimConfig cfg;
        cfg.alpha = 0.5;
        cfg.rates =
            RateQuadruple{kLn2 / 128, kLn2 / 128, kLn2 / 128, kLn2 / 128};
        cfg.n = n;
        cfg.trials = 1000;
        cfg.epsilon = 0.2;
        cfg.power_backoff = 1.0;
        Rng rng = master.derive(5, n);
        res.push_back(estimate_error_rates_gaussian(sys, cfg, rng));
    }

    const bool decreasing = res[0].overall.hat > res[1].overall.hat &&
                            res[1].overall.hat > res[2].overall.hat;
    const bool small_tail = res[2].overall.hat < 0.15;
    const double secs = now_s() - t0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "overall error decays %.3f / %.3f / %.4f over n=128/256/512 "
                  "at 1000 trials",
                  res[0].overall.hat, res[1].overall.hat, res[2].overall.hat);
    report(8, decreasing && small_tail && secs < 600.0, buf, secs);
}

// Downward closure and boundary strictness, 500 random queries per region.
void criterion_9() {
    const double t0 = now_s();
    Rng rng(909);
    std::string fail;

    // Heavily correlated witnesses can push the identification sum bound to
    // zero or below; those have no interior to probe, so draws continue until
    // 500 usable instances have been checked.
    int checked_d = 0;
    for (int k = 0; checked_d < 500 && k < 50000 && fail.empty(); ++k) {
        const std::size_t uc = 2 + rng.uniform_below(2);
        const std::size_t vc = 2 + rng.uniform_below(2);
        const Pmf flat = random_pmf(uc * vc * 2, rng);
        const JointPmf w({uc, vc, 2}, {flat.probs().begin(), flat.probs().end()});
        const Pmf q1 = random_pmf(2, rng);
        const Pmf q2 = random_pmf(2, rng);
        const double cross1 = 0.3 * rng.uniform01();
        const double cross2 = 0.3 * rng.uniform01();
        const double erase = 0.6 * rng.uniform01();
        const DiscreteSystem sys{BccChannel::bsc_pair(cross1, cross2),
                                 ImperfectionChannel::identity(2),
                                 ImperfectionChannel::identity(2),
                                 MacChannel::xor_erasure(erase)};
        const DiscreteBounds b = discrete_bounds(w, sys.bcc, q1, q2, sys.imp1,
                                                 sys.imp2, sys.mac);
        const double floor = 1e-9;
        if (b.id1 < floor || b.id2 < floor || b.id_sum < floor ||
            b.data1 < floor || b.data2 < floor || b.data_sum < floor)
            continue; // a degenerate draw has no interior to probe
        ++checked_d;

        const auto f = [&] { return 0.05 + 0.9 * rng.uniform01(); };
        RateQuadruple inside{f() * std::min(b.id1, b.id_sum / 2),
                             f() * std::min(b.id2, b.id_sum / 2),
                             f() * std::min(b.data1, b.data_sum / 2),
                             f() * std::min(b.data2, b.data_sum / 2)};
        if (!admits(b, inside)) {
            fail = "a point built strictly inside the bounds was rejected";
            break;
        }
        RateQuadruple shrunk{inside.r1_id * rng.uniform01(),
                             inside.r2_id * rng.uniform01(),
                             inside.r1_data * rng.uniform01(),
                             inside.r2_data * rng.uniform01()};
        if (!admits(b, shrunk)) {
            fail = "downward closure violated on the discrete region";
            break;
        }
        RateQuadruple edge = inside;
        switch (rng.uniform_below(4)) {
            case 0: edge.r1_id = b.id1; break;
            case 1: edge.r2_id = b.id2; break;
            case 2: edge.r1_data = b.data1; break;
            default: edge.r2_data = b.data2; break;
        }
        if (admits(b, edge)) {
            fail = "a rate pinned on its bound was admitted (closed boundary)";
            break;
        }
        if (admits(b, RateQuadruple{b.id1, b.id2, b.data1, b.data2})) {
            fail = "the bound corner itself was admitted";
            break;
        }
    }
    if (fail.empty() && checked_d < 500)
        fail = "could not draw 500 non-degenerate discrete instances";

    for (int k = 0; k < 500 && fail.empty(); ++k) {
        const GaussianSystem sys = random_gaussian(rng, k % 6 == 0);
        const double a = 0.05 + 0.9 * rng.uniform01();
        const GaussianBounds gb = gaussian_bounds(sys, a);
        const auto f = [&] { return 0.05 + 0.9 * rng.uniform01(); };
        const RateQuadruple inside{f() * gb.id1, f() * gb.id2,
                                   f() * std::min(gb.data1, gb.data_sum / 2),
                                   f() * std::min(gb.data2, gb.data_sum / 2)};
        if (gaussian_membership(inside, sys).empty()) {
            fail = "a point strictly inside at a fixed split was rejected";
            break;
        }
        const RateQuadruple shrunk{inside.r1_id * rng.uniform01(),
                                   inside.r2_id * rng.uniform01(),
                                   inside.r1_data * rng.uniform01(),
                                   inside.r2_data * rng.uniform01()};
        if (gaussian_membership(shrunk, sys).empty()) {
            fail = "downward closure violated on the gaussian region";
            break;
        }
        // all four rates pinned to their value at this split: strictness at
        // the split plus monotonicity in alpha empties the whole interval
        const RateQuadruple edge{gb.id1, gb.id2, gb.data1, gb.data2};
        if (!gaussian_membership(edge, sys).empty()) {
            fail = "a boundary quadruple was admitted by the gaussian region";
            break;
        }
    }

    if (fail.empty()) {
        // A zero conversion factor pins one uplink bound at zero for every
        // split, so even the all-zero quadruple is outside (strictly).
        GaussianSystem dead = random_gaussian(rng, false);
        dead.alpha1 = 0;
        if (!gaussian_membership(RateQuadruple{}, dead).empty())
            fail = "zero-rate quadruple admitted despite a dead uplink unit";
    }

    report(9, fail.empty(),
           fail.empty() ? "downward closure and strict boundaries hold on 500 "
                          "queries per region type"
                        : fail,
           now_s() - t0);
}

// Persisted records re-run from their own config echo reproduce the payload
// byte for byte.
void criterion_10() {
    const double t0 = now_s();
    namespace fs = std::filesystem;
    std::string fail;

    std::vector<ExperimentConfig> cfgs;
    {
        ExperimentConfig c;
        c.mode = Mode::simulate_discrete;
        c.channel_files = {std::string(RFIDCAP_TEST_DATA) + "/bsc_system.json"};
        c.unit = LogBase::bits;
        c.rates = {1.0 / 64, 1.0 / 64, 1.0 / 64, 1.0 / 64};
        c.n_list = {32};
        c.trials = 60;
        cfgs.push_back(c);
    }
    {
        ExperimentConfig c;
        c.mode = Mode::simulate_gaussian;
        c.system = "p=10,n1=1,n2=2,n3=5,alpha1=0.9,alpha2=0.9";
        c.unit = LogBase::nats;
        c.rates = {0.01, 0.01, 0.005, 0.005};
        c.n_list = {64};
        c.trials = 60;
        c.seed = 20260817;
        cfgs.push_back(c);
    }
    {
        ExperimentConfig c;
        c.mode = Mode::region_gaussian;
        c.system = "p=10,n1=1,n2=2,n3=5,alpha1=1,alpha2=1";
        c.allow_alpha_one = true;
        c.unit = LogBase::nats;
        c.rates = {0.5, 0.3, 0.05, 0.05};
        cfgs.push_back(c);
    }

    for (std::size_t i = 0; i < cfgs.size() && fail.empty(); ++i) {
        ExperimentConfig cfg = cfgs[i];
        const fs::path out = fs::temp_directory_path() /
                             ("rfidcap_acceptance_" + std::to_string(i) + ".json");
        cfg.out_path = out.string();

        const ResultRecord rec = run(cfg);
        write_record(rec, cfg);

        std::ifstream in(out, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::string persisted = buf.str();

        nlohmann::ordered_json doc;
        try {
            doc = nlohmann::ordered_json::parse(persisted);
        } catch (const std::exception&) {
            fail = "persisted record is not valid JSON";
            break;
        }
        ExperimentConfig back = config_from_echo(doc.at("config"));
        back.out_path = out.string();
        const ResultRecord rerun = run(back);

        if (rerun.payload.dump() != rec.payload.dump()) {
            fail = "payload differs after re-running the recorded config";
            break;
        }
        write_record(rerun, back);
        std::ifstream in2(out, std::ios::binary);
        std::ostringstream buf2;
        buf2 << in2.rdbuf();
        if (buf2.str() != persisted) {
            fail = "persisted bytes differ between the run and the re-run";
            break;
        }
        fs::remove(out);
    }

    report(10, fail.empty(),
           fail.empty()
               ? "recorded configs re-run to byte-identical payloads across "
                 "three modes"
               : fail,
           now_s() - t0);
}

// Protocol reports: the unrestricted uplink never trails TDMA, and the tag
// population limit floors 2^{n r} exactly.
void criterion_11() {
    const double t0 = now_s();
    Rng rng(1111);
    std::string fail;

    for (int k = 0; k < 100 && fail.empty(); ++k) {
        const GaussianSystem sys = random_gaussian(rng, k % 4 == 0);
        const auto frontier = gaussian_frontier(sys, 65);
        const RfidLimits tdma = tdma_limit_report(frontier, 16);
        const RfidLimits uni = universal_limit_report(frontier, 16);
        if (!(uni.universal_uplink_sum_rate >= tdma.tdma_uplink_rate))
            fail = "universal sum throughput fell below the TDMA throughput";
        if (uni.max_tags != tdma.max_tags)
            fail = "the two reports disagree on the tag population limit";
    }

    if (fail.empty() && max_tag_count(3.5, 1) != 11)
        fail = "floor(2^3.5) != 11 at n=1";
    if (fail.empty() && max_tag_count(0.5, 7) != 11)
        fail = "floor(2^3.5) != 11 at n=7";

    report(11, fail.empty(),
           fail.empty() ? "universal >= TDMA on 100 random systems; tag-count "
                          "floors exact"
                        : fail,
           now_s() - t0);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
