#include "rfidcap/sim_discrete.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "rfidcap/errors.hpp"

namespace rfidcap {

namespace {

// Hard ceilings keeping materialized tables sane; anything bigger is not a
// desk-scale experiment and gets refused up front.
constexpr std::size_t kListCap = 1u << 20;
constexpr double kStorageCap = double(1u << 28);
constexpr double kRateGuardNats = 40.0 * kLn2; // 2^40 messages

// p(a, y) for one broadcast branch: push the witness through p(y|x).
JointPmf branch_joint(const JointPmf& p_uvx, const std::vector<double>& branch_cond,
                      std::size_t axis, std::size_t y_size) {
    const std::size_t nu = p_uvx.dims()[0];
    const std::size_t nv = p_uvx.dims()[1];
    const std::size_t nx = p_uvx.dims()[2];
    const std::size_t na = axis == 0 ? nu : nv;
    std::vector<double> out(na * y_size, 0.0);
    for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t x = 0; x < nx; ++x) {
                const double p = p_uvx.at(u, v, x);
                if (p == 0) continue;
                const std::size_t a = axis == 0 ? u : v;
                for (std::size_t y = 0; y < y_size; ++y)
                    out[a * y_size + y] += p * branch_cond[x * y_size + y];
            }
    return JointPmf({na, y_size}, std::move(out));
}

std::vector<Symbol> draw_sequence(const CdfSampler& sampler, std::size_t n, Rng& rng) {
    std::vector<Symbol> seq(n);
    for (auto& s : seq) s = static_cast<Symbol>(sampler(rng));
    return seq;
}

// Rejection-sample one typical sequence; on exhaustion keep the attempt whose
// empirical log-probability landed closest to the entropy and report atypical.
std::vector<Symbol> sample_typical(const CdfSampler& sampler,
                                   const TypicalityChecker& check, std::size_t n,
                                   Rng& rng, bool* typical) {
    std::vector<Symbol> best;
    double best_dev = 0;
    for (int attempt = 0; attempt < kTypicalRetryCap; ++attempt) {
        std::vector<Symbol> seq = draw_sequence(sampler, n, rng);
        if (check.is_typical(seq)) {
            *typical = true;
            return seq;
        }
        const double dev =
            std::abs(check.neg_log(seq) / double(n) - check.entropy_nats());
        if (best.empty() || dev < best_dev) {
            best = std::move(seq);
            best_dev = dev;
        }
    }
    *typical = false;
    return best;
}

} // namespace

std::size_t DiscreteBccCodebook::cell_of_u(std::size_t index) const {
    const std::size_t c = (index - 1) / cell_width1 + 1;
    return std::min(c, w1_count); // trailing remainder belongs to the last cell
}

std::size_t DiscreteBccCodebook::cell_of_v(std::size_t index) const {
    const std::size_t c = (index - 1) / cell_width2 + 1;
    return std::min(c, w2_count);
}

std::pair<std::size_t, std::size_t>
DiscreteBccCodebook::u_cell_range(std::size_t w1) const {
    const std::size_t first = (w1 - 1) * cell_width1 + 1;
    const std::size_t last = w1 == w1_count ? u_list_size : w1 * cell_width1;
    return {first, last};
}

std::pair<std::size_t, std::size_t>
DiscreteBccCodebook::v_cell_range(std::size_t w2) const {
    const std::size_t first = (w2 - 1) * cell_width2 + 1;
    const std::size_t last = w2 == w2_count ? v_list_size : w2 * cell_width2;
    return {first, last};
}

std::size_t message_count(double rate_nats, std::size_t n) {
    if (!(rate_nats >= 0) || !std::isfinite(rate_nats))
        throw ValidationError("rate must be finite and non-negative");
    if (n == 0) throw UsageError("block length must be positive");
    const double e = double(n) * rate_nats;
    if (e > kRateGuardNats)
        throw InfeasibleError("message count exceeds the 2^40 guard");
    return std::size_t(std::max<long long>(1, std::llround(std::exp(e))));
}

DiscreteBccCodebook build_discrete_bcc_codebook(const JointPmf& p_uvx,
                                                const BccChannel& bcc, double r1_id,
                                                double r2_id, std::size_t n,
                                                double epsilon, Rng& rng) {
    if (p_uvx.rank() != 3) throw UsageError("witness: p(u,v,x) must have rank 3");
    if (p_uvx.dims()[2] != bcc.x_size())
        throw UsageError("witness: x alphabet does not match the downlink channel");
    if (n == 0) throw UsageError("block length must be positive");
    if (!(epsilon > 0)) throw UsageError("epsilon must be positive");

    DiscreteBccCodebook cb;
    cb.n = n;
    cb.r1_id = r1_id;
    cb.r2_id = r2_id;
    cb.epsilon = epsilon;
    cb.y1_size = bcc.y1_size();
    cb.y2_size = bcc.y2_size();

    const Pmf p_u = marginal(p_uvx, 0);
    const Pmf p_v = marginal(p_uvx, 1);
    const JointPmf p_uv = marginal(p_uvx, 0, 1);
    const JointPmf p_uy1 = branch_joint(p_uvx, bcc.branch1_cond(), 0, cb.y1_size);
    const JointPmf p_vy2 = branch_joint(p_uvx, bcc.branch2_cond(), 1, cb.y2_size);
    const double i1 = mutual_information(p_uy1, LogBase::nats);
    const double i2 = mutual_information(p_vy2, LogBase::nats);

    cb.w1_count = message_count(r1_id, n);
    cb.w2_count = message_count(r2_id, n);

    // Cell widths 2^{n(I - R - eps)}; a width below one sequence means the
    // rate does not leave room for the identification cells.
    const auto cell_width = [&](double info, double rate) -> std::size_t {
        const double e = double(n) * (info - rate - epsilon);
        if (std::exp(e) < 1.0)
            throw InfeasibleError("identification cell width falls below one");
        if (e > std::log(double(kListCap)))
            throw InfeasibleError("codebook list would exceed the size cap");
        return std::size_t(std::floor(std::exp(e)));
    };
    cb.cell_width1 = cell_width(i1, r1_id);
    cb.cell_width2 = cell_width(i2, r2_id);

    const auto list_size = [&](double info, std::size_t msgs,
                               std::size_t width) -> std::size_t {
        const double target = std::floor(std::exp(double(n) * (info - epsilon)));
        if (target > double(kListCap) ||
            double(msgs) * double(width) > double(kListCap))
            throw InfeasibleError("codebook list would exceed the size cap");
        return std::max(std::size_t(target), msgs * width);
    };
    cb.u_list_size = list_size(i1, cb.w1_count, cb.cell_width1);
    cb.v_list_size = list_size(i2, cb.w2_count, cb.cell_width2);

    if (double(cb.w1_count) * double(cb.w2_count) * double(n) > kStorageCap)
        throw InfeasibleError("message pair map would exceed the storage cap");

    const TypicalityChecker u_check(p_u, epsilon);
    const TypicalityChecker v_check(p_v, epsilon);
    const CdfSampler u_sampler(p_u.probs());
    const CdfSampler v_sampler(p_v.probs());

    cb.u_list.resize(cb.u_list_size * n);
    cb.u_typical.resize(cb.u_list_size);
    for (std::size_t i = 0; i < cb.u_list_size; ++i) {
        bool typical = false;
        const auto seq = sample_typical(u_sampler, u_check, n, rng, &typical);
        std::copy(seq.begin(), seq.end(), cb.u_list.begin() + i * n);
        cb.u_typical[i] = typical ? 1 : 0;
    }
    cb.v_list.resize(cb.v_list_size * n);
    cb.v_typical.resize(cb.v_list_size);
    for (std::size_t i = 0; i < cb.v_list_size; ++i) {
        bool typical = false;
        const auto seq = sample_typical(v_sampler, v_check, n, rng, &typical);
        std::copy(seq.begin(), seq.end(), cb.v_list.begin() + i * n);
        cb.v_typical[i] = typical ? 1 : 0;
    }

    cb.uy1_check.emplace(p_uy1, epsilon);
    cb.vy2_check.emplace(p_vy2, epsilon);
    cb.uv_check.emplace(p_uv, epsilon);
    cb.uvx_check.emplace(p_uvx, epsilon);

    // Exact branch likelihoods p(y|a) for the optional ML decoder.
    const std::size_t nu = p_uvx.dims()[0];
    const std::size_t nv = p_uvx.dims()[1];
    const std::size_t nx = p_uvx.dims()[2];
    cb.ml_u_y1.assign(nu * cb.y1_size, 0.0);
    cb.ml_v_y2.assign(nv * cb.y2_size, 0.0);
    for (std::size_t u = 0; u < nu; ++u) {
        const double pu = p_u.at(u);
        if (pu < kProbFloor) continue;
        for (std::size_t y = 0; y < cb.y1_size; ++y)
            cb.ml_u_y1[u * cb.y1_size + y] = p_uy1.at(u, y) / pu;
    }
    for (std::size_t v = 0; v < nv; ++v) {
        const double pv = p_v.at(v);
        if (pv < kProbFloor) continue;
        for (std::size_t y = 0; y < cb.y2_size; ++y)
            cb.ml_v_y2[v * cb.y2_size + y] = p_vy2.at(v, y) / pv;
    }

    // Conditional samplers p(x|u,v) for every pair with positive mass.
    std::vector<std::optional<CdfSampler>> x_samplers(nu * nv);
    for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t v = 0; v < nv; ++v) {
            const double puv = p_uv.at(u, v);
            if (puv < kProbFloor) continue;
            std::vector<double> cond(nx);
            for (std::size_t x = 0; x < nx; ++x) cond[x] = p_uvx.at(u, v, x) / puv;
            x_samplers[u * nv + v].emplace(cond);
        }

    const std::size_t pairs = cb.w1_count * cb.w2_count;
    cb.x_map.assign(pairs * n, 0);
    cb.chosen_u.assign(pairs, 0);
    cb.chosen_v.assign(pairs, 0);
    cb.encode_fail.assign(pairs, 0);

    std::vector<Symbol> x(n);
    for (std::size_t w1 = 1; w1 <= cb.w1_count; ++w1)
        for (std::size_t w2 = 1; w2 <= cb.w2_count; ++w2) {
            const std::size_t idx = cb.pair_index(w1, w2);
            const auto [ua, ub] = cb.u_cell_range(w1);
            const auto [va, vb] = cb.v_cell_range(w2);

            std::size_t ui = 0, vi = 0;
            for (std::size_t i = ua; i <= ub && ui == 0; ++i)
                for (std::size_t j = va; j <= vb; ++j)
                    if (cb.uv_check->is_typical(cb.u_seq(i), cb.v_seq(j))) {
                        ui = i;
                        vi = j;
                        break;
                    }
            if (ui == 0) {
                cb.encode_fail[idx] = 1; // no jointly typical pair in the cells
                continue;
            }
            cb.chosen_u[idx] = std::uint32_t(ui);
            cb.chosen_v[idx] = std::uint32_t(vi);

            const auto useq = cb.u_seq(ui);
            const auto vseq = cb.v_seq(vi);
            bool ok = false;
            for (int attempt = 0; attempt < kTypicalRetryCap && !ok; ++attempt) {
                for (std::size_t k = 0; k < n; ++k) {
                    const auto& s = x_samplers[useq[k] * nv + vseq[k]];
                    x[k] = s ? static_cast<Symbol>((*s)(rng)) : Symbol{0};
                }
                ok = cb.uvx_check->is_typical(useq, vseq, x);
            }
            std::copy(x.begin(), x.end(), cb.x_map.begin() + idx * n);
            if (!ok) cb.encode_fail[idx] = 1;
        }

    return cb;
}

std::span<const Symbol> bcc_encode_discrete(const DiscreteBccCodebook& cb,
                                            std::size_t w1, std::size_t w2) {
    if (w1 == 0 || w1 > cb.w1_count || w2 == 0 || w2 > cb.w2_count)
        throw UsageError("encode: message index out of range");
    if (cb.encode_failed(w1, w2))
        throw UsageError("encode: this message pair failed codebook construction");
    return {cb.x_map.data() + cb.pair_index(w1, w2) * cb.n, cb.n};
}

std::size_t bcc_decode_discrete(const DiscreteBccCodebook& cb, int branch,
                                std::span<const Symbol> y_seq) {
    if (branch != 1 && branch != 2) throw UsageError("decode: branch must be 1 or 2");
    if (y_seq.size() != cb.n) throw UsageError("decode: observation length mismatch");
    const auto& check = branch == 1 ? *cb.uy1_check : *cb.vy2_check;
    const std::size_t list_size = branch == 1 ? cb.u_list_size : cb.v_list_size;

    std::size_t hit = 0;
    for (std::size_t i = 1; i <= list_size; ++i) {
        const auto seq = branch == 1 ? cb.u_seq(i) : cb.v_seq(i);
        if (!check.is_typical(seq, y_seq)) continue;
        if (hit != 0) return 0; // second typical entry, ambiguous
        hit = i;
    }
    if (hit == 0) return 0;
    return branch == 1 ? cb.cell_of_u(hit) : cb.cell_of_v(hit);
}

std::size_t bcc_decode_discrete_ml(const DiscreteBccCodebook& cb, int branch,
                                   std::span<const Symbol> y_seq) {
    if (branch != 1 && branch != 2) throw UsageError("decode: branch must be 1 or 2");
    if (y_seq.size() != cb.n) throw UsageError("decode: observation length mismatch");
    const auto& table = branch == 1 ? cb.ml_u_y1 : cb.ml_v_y2;
    const std::size_t y_size = branch == 1 ? cb.y1_size : cb.y2_size;
    const std::size_t list_size = branch == 1 ? cb.u_list_size : cb.v_list_size;

    std::size_t best = 1;
    double best_score = -1e300;
    for (std::size_t i = 1; i <= list_size; ++i) {
        const auto seq = branch == 1 ? cb.u_seq(i) : cb.v_seq(i);
        double score = 0;
        for (std::size_t k = 0; k < cb.n; ++k) {
            const double p = table[seq[k] * y_size + y_seq[k]];
            score += p < kProbFloor ? -1e9 : std::log(p);
        }
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    return branch == 1 ? cb.cell_of_u(best) : cb.cell_of_v(best);
}

std::pair<NestedMacCodebook, NestedMacCodebook>
build_nested_mac_codebooks(const Pmf& p_q1, const Pmf& p_q2, double r1_data,
                           double r2_data,
                           std::pair<std::size_t, std::size_t> id_counts,
                           std::size_t n, Rng& rng) {
    if (n == 0) throw UsageError("block length must be positive");
    if (id_counts.first == 0 || id_counts.second == 0)
        throw UsageError("uplink books need at least one identity each");

    const std::size_t m1 = message_count(r1_data, n);
    const std::size_t m2 = message_count(r2_data, n);
    if (double(m1) * double(m2) > double(kMacSearchCap))
        throw InfeasibleError("uplink message pair space exceeds the search cap");

    const auto build = [&](const Pmf& p, std::size_t ids, std::size_t msgs,
                           std::uint64_t unit) {
        if (double(ids) * double(msgs) * double(n) > kStorageCap)
            throw InfeasibleError("uplink codebook would exceed the storage cap");
        NestedMacCodebook cb;
        cb.n = n;
        cb.id_count = ids;
        cb.msg_count = msgs;
        cb.flat.resize(ids * msgs * n);
        const CdfSampler sampler(p.probs());
        // One derived stream per (unit, identity) keeps the books independent.
        for (std::size_t w = 1; w <= ids; ++w) {
            Rng sub = rng.derive(unit, w);
            Symbol* dst = cb.flat.data() + (w - 1) * msgs * n;
            for (std::size_t i = 0; i < msgs * n; ++i)
                dst[i] = static_cast<Symbol>(sampler(sub));
        }
        return cb;
    };
    return {build(p_q1, id_counts.first, m1, 1), build(p_q2, id_counts.second, m2, 2)};
}

std::span<const Symbol> mac_encode(const NestedMacCodebook& cb, std::size_t w_hat,
                                   std::size_t m) {
    if (w_hat == 0 || w_hat > cb.id_count || m == 0 || m > cb.msg_count)
        throw UsageError("uplink encode: index out of range");
    return cb.codeword(w_hat, m);
}

std::pair<std::size_t, std::size_t>
mac_decode(const NestedMacCodebook& cb1, const NestedMacCodebook& cb2,
           std::size_t true_w1, std::size_t true_w2, std::span<const Symbol> s_seq,
           const JointPmf& reference, double epsilon) {
    if (true_w1 == 0 || true_w1 > cb1.id_count || true_w2 == 0 ||
        true_w2 > cb2.id_count)
        throw UsageError("uplink decode: identity out of range");
    if (double(cb1.msg_count) * double(cb2.msg_count) > double(kMacSearchCap))
        throw InfeasibleError("uplink message pair space exceeds the search cap");

    const JointTypicalityChecker check(reference, epsilon);
    std::pair<std::size_t, std::size_t> found{0, 0};
    for (std::size_t m1 = 1; m1 <= cb1.msg_count; ++m1) {
        const auto q1 = cb1.codeword(true_w1, m1);
        for (std::size_t m2 = 1; m2 <= cb2.msg_count; ++m2) {
            if (!check.is_typical(q1, cb2.codeword(true_w2, m2), s_seq)) continue;
            if (found.first != 0) return {0, 0}; // ambiguous
            found = {m1, m2};
        }
    }
    return found;
}

std::pair<std::size_t, std::size_t>
mac_decode_ml(const NestedMacCodebook& cb1, const NestedMacCodebook& cb2,
              std::size_t true_w1, std::size_t true_w2,
              std::span<const Symbol> s_seq, const JointPmf& reference) {
    if (true_w1 == 0 || true_w1 > cb1.id_count || true_w2 == 0 ||
        true_w2 > cb2.id_count)
        throw UsageError("uplink decode: identity out of range");
    if (double(cb1.msg_count) * double(cb2.msg_count) > double(kMacSearchCap))
        throw InfeasibleError("uplink message pair space exceeds the search cap");

    // p(s|q1,q2) from the induced joint.
    const std::size_t nq1 = reference.dims()[0];
    const std::size_t nq2 = reference.dims()[1];
    const std::size_t ns = reference.dims()[2];
    const JointPmf p_q12 = marginal(reference, 0, 1);
    std::vector<double> cond(nq1 * nq2 * ns, 0.0);
    for (std::size_t a = 0; a < nq1; ++a)
        for (std::size_t b = 0; b < nq2; ++b) {
            const double pab = p_q12.at(a, b);
            if (pab < kProbFloor) continue;
            for (std::size_t s = 0; s < ns; ++s)
                cond[(a * nq2 + b) * ns + s] = reference.at(a, b, s) / pab;
        }

    std::pair<std::size_t, std::size_t> best{1, 1};
    double best_score = -1e300;
    for (std::size_t m1 = 1; m1 <= cb1.msg_count; ++m1) {
        const auto q1 = cb1.codeword(true_w1, m1);
        for (std::size_t m2 = 1; m2 <= cb2.msg_count; ++m2) {
            const auto q2 = cb2.codeword(true_w2, m2);
            double score = 0;
            for (std::size_t k = 0; k < s_seq.size(); ++k) {
                const double p = cond[(q1[k] * nq2 + q2[k]) * ns + s_seq[k]];
                score += p < kProbFloor ? -1e9 : std::log(p);
            }
            if (score > best_score) {
                best_score = score;
                best = {m1, m2};
            }
        }
    }
    return best;
}

SimResult estimate_error_rates_discrete(const DiscreteSystem& sys,
                                        const JointPmf& p_uvx, const Pmf& p_q1,
                                        const Pmf& p_q2,
                                        const DiscreteSimConfig& cfg, Rng& rng) {
    if (cfg.trials == 0) throw UsageError("trials must be positive");
    if (cfg.n == 0) throw UsageError("block length must be positive");
    if (!(cfg.epsilon > 0)) throw UsageError("epsilon must be positive");
    cfg.rates.validate();
    sys.validate_dims();

    const JointPmf reference = induced_mac_joint(p_q1, p_q2, sys.imp1, sys.imp2, sys.mac);

    struct Tally {
        std::uint64_t bcc_err = 0, mac_err = 0, mac_total = 0;
        std::uint64_t encode_failures = 0, miss_type = 0, wrong_message = 0;
    };

    const auto run_trial = [&](std::uint64_t t, Tally& tally) {
        const Rng trial = rng.derive(t);
        Rng book_rng = trial.derive(1);
        Rng mac_rng = trial.derive(2);
        Rng noise_rng = trial.derive(3);
        Rng msg_rng = trial.derive(4);

        const DiscreteBccCodebook cb = build_discrete_bcc_codebook(
            p_uvx, sys.bcc, cfg.rates.r1_id, cfg.rates.r2_id, cfg.n, cfg.epsilon,
            book_rng);
        const auto [mac1, mac2] = build_nested_mac_codebooks(
            p_q1, p_q2, cfg.rates.r1_data, cfg.rates.r2_data,
            {cb.w1_count, cb.w2_count}, cfg.n, mac_rng);

        const std::size_t w1 = 1 + msg_rng.uniform_below(cb.w1_count);
        const std::size_t w2 = 1 + msg_rng.uniform_below(cb.w2_count);
        const std::size_t m1 = 1 + msg_rng.uniform_below(mac1.msg_count);
        const std::size_t m2 = 1 + msg_rng.uniform_below(mac2.msg_count);

        if (cb.encode_failed(w1, w2)) {
            ++tally.encode_failures;
            ++tally.bcc_err;
            return;
        }

        const auto x = bcc_encode_discrete(cb, w1, w2);
        const auto [y1, y2] = sample_bcc(sys.bcc, x, noise_rng);
        const std::size_t w1_hat = cfg.ml_decoder ? bcc_decode_discrete_ml(cb, 1, y1)
                                                  : bcc_decode_discrete(cb, 1, y1);
        const std::size_t w2_hat = cfg.ml_decoder ? bcc_decode_discrete_ml(cb, 2, y2)
                                                  : bcc_decode_discrete(cb, 2, y2);
        if (w1_hat != w1 || w2_hat != w2) {
            ++tally.bcc_err;
            if (w1_hat == 0 || w2_hat == 0) ++tally.miss_type;
            if ((w1_hat != 0 && w1_hat != w1) || (w2_hat != 0 && w2_hat != w2))
                ++tally.wrong_message;
            return;
        }

        // Uplink leg, conditioned on both identities being known.
        ++tally.mac_total;
        const auto q1 = mac_encode(mac1, w1_hat, m1);
        const auto q2 = mac_encode(mac2, w2_hat, m2);
        const auto qhat1 = sample_imperfection(sys.imp1, q1, noise_rng);
        const auto qhat2 = sample_imperfection(sys.imp2, q2, noise_rng);
        const auto s = sample_mac(sys.mac, qhat1, qhat2, noise_rng);

        const auto decoded =
            cfg.ml_decoder
                ? mac_decode_ml(mac1, mac2, w1_hat, w2_hat, s, reference)
                : mac_decode(mac1, mac2, w1_hat, w2_hat, s, reference, cfg.epsilon);
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
