#pragma once

/******************************************************************************
 * Random-coding construction for the discrete cascade.
 *
 * Downlink codebook: lists of typical u / v sequences, partitioned into
 * contiguous cells, one cell per message. Encoding a pair (w1,w2) picks the
 * lexicographically first jointly typical (u,v) inside the cell product and
 * samples x per symbol from p(x|u,v) until the triple is typical (bounded
 * retries; exhaustion is an encode failure scored at simulation time).
 * Each unit decodes by scanning its list for a unique typical match; the
 * match index maps back to a cell by range arithmetic. 0 means no decision.
 *
 * Uplink: per downlink message w, an independent codebook of i.i.d. p(q_i)
 * codewords (the nested structure). The transceiver knows the true (w1,w2),
 * selects those two books, and scans all message pairs for a unique triple
 * jointly typical with s under the induced joint p(q1,q2,s).
 ******************************************************************************/

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rfidcap/channels.hpp"
#include "rfidcap/prob.hpp"
#include "rfidcap/regions.hpp"
#include "rfidcap/rng.hpp"
#include "rfidcap/sim_result.hpp"
#include "rfidcap/typicality.hpp"

namespace rfidcap {

// Exhaustive uplink decoding is refused above this many candidate pairs.
inline constexpr std::uint64_t kMacSearchCap = 1u << 20;
// Retry budgets for typical-sequence rejection sampling and x selection.
inline constexpr int kTypicalRetryCap = 1000;

struct DiscreteBccCodebook {
    std::size_t n = 0;
    double r1_id = 0, r2_id = 0; // nats per symbol
    double epsilon = 0;          // nats

    std::size_t w1_count = 0, w2_count = 0;
    std::size_t u_list_size = 0, v_list_size = 0;
    std::size_t cell_width1 = 0, cell_width2 = 0; // last cell absorbs remainder

    // Lists flattened as list[i * n + k]; entries drawn i.i.d. from the u / v
    // marginals and rejection-sampled to be typical.
    std::vector<Symbol> u_list, v_list;
    std::vector<std::uint8_t> u_typical, v_typical;

    // Per message pair (1-based w1, w2): the transmitted x sequence, the list
    // indices of the chosen pair (1-based, 0 = none), and the failure flag.
    std::vector<Symbol> x_map;
    std::vector<std::uint32_t> chosen_u, chosen_v;
    std::vector<std::uint8_t> encode_fail;

    // Decoding references p(u,y1) and p(v,y2) induced by the witness and the
    // broadcast branch marginals.
    std::optional<JointTypicalityChecker> uy1_check, vy2_check, uv_check, uvx_check;

    // Per-branch exact likelihood tables p(y|u), p(y|v) for the optional
    // maximum-likelihood decoder.
    std::vector<double> ml_u_y1, ml_v_y2;
    std::size_t y1_size = 0, y2_size = 0;

    std::size_t pair_index(std::size_t w1, std::size_t w2) const {
        return (w1 - 1) * w2_count + (w2 - 1);
    }
    bool encode_failed(std::size_t w1, std::size_t w2) const {
        return encode_fail[pair_index(w1, w2)] != 0;
    }
    std::span<const Symbol> u_seq(std::size_t index1based) const {
        return {u_list.data() + (index1based - 1) * n, n};
    }
    std::span<const Symbol> v_seq(std::size_t index1based) const {
        return {v_list.data() + (index1based - 1) * n, n};
    }

    // Cell arithmetic over 1-based list indices.
    std::size_t cell_of_u(std::size_t index) const;
    std::size_t cell_of_v(std::size_t index) const;
    std::pair<std::size_t, std::size_t> u_cell_range(std::size_t w1) const;
    std::pair<std::size_t, std::size_t> v_cell_range(std::size_t w2) const;
};

// Message counts: e^{n r} with r in nats, rounded to the nearest integer,
// never below one.
std::size_t message_count(double rate_nats, std::size_t n);

DiscreteBccCodebook build_discrete_bcc_codebook(const JointPmf& p_uvx,
                                                const BccChannel& bcc, double r1_id,
                                                double r2_id, std::size_t n,
                                                double epsilon, Rng& rng);

// Returns the stored x sequence; the pair must not have failed encoding.
std::span<const Symbol> bcc_encode_discrete(const DiscreteBccCodebook& cb,
                                            std::size_t w1, std::size_t w2);

// branch is 1 or 2. Returns the decoded message, 0 when no unique typical
// list entry exists (the miss-type value).
std::size_t bcc_decode_discrete(const DiscreteBccCodebook& cb, int branch,
                                std::span<const Symbol> y_seq);

// Exact per-symbol likelihood scan over the same list (performance oracle).
std::size_t bcc_decode_discrete_ml(const DiscreteBccCodebook& cb, int branch,
                                   std::span<const Symbol> y_seq);

struct NestedMacCodebook {
    std::size_t n = 0;
    std::size_t id_count = 0;  // number of independent books
    std::size_t msg_count = 0; // codewords per book
    std::vector<Symbol> flat;  // [w][m][k], w and m 0-based in storage

    std::span<const Symbol> codeword(std::size_t w, std::size_t m) const {
        return {flat.data() + ((w - 1) * msg_count + (m - 1)) * n, n};
    }
};

std::pair<NestedMacCodebook, NestedMacCodebook>
build_nested_mac_codebooks(const Pmf& p_q1, const Pmf& p_q2, double r1_data,
                           double r2_data, std::pair<std::size_t, std::size_t> id_counts,
                           std::size_t n, Rng& rng);

std::span<const Symbol> mac_encode(const NestedMacCodebook& cb, std::size_t w_hat,
                                   std::size_t m);

// Scans every message pair of the two selected books for a unique triple
// typical with s under the induced joint; (0,0) when none or ambiguous.
std::pair<std::size_t, std::size_t>
mac_decode(const NestedMacCodebook& cb1, const NestedMacCodebook& cb2,
           std::size_t true_w1, std::size_t true_w2, std::span<const Symbol> s_seq,
           const JointPmf& reference, double epsilon);

// Maximum-likelihood variant over the composed conditional p(s|q1,q2) taken
// from the same induced joint.
std::pair<std::size_t, std::size_t>
mac_decode_ml(const NestedMacCodebook& cb1, const NestedMacCodebook& cb2,
              std::size_t true_w1, std::size_t true_w2,
              std::span<const Symbol> s_seq, const JointPmf& reference);

struct DiscreteSimConfig {
    RateQuadruple rates; // nats
    std::size_t n = 0;
    std::uint64_t trials = 0;
    double epsilon = 0;  // nats
    bool ml_decoder = false;
    unsigned threads = 1;
};

/*
 * Full Monte Carlo pass. Every trial draws a fresh codebook family from its
 * own derived stream, so estimates average over the random-coding ensemble
 * and trials are i.i.d. Bernoulli for the CI computation. The uplink stage
 * runs only when both downlink messages were recovered; its error estimate
 * is conditioned on that event.
 */
SimResult estimate_error_rates_discrete(const DiscreteSystem& sys,
                                        const JointPmf& p_uvx, const Pmf& p_q1,
                                        const Pmf& p_q2, const DiscreteSimConfig& cfg,
                                        Rng& rng);

} // namespace rfidcap
