#pragma once

/******************************************************************************
 * Channel spec files.
 *
 * JSON documents tagged by "kind": bcc | imperfection | mac | gaussian |
 * witness | discrete-system. Tensors are flat row-major "cond" arrays;
 * parametric shortcuts are available through "builtin" (bsc-pair, bsc,
 * identity, xor-erasure, adder). A discrete-system bundle carries all four
 * channels plus an optional witness block, inline or as {"path": ...}
 * references resolved against the bundle's directory. Parse errors report
 * file, line and column; semantic errors name the offending key.
 ******************************************************************************/

#include <optional>
#include <string>

#include "rfidcap/channels.hpp"
#include "rfidcap/prob.hpp"

namespace rfidcap {

// Accumulates pieces from one or more spec files.
struct LoadedInputs {
    std::optional<BccChannel> bcc;
    std::optional<ImperfectionChannel> imp1, imp2;
    std::optional<MacChannel> mac;
    std::optional<GaussianSystem> gaussian;
    std::optional<JointPmf> p_uvx;
    std::optional<Pmf> p_q1, p_q2;

    bool has_discrete_system() const {
        return bcc && imp1 && imp2 && mac;
    }
    bool has_witness() const { return p_uvx && p_q1 && p_q2; }

    // Throws with the assembled-system dimension problem, if any.
    DiscreteSystem discrete_system() const;
};

// Reads one spec file and merges its content. An imperfection file may carry
// "unit": 1|2; without it, the first one seen fills slot 1, the next slot 2.
void load_channel_file(const std::string& path, LoadedInputs& into);

// "P=10,N1=1,N2=2,N3=5,alpha1=0.9,alpha2=0.9" (case-insensitive keys).
GaussianSystem parse_gaussian_inline(const std::string& kv);

// Dispatches: an existing file loads as a spec file, anything containing '='
// parses as an inline Gaussian description.
void load_system(const std::string& path_or_inline, LoadedInputs& into);

} // namespace rfidcap
