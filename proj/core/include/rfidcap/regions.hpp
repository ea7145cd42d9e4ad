#pragma once

/******************************************************************************
 * Rate-region membership and frontier search.
 *
 * Discrete case: six bounds evaluated from a witness (p(u,v,x), p(q1), p(q2))
 * against the channel bundle; a rate quadruple is inside iff all six strict
 * inequalities hold. The region is existential over witnesses, so the search
 * routine hunts for good witnesses under an evaluation budget.
 *
 * Gaussian case: five closed-form bounds parameterized by the downlink power
 * split alpha; membership inverts each bound analytically to a half-line in
 * alpha and intersects. All rates and bounds are in nats per symbol.
 ******************************************************************************/

#include <cstddef>
#include <vector>

#include "rfidcap/channels.hpp"
#include "rfidcap/prob.hpp"
#include "rfidcap/rng.hpp"

namespace rfidcap {

// (R1_ID, R2_ID, R1_Data, R2_Data), nats per symbol, all >= 0.
struct RateQuadruple {
    double r1_id = 0, r2_id = 0, r1_data = 0, r2_data = 0;

    void validate() const; // non-negativity
};

// The six discrete bound values, nats:
//   id1     = I(U;Y1)
//   id2     = I(V;Y2)
//   id_sum  = I(U;Y1) + I(V;Y2) - I(U;V)
//   data1   = I(Q1;S|Q2)
//   data2   = I(Q2;S|Q1)
//   data_sum= I(Q1,Q2;S)
struct DiscreteBounds {
    double id1 = 0, id2 = 0, id_sum = 0;
    double data1 = 0, data2 = 0, data_sum = 0;
};

DiscreteBounds discrete_bounds(const JointPmf& p_uvx, const BccChannel& bcc,
                               const Pmf& p_q1, const Pmf& p_q2,
                               const ImperfectionChannel& imp1,
                               const ImperfectionChannel& imp2, const MacChannel& mac);

// Strict-inequality test of one quadruple against one witness's bounds.
bool admits(const DiscreteBounds& b, const RateQuadruple& r);

bool discrete_membership(const RateQuadruple& r, const JointPmf& p_uvx,
                         const BccChannel& bcc, const Pmf& p_q1, const Pmf& p_q2,
                         const ImperfectionChannel& imp1,
                         const ImperfectionChannel& imp2, const MacChannel& mac);

struct DiscreteRegionWitness {
    JointPmf p_uvx;
    Pmf p_q1, p_q2;
    DiscreteBounds bounds;
};

struct FrontierPoint {
    RateQuadruple rates;
    DiscreteRegionWitness witness;
};

/*
 * Random-restart projected coordinate ascent over the witness simplices,
 * followed by a Pareto filter (no returned point dominated component-wise).
 * budget counts bound evaluations across all restarts. Deterministic for a
 * fixed rng seed; restarts are merged by sorting before filtering.
 */
std::vector<FrontierPoint> discrete_frontier_search(const DiscreteSystem& sys,
                                                    std::size_t u_card,
                                                    std::size_t v_card,
                                                    std::size_t budget, Rng& rng);

// The five Gaussian bound values at a fixed power split alpha, nats:
//   id1      = 1/2 ln(1 + alpha P / N1)
//   id2      = 1/2 ln(1 + (1-alpha) P / (N2 + alpha P))
//   data1    = 1/2 ln(1 + alpha1 alpha P / N3)
//   data2    = 1/2 ln(1 + alpha2 (1-alpha) P / N3)
//   data_sum = 1/2 ln(1 + (alpha1 alpha + alpha2 (1-alpha)) P / N3)
struct GaussianBounds {
    double id1 = 0, id2 = 0;
    double data1 = 0, data2 = 0, data_sum = 0;
};

GaussianBounds gaussian_bounds(const GaussianSystem& sys, double alpha);

// Open interval of feasible alpha; canonical empty value is {1, 0}.
struct AlphaInterval {
    double lo = 1, hi = 0;
    bool empty() const { return lo > hi; }
    double width() const { return empty() ? 0 : hi - lo; }
};

// Analytic inversion of the five strict constraints; the result contains
// exactly the alpha for which the quadruple satisfies every bound. Nonempty
// iff the quadruple is in the Gaussian region.
AlphaInterval gaussian_membership(const RateQuadruple& r, const GaussianSystem& sys);

struct GaussianFrontierRow {
    double alpha;
    GaussianBounds bounds;
};

// grid >= 2 uniformly spaced alpha values including both endpoints.
std::vector<GaussianFrontierRow> gaussian_frontier(const GaussianSystem& sys,
                                                   std::size_t grid);

} // namespace rfidcap
