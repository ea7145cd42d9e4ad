#include "rfidcap/regions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "rfidcap/errors.hpp"

namespace rfidcap {

void RateQuadruple::validate() const {
    const double vals[4] = {r1_id, r2_id, r1_data, r2_data};
    const char* names[4] = {"r1_id", "r2_id", "r1_data", "r2_data"};
    for (int i = 0; i < 4; ++i)
        if (!(vals[i] >= 0) || !std::isfinite(vals[i]))
            throw ValidationError(std::string("rates: ") + names[i] +
                                  " must be finite and non-negative");
}

DiscreteBounds discrete_bounds(const JointPmf& p_uvx, const BccChannel& bcc,
                               const Pmf& p_q1, const Pmf& p_q2,
                               const ImperfectionChannel& imp1,
                               const ImperfectionChannel& imp2,
                               const MacChannel& mac) {
    if (p_uvx.rank() != 3) throw UsageError("witness: p(u,v,x) must have rank 3");
    if (p_uvx.dims()[2] != bcc.x_size())
        throw UsageError("witness: x alphabet does not match the downlink channel");

    const std::size_t nu = p_uvx.dims()[0];
    const std::size_t nv = p_uvx.dims()[1];
    const std::size_t nx = p_uvx.dims()[2];
    const std::size_t ny1 = bcc.y1_size();
    const std::size_t ny2 = bcc.y2_size();
    const auto b1 = bcc.branch1_cond(); // [x][y1]
    const auto b2 = bcc.branch2_cond(); // [x][y2]

    // Push the witness through each downlink branch.
    std::vector<double> puy1(nu * ny1, 0.0), pvy2(nv * ny2, 0.0);
    for (std::size_t u = 0; u < nu; ++u)
        for (std::size_t v = 0; v < nv; ++v)
            for (std::size_t x = 0; x < nx; ++x) {
                const double p = p_uvx.at(u, v, x);
                if (p == 0) continue;
                for (std::size_t y = 0; y < ny1; ++y)
                    puy1[u * ny1 + y] += p * b1[x * ny1 + y];
                for (std::size_t y = 0; y < ny2; ++y)
                    pvy2[v * ny2 + y] += p * b2[x * ny2 + y];
            }

    DiscreteBounds out;
    out.id1 = mutual_information(JointPmf({nu, ny1}, std::move(puy1)), LogBase::nats);
    out.id2 = mutual_information(JointPmf({nv, ny2}, std::move(pvy2)), LogBase::nats);
    const double i_uv = mutual_information(marginal(p_uvx, 0, 1), LogBase::nats);
    out.id_sum = out.id1 + out.id2 - i_uv;

    const JointPmf uplink = induced_mac_joint(p_q1, p_q2, imp1, imp2, mac);
    out.data1 = conditional_mutual_information(uplink, 1, LogBase::nats);
    out.data2 = conditional_mutual_information(uplink, 0, LogBase::nats);
    out.data_sum = mutual_information_against_axis(uplink, 2, LogBase::nats);
    return out;
}

bool admits(const DiscreteBounds& b, const RateQuadruple& r) {
    return r.r1_id < b.id1 && r.r2_id < b.id2 && r.r1_id + r.r2_id < b.id_sum &&
           r.r1_data < b.data1 && r.r2_data < b.data2 &&
           r.r1_data + r.r2_data < b.data_sum;
}

bool discrete_membership(const RateQuadruple& r, const JointPmf& p_uvx,
                         const BccChannel& bcc, const Pmf& p_q1, const Pmf& p_q2,
                         const ImperfectionChannel& imp1,
                         const ImperfectionChannel& imp2, const MacChannel& mac) {
    r.validate();
    return admits(discrete_bounds(p_uvx, bcc, p_q1, p_q2, imp1, imp2, mac), r);
}

namespace {

// Pareto corners of {x <= a1, y <= a2, x + y <= a12, x >= 0, y >= 0}.
// Degenerate bounds collapse corners onto the axes; negatives clamp to zero
// and the caller's admission check weeds the result out.
std::array<std::pair<double, double>, 2> pareto_corners(double a1, double a2,
                                                        double a12) {
    const auto clamp0 = [](double v) { return v > 0 ? v : 0.0; };
    const double xa = clamp0(std::min(a1, a12));
    const double ya = clamp0(std::min(a2, a12 - xa));
    const double yb = clamp0(std::min(a2, a12));
    const double xb = clamp0(std::min(a1, a12 - yb));
    return {{{xa, ya}, {xb, yb}}};
}

struct WitnessState {
    std::vector<double> uvx, q1, q2; // flat simplex blocks
};

std::vector<double> random_simplex(std::size_t size, Rng& rng) {
    std::vector<double> v(size);
    double total = 0;
    for (auto& x : v) {
        x = -std::log1p(-rng.uniform01()); // Exp(1) draw
        total += x;
    }
    if (total <= 0) return std::vector<double>(size, 1.0 / double(size));
    for (auto& x : v) x /= total;
    return v;
}

DiscreteBounds eval_witness(const WitnessState& w, const DiscreteSystem& sys,
                            std::size_t nu, std::size_t nv) {
    return discrete_bounds(JointPmf({nu, nv, sys.bcc.x_size()}, w.uvx), sys.bcc,
                           Pmf(w.q1), Pmf(w.q2), sys.imp1, sys.imp2, sys.mac);
}

// Weighted best corner-sum of the polytope the bounds describe.
double scalarized(const DiscreteBounds& b, const std::array<double, 4>& w) {
    const auto idc = pareto_corners(b.id1, b.id2, b.id_sum);
    const auto dtc = pareto_corners(b.data1, b.data2, b.data_sum);
    double best_id = 0, best_dt = 0;
    for (const auto& [x, y] : idc) best_id = std::max(best_id, w[0] * x + w[1] * y);
    for (const auto& [x, y] : dtc) best_dt = std::max(best_dt, w[2] * x + w[3] * y);
    return best_id + best_dt;
}

bool dominates(const RateQuadruple& a, const RateQuadruple& b) {
    const bool ge = a.r1_id >= b.r1_id && a.r2_id >= b.r2_id &&
                    a.r1_data >= b.r1_data && a.r2_data >= b.r2_data;
    const bool gt = a.r1_id > b.r1_id || a.r2_id > b.r2_id ||
                    a.r1_data > b.r1_data || a.r2_data > b.r2_data;
    return ge && gt;
}

bool rates_equal(const RateQuadruple& a, const RateQuadruple& b) {
    return a.r1_id == b.r1_id && a.r2_id == b.r2_id && a.r1_data == b.r1_data &&
           a.r2_data == b.r2_data;
}

} // namespace

std::vector<FrontierPoint> discrete_frontier_search(const DiscreteSystem& sys,
                                                    std::size_t u_card,
                                                    std::size_t v_card,
                                                    std::size_t budget, Rng& rng) {
    if (u_card == 0 || v_card == 0)
        throw UsageError("frontier search: auxiliary cardinalities must be positive");
    if (budget == 0) throw UsageError("frontier search: budget must be positive");
    sys.validate_dims();

    const std::size_t restarts = std::min<std::size_t>(8, std::max<std::size_t>(1, budget / 25));
    const std::size_t iters = std::max<std::size_t>(1, budget / restarts);

    const std::size_t q1_size = sys.imp1.q_size();
    const std::size_t q2_size = sys.imp2.q_size();
    const std::size_t uvx_size = u_card * v_card * sys.bcc.x_size();

    std::vector<FrontierPoint> points;
    // Back off the corner by a hair so every strict inequality holds.
    constexpr double kShrink = 1.0 - 1e-6;

    for (std::size_t restart = 0; restart < restarts; ++restart) {
        WitnessState cur{random_simplex(uvx_size, rng), random_simplex(q1_size, rng),
                         random_simplex(q2_size, rng)};
        std::array<double, 4> w;
        {
            const auto raw = random_simplex(4, rng);
            std::copy(raw.begin(), raw.end(), w.begin());
        }

        DiscreteBounds cur_bounds = eval_witness(cur, sys, u_card, v_card);
        double cur_score = scalarized(cur_bounds, w);
        std::size_t evals = 1;

        while (evals < iters) {
            // Move a random slice of mass between two cells of one block.
            std::vector<double>* block = nullptr;
            switch (rng.uniform_below(3)) {
                case 0: block = &cur.uvx; break;
                case 1: block = &cur.q1; break;
                default: block = &cur.q2; break;
            }
            if (block->size() < 2) continue;
            const std::size_t src = rng.uniform_below(block->size());
            const std::size_t dst = rng.uniform_below(block->size());
            const double delta = 0.5 * rng.uniform01() * (*block)[src];
            if (src == dst || delta <= 0) continue;

            (*block)[src] -= delta;
            (*block)[dst] += delta;
            const DiscreteBounds trial_bounds = eval_witness(cur, sys, u_card, v_card);
            ++evals;
            const double trial_score = scalarized(trial_bounds, w);
            if (trial_score > cur_score) {
                cur_score = trial_score;
                cur_bounds = trial_bounds;
            } else {
                (*block)[src] += delta;
                (*block)[dst] -= delta;
            }
        }

        const auto idc = pareto_corners(cur_bounds.id1, cur_bounds.id2, cur_bounds.id_sum);
        const auto dtc =
            pareto_corners(cur_bounds.data1, cur_bounds.data2, cur_bounds.data_sum);
        for (const auto& [xi, yi] : idc)
            for (const auto& [xd, yd] : dtc) {
                RateQuadruple r{xi * kShrink, yi * kShrink, xd * kShrink, yd * kShrink};
                if (!admits(cur_bounds, r)) continue;
                points.push_back(FrontierPoint{
                    r, DiscreteRegionWitness{
                           JointPmf({u_card, v_card, sys.bcc.x_size()}, cur.uvx),
                           Pmf(cur.q1), Pmf(cur.q2), cur_bounds}});
            }
    }

    std::stable_sort(points.begin(), points.end(),
                     [](const FrontierPoint& a, const FrontierPoint& b) {
                         const auto& x = a.rates;
                         const auto& y = b.rates;
                         if (x.r1_id != y.r1_id) return x.r1_id > y.r1_id;
                         if (x.r2_id != y.r2_id) return x.r2_id > y.r2_id;
                         if (x.r1_data != y.r1_data) return x.r1_data > y.r1_data;
                         return x.r2_data > y.r2_data;
                     });

    std::vector<FrontierPoint> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < points.size() && !drop; ++j)
            if (j != i && dominates(points[j].rates, points[i].rates)) drop = true;
        for (std::size_t j = 0; j < kept.size() && !drop; ++j)
            if (rates_equal(kept[j].rates, points[i].rates)) drop = true;
        if (!drop) kept.push_back(std::move(points[i]));
    }
    return kept;
}

GaussianBounds gaussian_bounds(const GaussianSystem& sys, double alpha) {
    sys.validate(true);
    if (!(alpha >= 0 && alpha <= 1))
        throw UsageError("gaussian bounds: alpha must be in [0,1]");
    const double ap = alpha * sys.power;
    const double bp = (1 - alpha) * sys.power;
    GaussianBounds b;
    b.id1 = 0.5 * std::log1p(ap / sys.n1);
    b.id2 = 0.5 * std::log1p(bp / (sys.n2 + ap));
    b.data1 = 0.5 * std::log1p(sys.alpha1 * ap / sys.n3);
    b.data2 = 0.5 * std::log1p(sys.alpha2 * bp / sys.n3);
    b.data_sum = 0.5 * std::log1p((sys.alpha1 * ap + sys.alpha2 * bp) / sys.n3);
    return b;
}

AlphaInterval gaussian_membership(const RateQuadruple& r, const GaussianSystem& sys) {
    r.validate();
    sys.validate(true);
    const AlphaInterval none{1, 0};

    // A reflection coefficient of zero pins that unit's uplink bound at zero,
    // which no non-negative strict rate can satisfy.
    if (sys.alpha1 == 0 || sys.alpha2 == 0) return none;

    const double p = sys.power;
    // Each strict bound inverts to an open half-line in alpha.
    double lo = sys.n1 * std::expm1(2 * r.r1_id) / p;
    lo = std::max(lo, sys.n3 * std::expm1(2 * r.r1_data) / (sys.alpha1 * p));

    double hi = ((p + sys.n2) * std::exp(-2 * r.r2_id) - sys.n2) / p;
    hi = std::min(hi, 1 - sys.n3 * std::expm1(2 * r.r2_data) / (sys.alpha2 * p));

    // Sum bound: alpha2 + alpha (alpha1 - alpha2) must exceed c.
    const double c = sys.n3 * std::expm1(2 * (r.r1_data + r.r2_data)) / p;
    if (sys.alpha1 > sys.alpha2) {
        lo = std::max(lo, (c - sys.alpha2) / (sys.alpha1 - sys.alpha2));
    } else if (sys.alpha1 < sys.alpha2) {
        hi = std::min(hi, (c - sys.alpha2) / (sys.alpha1 - sys.alpha2));
    } else if (!(sys.alpha1 > c)) {
        return none;
    }

    // The endpoints are never feasible (a zero power share zeroes one of the
    // identification bounds), so the open interval is exact as-is.
    if (!(lo < hi)) return none;
    return AlphaInterval{lo, hi};
}

std::vector<GaussianFrontierRow> gaussian_frontier(const GaussianSystem& sys,
                                                   std::size_t grid) {
    sys.validate(true);
    if (grid < 2) throw UsageError("frontier: grid needs at least two points");
    std::vector<GaussianFrontierRow> rows;
    rows.reserve(grid);
    for (std::size_t k = 0; k < grid; ++k) {
        const double alpha = double(k) / double(grid - 1);
        rows.push_back({alpha, gaussian_bounds(sys, alpha)});
    }
    return rows;
}

} // namespace rfidcap
