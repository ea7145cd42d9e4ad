#include "rfidcap/prob.hpp"

#include <cmath>
#include <string>

#include "rfidcap/errors.hpp"

namespace rfidcap {

namespace {

void check_mass(const std::vector<double>& probs, const char* what) {
    double sum = 0;
    for (double p : probs) {
        if (p < 0 || !std::isfinite(p))
            throw ValidationError(std::string(what) + ": negative or non-finite entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kMassTolerance)
        throw ValidationError(std::string(what) + ": mass " + std::to_string(sum) +
                              " not 1 within tolerance");
}

// -sum p ln p over entries above the floor.
double entropy_nats(std::span<const double> probs) {
    double h = 0;
    for (double p : probs)
        if (p >= kProbFloor) h -= p * std::log(p);
    return h;
}

} // namespace

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw ValidationError("pmf: empty support");
    check_mass(probs_, "pmf");
}

Pmf Pmf::uniform(std::size_t size) {
    if (size == 0) throw ValidationError("pmf: empty support");
    return Pmf(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

Pmf Pmf::point_mass(std::size_t size, std::size_t at) {
    if (at >= size) throw UsageError("pmf: point mass outside support");
    std::vector<double> p(size, 0.0);
    p[at] = 1.0;
    return Pmf(std::move(p));
}

JointPmf::JointPmf(std::vector<std::size_t> dims, std::vector<double> probs)
    : dims_(std::move(dims)), probs_(std::move(probs)) {
    if (dims_.size() != 2 && dims_.size() != 3)
        throw UsageError("joint pmf: rank must be 2 or 3");
    std::size_t total = 1;
    for (std::size_t d : dims_) {
        if (d == 0) throw ValidationError("joint pmf: zero-size axis");
        total *= d;
    }
    if (probs_.size() != total)
        throw ValidationError("joint pmf: tensor has " + std::to_string(probs_.size()) +
                              " entries, dims need " + std::to_string(total));
    check_mass(probs_, "joint pmf");
}

JointPmf JointPmf::outer(const Pmf& a, const Pmf& b) {
    std::vector<double> probs(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            probs[i * b.size() + j] = a.at(i) * b.at(j);
    return JointPmf({a.size(), b.size()}, std::move(probs));
}

JointPmf JointPmf::outer(const Pmf& a, const Pmf& b, const Pmf& c) {
    std::vector<double> probs(a.size() * b.size() * c.size());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            for (std::size_t k = 0; k < c.size(); ++k)
                probs[idx++] = a.at(i) * b.at(j) * c.at(k);
    return JointPmf({a.size(), b.size(), c.size()}, std::move(probs));
}

std::size_t JointPmf::flat_index(std::size_t i, std::size_t j) const {
    if (rank() != 2) throw UsageError("joint pmf: rank-2 index on rank-3 tensor");
    if (i >= dims_[0] || j >= dims_[1]) throw UsageError("joint pmf: index out of range");
    return i * dims_[1] + j;
}

std::size_t JointPmf::flat_index(std::size_t i, std::size_t j, std::size_t k) const {
    if (rank() != 3) throw UsageError("joint pmf: rank-3 index on rank-2 tensor");
    if (i >= dims_[0] || j >= dims_[1] || k >= dims_[2])
        throw UsageError("joint pmf: index out of range");
    return (i * dims_[1] + j) * dims_[2] + k;
}

double entropy(const Pmf& p, LogBase base) {
    return from_nats(entropy_nats(p.probs()), base);
}

double entropy(const JointPmf& joint, LogBase base) {
    return from_nats(entropy_nats(joint.probs()), base);
}

double mutual_information(const JointPmf& joint, LogBase base) {
    if (joint.rank() != 2) throw UsageError("mutual information needs a rank-2 joint");
    const double h_a = entropy(marginal(joint, 0), LogBase::nats);
    const double h_b = entropy(marginal(joint, 1), LogBase::nats);
    const double h_ab = entropy(joint, LogBase::nats);
    // I = H(A)+H(B)-H(A,B); clamp the tiny negative produced by cancellation
    return from_nats(std::max(0.0, h_a + h_b - h_ab), base);
}

double conditional_mutual_information(const JointPmf& joint,
                                      std::size_t conditioning_axis, LogBase base) {
    if (joint.rank() != 3)
        throw UsageError("conditional mutual information needs a rank-3 joint");
    if (conditioning_axis > 2) throw UsageError("conditioning axis out of range");
    std::size_t a = 3, b = 3;
    for (std::size_t ax = 0; ax < 3; ++ax) {
        if (ax == conditioning_axis) continue;
        if (a == 3)
            a = ax;
        else
            b = ax;
    }
    // I(A;B|Z) = H(A,Z) + H(B,Z) - H(Z) - H(A,B,Z)
    const double h_az = entropy(marginal(joint, a, conditioning_axis), LogBase::nats);
    const double h_bz = entropy(marginal(joint, b, conditioning_axis), LogBase::nats);
    const double h_z = entropy(marginal(joint, conditioning_axis), LogBase::nats);
    const double h_abz = entropy(joint, LogBase::nats);
    return from_nats(std::max(0.0, h_az + h_bz - h_z - h_abz), base);
}

double mutual_information_against_axis(const JointPmf& joint, std::size_t target_axis,
                                       LogBase base) {
    if (joint.rank() != 3)
        throw UsageError("axis mutual information needs a rank-3 joint");
    if (target_axis > 2) throw UsageError("target axis out of range");
    std::size_t a = 3, b = 3;
    for (std::size_t ax = 0; ax < 3; ++ax) {
        if (ax == target_axis) continue;
        if (a == 3)
            a = ax;
        else
            b = ax;
    }
    const double h_rest = entropy(marginal(joint, a, b), LogBase::nats);
    const double h_t = entropy(marginal(joint, target_axis), LogBase::nats);
    const double h_all = entropy(joint, LogBase::nats);
    return from_nats(std::max(0.0, h_rest + h_t - h_all), base);
}

Pmf marginal(const JointPmf& joint, std::size_t axis) {
    if (axis >= joint.rank()) throw UsageError("marginal: axis out of range");
    const auto& dims = joint.dims();
    std::vector<double> out(dims[axis], 0.0);

    // strides of the row-major tensor
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t ax = dims.size() - 1; ax-- > 0;)
        stride[ax] = stride[ax + 1] * dims[ax + 1];

    const auto probs = joint.probs();
    for (std::size_t flat = 0; flat < probs.size(); ++flat)
        out[(flat / stride[axis]) % dims[axis]] += probs[flat];
    return Pmf(std::move(out));
}

JointPmf marginal(const JointPmf& joint, std::size_t axis_a, std::size_t axis_b) {
    if (axis_a >= joint.rank() || axis_b >= joint.rank() || axis_a == axis_b)
        throw UsageError("marginal: bad axis pair");
    const auto& dims = joint.dims();
    std::vector<std::size_t> stride(dims.size(), 1);
    for (std::size_t ax = dims.size() - 1; ax-- > 0;)
        stride[ax] = stride[ax + 1] * dims[ax + 1];

    std::vector<double> out(dims[axis_a] * dims[axis_b], 0.0);
    const auto probs = joint.probs();
    for (std::size_t flat = 0; flat < probs.size(); ++flat) {
        const std::size_t ia = (flat / stride[axis_a]) % dims[axis_a];
        const std::size_t ib = (flat / stride[axis_b]) % dims[axis_b];
        out[ia * dims[axis_b] + ib] += probs[flat];
    }
    return JointPmf({dims[axis_a], dims[axis_b]}, std::move(out));
}

std::variant<Pmf, JointPmf> marginalize(const JointPmf& joint,
                                        const std::vector<std::size_t>& keep_axes) {
    if (keep_axes.empty()) throw UsageError("marginalize: empty keep set");
    for (std::size_t i = 0; i < keep_axes.size(); ++i) {
        if (keep_axes[i] >= joint.rank())
            throw UsageError("marginalize: axis out of range");
        if (i > 0 && keep_axes[i] <= keep_axes[i - 1])
            throw UsageError("marginalize: axes must be strictly increasing");
    }
    if (keep_axes.size() >= joint.rank())
        throw UsageError("marginalize: keep set must be a proper subset");

    if (keep_axes.size() == 1) return marginal(joint, keep_axes[0]);
    return marginal(joint, keep_axes[0], keep_axes[1]);
}

} // namespace rfidcap
