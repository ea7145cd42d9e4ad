#pragma once

/******************************************************************************
 * Finite probability mass functions and the information measures on them.
 *
 * All measures are computed internally in nats; LogBase picks the unit at the
 * call boundary (the bits/nats factor ln 2 is applied exactly once, here).
 * Probabilities below kProbFloor are treated as exact zeros inside logs, so
 * 0 * log 0 contributes nothing.
 ******************************************************************************/

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace rfidcap {

// Alphabet letter for finite channels; alphabets are capped at 256 symbols.
using Symbol = std::uint8_t;

enum class LogBase { bits, nats };

inline constexpr double kLn2 = 0.6931471805599453;
inline constexpr double kProbFloor = 1e-15;
// Mass must total one within this tolerance for a pmf to validate.
inline constexpr double kMassTolerance = 1e-9;

inline double from_nats(double x, LogBase base) {
    return base == LogBase::nats ? x : x / kLn2;
}
inline double to_nats(double x, LogBase base) {
    return base == LogBase::nats ? x : x * kLn2;
}

class Pmf {
public:
    explicit Pmf(std::vector<double> probs);

    static Pmf uniform(std::size_t size);
    static Pmf point_mass(std::size_t size, std::size_t at);

    std::size_t size() const { return probs_.size(); }
    double at(std::size_t i) const { return probs_[i]; }
    std::span<const double> probs() const { return probs_; }

private:
    std::vector<double> probs_;
};

// Dense joint pmf of rank 2 or 3, row-major over dims().
class JointPmf {
public:
    JointPmf(std::vector<std::size_t> dims, std::vector<double> probs);

    static JointPmf outer(const Pmf& a, const Pmf& b);
    static JointPmf outer(const Pmf& a, const Pmf& b, const Pmf& c);

    std::size_t rank() const { return dims_.size(); }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::span<const double> probs() const { return probs_; }

    std::size_t flat_index(std::size_t i, std::size_t j) const;
    std::size_t flat_index(std::size_t i, std::size_t j, std::size_t k) const;
    double at(std::size_t i, std::size_t j) const { return probs_[flat_index(i, j)]; }
    double at(std::size_t i, std::size_t j, std::size_t k) const {
        return probs_[flat_index(i, j, k)];
    }

private:
    std::vector<std::size_t> dims_;
    std::vector<double> probs_;
};

double entropy(const Pmf& p, LogBase base);
double entropy(const JointPmf& joint, LogBase base);

// I(A;B) of a rank-2 joint.
double mutual_information(const JointPmf& joint, LogBase base);

// I(A;B | C) of a rank-3 joint, where C is the conditioning axis and (A,B)
// are the remaining axes in order.
double conditional_mutual_information(const JointPmf& joint,
                                      std::size_t conditioning_axis, LogBase base);

// I(rest ; target) of a rank-3 joint, e.g. I(Q1,Q2 ; S) with target_axis = 2.
double mutual_information_against_axis(const JointPmf& joint,
                                       std::size_t target_axis, LogBase base);

Pmf marginal(const JointPmf& joint, std::size_t axis);
// Rank-3 to rank-2 marginal; axis order in the result follows (axis_a, axis_b).
JointPmf marginal(const JointPmf& joint, std::size_t axis_a, std::size_t axis_b);

// Set-style marginalization. keep_axes must be non-empty, strictly increasing,
// and a proper subset of the joint's axes.
std::variant<Pmf, JointPmf> marginalize(const JointPmf& joint,
                                        const std::vector<std::size_t>& keep_axes);

} // namespace rfidcap
