#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "rfidcap/prob.hpp"
#include "rfidcap/rng.hpp"
#include "rfidcap/typicality.hpp"

using namespace rfidcap;

namespace {

std::vector<Symbol> draw_iid(const Pmf& p, std::size_t n, Rng& rng) {
    CdfSampler draw(p.probs());
    std::vector<Symbol> seq(n);
    for (auto& s : seq) s = Symbol(draw(rng));
    return seq;
}

double acceptance_rate(const Pmf& p, std::size_t n, double eps, int reps,
                       Rng& rng) {
    const TypicalityChecker check(p, eps);
    int hits = 0;
    for (int r = 0; r < reps; ++r)
        if (check.is_typical(draw_iid(p, n, rng))) ++hits;
    return double(hits) / reps;
}

} // namespace

TEST_CASE("neg_log is the exact sequence score") {
    const Pmf p({0.5, 0.25, 0.25});
    const TypicalityChecker check(p, 0.1);
    const std::vector<Symbol> seq = {0, 1, 2, 0};
    const double expected = -(std::log(0.5) * 2 + std::log(0.25) * 2);
    CHECK(std::abs(check.neg_log(seq) - expected) < 1e-12);
    CHECK(std::abs(check.entropy_nats() - entropy(p, LogBase::nats)) < 1e-12);
}

TEST_CASE("zero probability letter scores infinite") {
    const Pmf p({1.0, 0.0});
    const TypicalityChecker check(p, 0.5);
    const std::vector<Symbol> ok = {0, 0, 0};
    const std::vector<Symbol> bad = {0, 1, 0};
    CHECK(check.is_typical(ok));
    CHECK(std::isinf(check.neg_log(bad)));
    CHECK_FALSE(check.is_typical(bad));
}

TEST_CASE("acceptance approaches one and grows with n") {
    // law of large numbers: the empirical score concentrates at the entropy
    const Pmf p({0.7, 0.2, 0.1});
    Rng rng(17);
    const double eps = 0.2;
    const double a64 = acceptance_rate(p, 64, eps, 500, rng);
    const double a256 = acceptance_rate(p, 256, eps, 500, rng);
    const double a1024 = acceptance_rate(p, 1024, eps, 500, rng);
    CHECK(a256 >= 0.9);
    CHECK(a1024 >= a256 - 0.05); // monotone up to sampling noise
    CHECK(a256 >= a64 - 0.05);
    CHECK(a1024 >= 0.97);
}

TEST_CASE("joint typicality demands every subset") {
    // correlated pair: y = x with probability 0.9
    const JointPmf j({2, 2}, {0.45, 0.05, 0.05, 0.45});
    const JointTypicalityChecker check(j, 0.1);
    Rng rng(5);

    const std::size_t n = 512;
    std::vector<Symbol> x(n), y(n), z(n);
    CdfSampler flip(std::vector<double>{0.9, 0.1});
    CdfSampler coin(std::vector<double>{0.5, 0.5});
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = Symbol(coin(rng));
        y[i] = Symbol(flip(rng) ? 1 - x[i] : x[i]);
        z[i] = Symbol(coin(rng)); // independent of x
    }
    CHECK(check.is_typical(x, y));
    // marginally typical but jointly wrong: the pair subset rejects it
    CHECK_FALSE(check.is_typical(x, z));
}

TEST_CASE("subset scores agree with whole-tuple checks") {
    const JointPmf j({2, 2}, {0.45, 0.05, 0.05, 0.45});
    const JointTypicalityChecker check(j, 0.15);
    Rng rng(8);
    const std::size_t n = 128;
    std::vector<Symbol> x(n), y(n);
    CdfSampler flip(std::vector<double>{0.9, 0.1});
    CdfSampler coin(std::vector<double>{0.5, 0.5});
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = Symbol(coin(rng));
        y[i] = Symbol(flip(rng) ? 1 - x[i] : x[i]);
    }
    const std::vector<std::span<const Symbol>> seqs = {x, y};
    bool by_subsets = true;
    for (unsigned mask = 1; mask < 4; ++mask) {
        const double score = check.subset_neg_log(mask, seqs) / double(n);
        if (std::abs(score - check.subset_entropy(mask)) > check.epsilon())
            by_subsets = false;
    }
    CHECK(by_subsets == check.is_typical(x, y));
}

TEST_CASE("one-shot helpers honor the unit") {
    const Pmf p({0.5, 0.5});
    Rng rng(21);
    const auto seq = draw_iid(p, 64, rng);
    // uniform binary: every sequence scores exactly the entropy
    CHECK(is_typical(p, seq, 0.01, LogBase::bits));
    CHECK(is_typical(p, seq, 0.01, LogBase::nats));

    const JointPmf j = JointPmf::outer(p, p);
    const auto a = draw_iid(p, 64, rng);
    const auto b = draw_iid(p, 64, rng);
    const std::vector<std::span<const Symbol>> seqs = {a, b};
    CHECK(is_jointly_typical(j, seqs, 0.01, LogBase::nats));
}
