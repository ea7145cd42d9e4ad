#include <benchmark/benchmark.h>

#include <vector>

#include "rfidcap/channels.hpp"
#include "rfidcap/prob.hpp"
#include "rfidcap/regions.hpp"
#include "rfidcap/rng.hpp"
#include "rfidcap/sim_discrete.hpp"
#include "rfidcap/typicality.hpp"

using namespace rfidcap;

namespace {

JointPmf random_joint(std::size_t a, std::size_t b, Rng& rng) {
    std::vector<double> p(a * b);
    double total = 0;
    for (auto& v : p) {
        v = rng.uniform01() + 1e-12;
        total += v;
    }
    for (auto& v : p) v /= total;
    return JointPmf({a, b}, p);
}

DiscreteSystem binary_system() {
    return DiscreteSystem{BccChannel::bsc_pair(0.05, 0.1),
                          ImperfectionChannel::identity(2),
                          ImperfectionChannel::identity(2),
                          MacChannel::xor_erasure(0.3)};
}

} // namespace

static void BM_MutualInformation(benchmark::State& state) {
    Rng rng(7);
    const std::size_t k = std::size_t(state.range(0));
    const JointPmf j = random_joint(k, k, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(mutual_information(j, LogBase::nats));
    state.SetItemsProcessed(state.iterations() * int64_t(k * k));
}
BENCHMARK(BM_MutualInformation)->Arg(8)->Arg(64);

static void BM_InducedUplinkJoint(benchmark::State& state) {
    const DiscreteSystem sys = binary_system();
    const Pmf q1 = Pmf::uniform(2), q2 = Pmf::uniform(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            induced_mac_joint(q1, q2, sys.imp1, sys.imp2, sys.mac));
}
BENCHMARK(BM_InducedUplinkJoint);

static void BM_TypicalityCheck(benchmark::State& state) {
    const std::size_t n = std::size_t(state.range(0));
    const Pmf p({0.6, 0.4});
    Rng rng(11);
    CdfSampler draw(p.probs());
    std::vector<Symbol> seq(n);
    for (auto& s : seq) s = Symbol(draw(rng));
    const TypicalityChecker check(p, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(check.is_typical(seq));
    state.SetItemsProcessed(state.iterations() * int64_t(n));
}
BENCHMARK(BM_TypicalityCheck)->Arg(64)->Arg(512);

static void BM_GaussianBoundsGrid(benchmark::State& state) {
    const GaussianSystem sys{10.0, 1.0, 2.0, 5.0, 0.9, 0.9};
    for (auto _ : state) {
        double acc = 0;
        for (int k = 0; k <= 100; ++k)
            acc += gaussian_bounds(sys, k / 100.0).data_sum;
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_GaussianBoundsGrid);

static void BM_GaussianMembership(benchmark::State& state) {
    const GaussianSystem sys{10.0, 1.0, 2.0, 5.0, 0.9, 0.9};
    const RateQuadruple r{0.5, 0.3, 0.05, 0.05};
    for (auto _ : state)
        benchmark::DoNotOptimize(gaussian_membership(r, sys));
}
BENCHMARK(BM_GaussianMembership);

static void BM_DiscreteFrontierSearch(benchmark::State& state) {
    const DiscreteSystem sys = binary_system();
    for (auto _ : state) {
        Rng rng(3);
        benchmark::DoNotOptimize(
            discrete_frontier_search(sys, 2, 2, std::size_t(state.range(0)), rng));
    }
}
BENCHMARK(BM_DiscreteFrontierSearch)->Arg(50)->Arg(200);

static void BM_DownlinkCodebookBuild(benchmark::State& state) {
    const DiscreteSystem sys = binary_system();
    // one common message per unit, short blocks: measures list assembly cost
    JointPmf p_uvx({2, 2, 2}, {0.25, 0, 0, 0.25, 0.25, 0, 0, 0.25});
    const std::size_t n = std::size_t(state.range(0));
    for (auto _ : state) {
        Rng rng(5);
        benchmark::DoNotOptimize(
            build_discrete_bcc_codebook(p_uvx, sys.bcc, 0.01, 0.01, n, 0.15, rng));
    }
}
BENCHMARK(BM_DownlinkCodebookBuild)->Arg(32)->Arg(96);

BENCHMARK_MAIN();
