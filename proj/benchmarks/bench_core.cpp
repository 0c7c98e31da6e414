#include <benchmark/benchmark.h>

#include "sze/reconstruction.hpp"
#include "sze/spectral.hpp"
#include "sze/synthgen.hpp"

namespace {

sze::Graph planted(int n, int clusters, std::uint64_t seed) {
    sze::GeneratorConfig cfg;
    cfg.n = n;
    cfg.num_clusters = clusters;
    cfg.eta1 = 0.2;
    cfg.eta2 = 0.2;
    cfg.seed = seed;
    return sze::generate(cfg).g;
}

sze::SummaryConfig summary_config() {
    sze::SummaryConfig cfg;
    cfg.epsilon = 0.5;
    cfg.loop = sze::LoopMode::classic;
    cfg.fallback_last = true;
    return cfg;
}

void BM_EdgeDensity(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const sze::Graph g = planted(n, 5, 1);
    sze::VertexSet a, b;
    for (int v = 0; v < n / 2; ++v) a.push_back(v);
    for (int v = n / 2; v < n; ++v) b.push_back(v);
    for (auto _ : state) benchmark::DoNotOptimize(sze::edge_density(g, a, b));
    state.SetComplexityN(n);
}
BENCHMARK(BM_EdgeDensity)->Range(256, 2048)->Complexity();

void BM_CheckPair(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const sze::Graph g = planted(n, 5, 2);
    sze::VertexSet a, b;
    for (int v = 0; v < n / 2; ++v) a.push_back(v);
    for (int v = n / 2; v < n; ++v) b.push_back(v);
    for (auto _ : state) benchmark::DoNotOptimize(sze::check_pair(g, a, b, 0.5));
    state.SetComplexityN(n);
}
BENCHMARK(BM_CheckPair)->Range(256, 2048)->Complexity();

void BM_Summarize(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const sze::Graph g = planted(n, 5, 3);
    const sze::SummaryConfig cfg = summary_config();
    for (auto _ : state) benchmark::DoNotOptimize(sze::summarize(g, cfg));
    state.SetComplexityN(n);
}
BENCHMARK(BM_Summarize)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const sze::Graph g = planted(n, 5, 4);
    for (auto _ : state) benchmark::DoNotOptimize(sze::spectrum(g));
    state.SetComplexityN(n);
}
BENCHMARK(BM_Spectrum)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SpectralDistance(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    sze::SpectralSignature s1, s2;
    s1.source_n = s2.source_n = n;
    for (int i = 0; i < n; ++i) {
        s1.eigs.push_back(i * 0.5);
        s2.eigs.push_back(i * 0.51);
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(sze::spectral_distance(s1, s2, n / 2));
}
BENCHMARK(BM_SpectralDistance)->Range(64, 4096);

void BM_BlowUp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const sze::Graph g = planted(n, 5, 5);
    const sze::SummarizeResult res = sze::summarize(g, summary_config());
    for (auto _ : state)
        benchmark::DoNotOptimize(sze::blow_up(res.summary.reduced, res.summary.internal));
    state.SetComplexityN(n);
}
BENCHMARK(BM_BlowUp)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ReconstructionError(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const sze::DensityMatrix a = sze::DensityMatrix::Constant(n, n, 0.25);
    const sze::DensityMatrix b = sze::DensityMatrix::Constant(n, n, 0.50);
    for (auto _ : state)
        benchmark::DoNotOptimize(sze::reconstruction_error(a, b, 2.0, true));
    state.SetComplexityN(n);
}
BENCHMARK(BM_ReconstructionError)->Range(256, 2048)->Complexity();

}  // namespace

BENCHMARK_MAIN();
