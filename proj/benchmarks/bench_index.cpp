#include <benchmark/benchmark.h>

#include "semrel/ranker.hpp"
#include "synthetic.hpp"

using namespace semrel;

static void BM_BuildIndex(benchmark::State& state)
{
    const auto units = bench::synthetic_units(static_cast<std::size_t>(state.range(0)), 5000, 120);
    for (auto _ : state) {
        auto index = build_index(units, TermSpace::words);
        benchmark::DoNotOptimize(index.term_count());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildIndex)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);

static void BM_RankDocuments(benchmark::State& state)
{
    const auto index =
        build_index(bench::synthetic_units(static_cast<std::size_t>(state.range(0)), 5000, 120), TermSpace::words);
    const std::vector<std::string> query{"t3", "t17", "t120", "t999", "t2500"};
    const RankingParams params;
    for (auto _ : state) {
        auto run = rank_documents(query, "q", index, params, "bench");
        benchmark::DoNotOptimize(run.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RankDocuments)->RangeMultiplier(4)->Range(1024, 65536);

// Relation tokens are sparse, so passages hold a handful of terms drawn from a small space.
static void BM_PassageWeighted(benchmark::State& state)
{
    const auto index = build_index(bench::synthetic_units(static_cast<std::size_t>(state.range(0)), 400, 3, 4),
                                   TermSpace::relations, Granularity::passage);
    QueryAnalysis query;
    query.topic_id = "q";
    query.relations = {"t0", "t5", "t40", "t200"};
    const RankingParams params;
    for (auto _ : state) {
        auto run = score_passage_weighted(query, index, params, "bench");
        benchmark::DoNotOptimize(run->data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PassageWeighted)->RangeMultiplier(4)->Range(4096, 262144);
