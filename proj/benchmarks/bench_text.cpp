#include <benchmark/benchmark.h>

#include <fstream>

#include "semrel/corpus_io.hpp"
#include "semrel/eval.hpp"
#include "semrel/textproc.hpp"

using namespace semrel;

namespace {

std::string fixture_abstracts()
{
    std::ifstream in(std::string(SEMREL_FIXTURE_DIR) + "/corpus.ohsu");
    std::string text;
    for (const auto& d : parse_ohsumed_corpus(in)) {
        text += d.abstract + " ";
    }
    return text;
}

}  // namespace

static void BM_Tokenize(benchmark::State& state)
{
    const std::string text = fixture_abstracts();
    for (auto _ : state) {
        auto tokens = tokenize(text);
        benchmark::DoNotOptimize(tokens.data());
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Tokenize);

static void BM_SplitSentences(benchmark::State& state)
{
    const std::string text = fixture_abstracts();
    for (auto _ : state) {
        auto sentences = split_sentences(text);
        benchmark::DoNotOptimize(sentences.data());
    }
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_SplitSentences);

static void BM_PorterStem(benchmark::State& state)
{
    const std::vector<std::string> words{"generalizations", "hypertension", "bleeding", "patients",
                                         "relational",      "oscillators",  "therapy",  "infarction"};
    for (auto _ : state) {
        for (const auto& w : words) {
            auto s = porter_stem(w);
            benchmark::DoNotOptimize(s.data());
        }
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words.size()));
}
BENCHMARK(BM_PorterStem);

static void BM_Ndcg(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<RunEntry> run;
    std::vector<QrelEntry> judged;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string doc = "d" + std::to_string(i);
        run.push_back({"q", doc, static_cast<std::int64_t>(i + 1), static_cast<double>(n - i), "r"});
        if (i % 7 == 0) {
            judged.push_back({"q", doc, static_cast<int>(i % 3)});
        }
    }
    const Qrels qrels(judged);
    for (auto _ : state) {
        auto v = ndcg(run, "q", qrels);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_Ndcg)->Arg(100)->Arg(1000);
