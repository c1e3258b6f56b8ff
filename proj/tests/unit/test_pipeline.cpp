#include <gtest/gtest.h>

#include <sstream>

#include "fixture.hpp"
#include "semrel/error.hpp"
#include "semrel/pipeline.hpp"

using namespace semrel;
namespace fs = std::filesystem;

namespace {

PipelineConfig fixture_config(const std::string& scratch)
{
    PipelineConfig config;
    load_config_file(fixture::fixture_dir() / "semrel.conf", config);
    config.work_dir = fixture::scratch_dir(scratch);
    return config;
}

std::vector<RunEntry> read_run(const fs::path& path)
{
    std::ifstream in(path);
    return parse_run(in);
}

}  // namespace

TEST(Config, ParseLines)
{
    std::istringstream in("# comment\n\nk1 = 0.9\n  b=0.4  \nrepresentation = boc\n");
    const auto pairs = parse_config(in);
    ASSERT_EQ(pairs.size(), 3u);
    EXPECT_EQ(pairs[1], (std::pair<std::string, std::string>{"b", "0.4"}));
    std::istringstream bad("just a line\n");
    EXPECT_THROW(parse_config(bad), ParseError);
}

TEST(Config, FileResolvesRelativePaths)
{
    PipelineConfig config;
    load_config_file(fixture::fixture_dir() / "semrel.conf", config);
    EXPECT_EQ(config.corpus, fixture::fixture_dir() / "corpus.ohsu");
    EXPECT_EQ(config.representation, Representation::bor);
    EXPECT_EQ(config.granularity, Granularity::passage);
    EXPECT_EQ(config.ranking.passage_len, 2u);
    EXPECT_EQ(config.effective_topic_set(), "topics");
    EXPECT_EQ(config.effective_run_tag(), "bor.passage");
    EXPECT_THROW(load_config_file(fixture::fixture_dir() / "absent.conf", config), MissingInputError);
}

TEST(Config, SetErrors)
{
    PipelineConfig config;
    EXPECT_THROW(config.set("colour", "blue"), ConfigError);
    EXPECT_THROW(config.set("k1", "fast"), ConfigError);
    EXPECT_THROW(config.set("representation", "bag"), ConfigError);
    EXPECT_THROW(config.set("stemming", "maybe"), ConfigError);
    config.set("stemming", "on");
    EXPECT_TRUE(config.text.stemming);
}

TEST(Config, PassageRequiresBor)
{
    PipelineConfig config;
    config.granularity = Granularity::passage;
    for (auto r : {Representation::bow, Representation::boc}) {
        config.representation = r;
        EXPECT_THROW(config.validate(), ConfigError);
    }
    config.representation = Representation::bor;
    EXPECT_NO_THROW(config.validate());
    config.ranking.b = 2.0;
    EXPECT_THROW(config.validate(), ConfigError);
}

TEST(Config, HashTracksParametersNotOutputLocations)
{
    PipelineConfig a;
    PipelineConfig b;
    b.work_dir = "/elsewhere";
    b.run_dir = "/runs";
    EXPECT_EQ(a.hash(), b.hash());
    EXPECT_EQ(a.hash().size(), 16u);
    b.ranking.k1 = 0.9;
    EXPECT_NE(a.hash(), b.hash());
}

TEST(Config, ArtifactPaths)
{
    PipelineConfig config;
    config.work_dir = "/w";
    config.topics = "/data/topics.ohsu";
    EXPECT_EQ(config.index_path(), fs::path("/w/index/bor.passage.idx"));
    EXPECT_EQ(config.run_path(), fs::path("/w/runs/topics.bor.passage.run"));
}

TEST(BuildUnits, RelationTfCountsSentences)
{
    Sentence s0;
    s0.index = 0;
    Sentence s1;
    s1.index = 1;
    const std::vector<AnalyzedText> docs{{"D", {s0, s1}}};
    const std::vector<RelationInstance> rel{
        {"C1", "treats", "C2", "D", 0}, {"C1", "treats", "C2", "D", 1}, {"C2", "causes", "C1", "D", 1}};
    const auto doc = build_units(docs, TermSpace::relations, Granularity::doc, 2, {}, rel, {});
    ASSERT_EQ(doc.size(), 1u);
    EXPECT_EQ(doc[0].terms.size(), 3u);
    const auto passages = build_units(docs, TermSpace::relations, Granularity::passage, 1, {}, rel, {});
    ASSERT_EQ(passages.size(), 2u);
    EXPECT_EQ(passages[0].unit_id, "D#0");
    EXPECT_EQ(passages[0].terms, (std::vector<std::string>{"C1|treats|C2"}));
    EXPECT_EQ(passages[1].terms.size(), 2u);
}

TEST(AnalyzeQuery, FixtureRelationSets)
{
    const auto f = fixture::load_fixture();
    ASSERT_EQ(f.queries.size(), 4u);
    EXPECT_FALSE(f.queries[0].relation_set().empty());
    EXPECT_TRUE(f.queries[3].relation_set().empty());
    EXPECT_TRUE(f.queries[3].concepts.empty());
    EXPECT_FALSE(f.queries[3].words.empty());
}

TEST(Batch, FixtureNaProtocol)
{
    const auto config = fixture_config("batch_na");
    const auto outcome = run_batch(config);
    EXPECT_FALSE(outcome.summary.empty());

    const auto run = read_run(config.run_path());
    EXPECT_FALSE(run.empty());
    for (const auto& e : run) {
        EXPECT_NE(e.topic_id, "OHSU4");
        EXPECT_EQ(e.run_tag, "bor.passage");
    }
    std::ifstream na(config.run_path().string() + ".na");
    EXPECT_EQ(read_na_sidecar(na), (std::set<std::string>{"OHSU4"}));

    const std::string report = fixture::read_file(config.run_path().string() + ".eval");
    EXPECT_NE(report.find("OHSU4\tbor.passage\tNA"), std::string::npos);
    EXPECT_NE(report.find("# na_topics\tbor.passage\t1"), std::string::npos);
}

TEST(Batch, ArtifactsCarryConfigHash)
{
    const auto config = fixture_config("batch_hash");
    const auto outcome = run_batch(config);
    const std::string tag = "config=" + config.hash();
    ASSERT_GE(outcome.artifacts.size(), 6u);
    for (const auto& path : outcome.artifacts) {
        const std::string text = fixture::read_file(path);
        EXPECT_NE(text.substr(0, text.find('\n', text.find('\n') + 1) + 1).find(tag), std::string::npos) << path;
    }
}

TEST(Batch, EveryRepresentationRuns)
{
    for (auto [repr, gran] : {std::pair{"bow", "doc"}, {"boc", "doc"}, {"bor", "doc"}, {"bor", "passage"}}) {
        auto config = fixture_config(std::string("batch_") + repr + "_" + gran);
        config.set("representation", repr);
        config.set("granularity", gran);
        EXPECT_NO_THROW(run_batch(config)) << repr << "/" << gran;
        EXPECT_TRUE(fs::exists(config.run_path()));
    }
}

TEST(Batch, ExternalAnnotationsReproduceRuleRun)
{
    const auto rule = fixture_config("extract_rule");
    run_batch(rule);

    auto external = fixture_config("extract_external");
    external.extraction = ExtractionMethod::external;
    external.external_annotations = rule.annotations_path();
    run_batch(external);
    EXPECT_EQ(read_run(external.run_path()), read_run(rule.run_path()));
}

TEST(Batch, MalformedExternalAnnotations)
{
    auto config = fixture_config("extract_bad");
    const auto bad = config.work_dir / "bad.tsv";
    std::ofstream(bad) << "87049001\t0\tC0004057\ttreats\tC0027051\tlearned\t1.7\n";
    config.extraction = ExtractionMethod::external;
    config.external_annotations = bad;
    run_ingest(config);
    EXPECT_THROW(run_extract(config), ParseError);
}

TEST(Stages, MissingUpstreamArtifact)
{
    const auto config = fixture_config("missing_upstream");
    EXPECT_THROW(run_index(config), MissingInputError);
    auto no_corpus = config;
    no_corpus.corpus = config.work_dir / "nope.ohsu";
    EXPECT_THROW(run_ingest(no_corpus), MissingInputError);
}

TEST(Stages, RerunIsByteIdentical)
{
    const auto config = fixture_config("rerun");
    const auto first = run_batch(config);
    std::vector<std::string> before;
    for (const auto& p : first.artifacts) {
        before.push_back(fixture::read_file(p));
    }
    const auto second = run_batch(config);
    ASSERT_EQ(second.artifacts, first.artifacts);
    for (std::size_t i = 0; i < before.size(); ++i) {
        EXPECT_EQ(fixture::read_file(second.artifacts[i]), before[i]) << first.artifacts[i];
    }
}

TEST(Compare, FixtureRunsProduceTable)
{
    const auto bor = fixture_config("compare_bor");
    run_batch(bor);
    auto boc = fixture_config("compare_boc");
    boc.set("representation", "boc");
    boc.set("granularity", "doc");
    run_batch(boc);
    const auto out = bor.work_dir / "cmp.txt";
    const auto outcome = run_compare(bor, bor.run_path(), boc.run_path(), out);
    EXPECT_NE(outcome.details.find("paired t-test"), std::string::npos);
    EXPECT_NE(outcome.details.find("OHSU4"), std::string::npos);
    EXPECT_EQ(fixture::read_file(out).find(outcome.details.substr(0, 20)) != std::string::npos, true);
}
