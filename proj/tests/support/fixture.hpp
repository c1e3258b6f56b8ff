#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace semrel::fixture {

inline std::filesystem::path fixture_dir()
{
    return SEMREL_FIXTURE_DIR;
}

inline std::filesystem::path data_dir()
{
    return SEMREL_DATA_DIR;
}

inline std::ifstream open_fixture(const std::string& name)
{
    std::ifstream in(fixture_dir() / name);
    if (!in) {
        throw std::runtime_error("missing fixture " + name);
    }
    return in;
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Fresh, empty scratch directory under the build tree.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / ("semrel_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace semrel::fixture

#include "semrel/pipeline.hpp"

namespace semrel::fixture {

/// The bundled fixture pushed through ingest, link and rule-based extraction in memory.
struct FixtureData {
    std::vector<Document> documents;
    std::vector<Topic> topics;
    std::vector<QrelEntry> qrels;
    KnowledgeBase kb;
    Lexicon lexicon;
    std::vector<AnalyzedText> doc_texts;
    std::vector<AnalyzedText> topic_texts;
    std::vector<ConceptMention> doc_mentions;
    std::vector<ConceptMention> topic_mentions;
    std::vector<RelationInstance> doc_relations;
    std::vector<RelationInstance> topic_relations;
    std::vector<QueryAnalysis> queries;
};

inline FixtureData load_fixture(const TextOptions& text = {})
{
    FixtureData f;
    {
        auto in = open_fixture("corpus.ohsu");
        f.documents = parse_ohsumed_corpus(in);
    }
    {
        auto in = open_fixture("topics.ohsu");
        f.topics = parse_topics(in);
    }
    {
        auto in = open_fixture("qrels.txt");
        f.qrels = parse_qrels(in);
    }
    {
        auto concepts = open_fixture("kb_concepts.txt");
        auto relations = open_fixture("kb_relations.txt");
        f.kb = load_kb(concepts, relations);
    }
    f.lexicon = build_lexicon(f.kb, text);
    f.doc_texts = analyze_documents(f.documents);
    f.topic_texts = analyze_topics(f.topics);
    f.doc_mentions = link_texts(f.doc_texts, f.lexicon);
    f.topic_mentions = link_texts(f.topic_texts, f.lexicon);
    f.doc_relations = extract_texts(f.doc_mentions, f.kb);
    f.topic_relations = extract_texts(f.topic_mentions, f.kb);
    for (const auto& t : f.topic_texts) {
        f.queries.push_back(analyze_query(t, f.topic_mentions, f.topic_relations, text));
    }
    return f;
}

}  // namespace semrel::fixture
