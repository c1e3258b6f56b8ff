#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semrel/corpus_io.hpp"
#include "semrel/eval.hpp"
#include "semrel/index.hpp"
#include "semrel/kb.hpp"
#include "semrel/linker.hpp"
#include "semrel/ranker.hpp"
#include "semrel/relext.hpp"
#include "semrel/textproc.hpp"

namespace semrel {

/// Bag-of-words, bag-of-concepts, bag-of-relations.
enum class Representation { bow, boc, bor };

std::string_view to_string(Representation representation);
Representation parse_representation(std::string_view text);
TermSpace term_space_of(Representation representation);

/// Where relation annotations come from: the rule-based extractor or an external file
/// (e.g. produced by the learned extractor).
enum class ExtractionMethod { rule, external };

struct PipelineConfig {
    std::filesystem::path corpus;
    std::filesystem::path topics;
    std::filesystem::path qrels;
    std::filesystem::path kb_concepts;
    std::filesystem::path kb_relations;
    std::filesystem::path abbreviations;  // empty: built-in list
    std::filesystem::path stopword_file;  // empty: built-in list

    std::filesystem::path work_dir = ".";
    // Empty means the documented default under work_dir.
    std::filesystem::path annotations;
    std::filesystem::path mentions;
    std::filesystem::path index_dir;
    std::filesystem::path run_dir;

    std::string topic_set;  // empty: stem of the topics file
    std::string run_tag;    // empty: "<repr>.<gran>"

    RankingParams ranking;
    EvalParams evaluation;
    TextOptions text;
    Representation representation = Representation::bor;
    Granularity granularity = Granularity::passage;
    ExtractionMethod extraction = ExtractionMethod::rule;
    std::filesystem::path external_annotations;
    bool drop_zero = false;

    /// Sets one option from its textual form. Relative paths resolve against `base_dir`.
    /// Throws ConfigError for unknown keys or unparsable values.
    void set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir = {});

    /// Throws ConfigError on parameter ranges and on passage granularity without bor.
    void validate() const;

    /// Sorted `key=value` lines of every option.
    [[nodiscard]] std::string canonical() const;
    /// 16 hex digits of FNV-1a 64 over canonical().
    [[nodiscard]] std::string hash() const;

    [[nodiscard]] std::filesystem::path annotations_path() const;
    [[nodiscard]] std::filesystem::path mentions_path() const;
    [[nodiscard]] std::filesystem::path sentences_path() const;
    [[nodiscard]] std::filesystem::path index_path() const;  // index/<repr>.<gran>.idx
    [[nodiscard]] std::filesystem::path run_path() const;    // <topic-set>.<repr>.<gran>.run
    [[nodiscard]] std::string effective_run_tag() const;
    [[nodiscard]] std::string effective_topic_set() const;
};

/// Flat `key = value` lines; `#` comments and blank lines skipped.
std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in);

/// Applies a config file on top of `config`; relative paths resolve against the file's directory.
void load_config_file(const std::filesystem::path& path, PipelineConfig& config);

/// Sentences of one document or topic.
struct AnalyzedText {
    std::string text_id;
    std::vector<Sentence> sentences;
};

std::vector<AnalyzedText> analyze_documents(const std::vector<Document>& documents,
                                            const AbbreviationList& abbreviations = AbbreviationList::builtin());
std::vector<AnalyzedText> analyze_topics(const std::vector<Topic>& topics);

std::vector<ConceptMention> link_texts(const std::vector<AnalyzedText>& texts, const Lexicon& lexicon);

/// Rule-based extraction over every sentence that has mentions; output ordered by
/// (text_id, sentence_index) then by relation.
std::vector<RelationInstance> extract_texts(const std::vector<ConceptMention>& mentions, const KnowledgeBase& kb);

/// Term multisets per indexing unit. WORD: word terms of the unit's tokens. CONCEPT: one CUI
/// per mention. RELATION: one count per distinct sentence yielding a token.
std::vector<UnitTerms> build_units(const std::vector<AnalyzedText>& documents, TermSpace space,
                                   Granularity granularity, std::size_t passage_len,
                                   const std::vector<ConceptMention>& mentions,
                                   const std::vector<RelationInstance>& relations, const TextOptions& text,
                                   const StopwordList& stopwords = StopwordList::builtin());

QueryAnalysis analyze_query(const AnalyzedText& topic, const std::vector<ConceptMention>& mentions,
                            const std::vector<RelationInstance>& relations, const TextOptions& text,
                            const StopwordList& stopwords = StopwordList::builtin());

struct SearchResult {
    std::vector<RunEntry> entries;
    std::set<std::string> na_topics;
};

/// Ranks every query. With the bor representation a query without relations is NA; passage
/// granularity uses the relation-weighted passage score.
SearchResult search(const std::vector<QueryAnalysis>& queries, const InvertedIndex& index,
                    Representation representation, const RankingParams& params, const std::string& run_tag);

/// Result of a pipeline stage: the artifact written and a one-line summary.
struct StageOutcome {
    std::vector<std::filesystem::path> artifacts;
    std::string summary;
    std::string details;  // multi-line table for eval and compare
};

StageOutcome run_ingest(const PipelineConfig& config);
StageOutcome run_link(const PipelineConfig& config);
StageOutcome run_extract(const PipelineConfig& config);
StageOutcome run_index(const PipelineConfig& config);
StageOutcome run_search(const PipelineConfig& config);
/// Evaluates a run file (default: the configured run) against the qrels. NA topics are read
/// from `<run>.na` when present. Writes `<run>.eval`.
StageOutcome run_eval(const PipelineConfig& config, const std::filesystem::path& run = {});
/// Evaluates two run files and writes the comparison table to `output` when non-empty.
StageOutcome run_compare(const PipelineConfig& config, const std::filesystem::path& run_a,
                         const std::filesystem::path& run_b, const std::filesystem::path& output = {});
/// ingest, link, extract, index, search and eval in sequence.
StageOutcome run_batch(const PipelineConfig& config);

}  // namespace semrel
