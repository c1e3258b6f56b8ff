#include "semrel/pipeline.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "io_util.hpp"
#include "semrel/error.hpp"

namespace semrel {

namespace fs = std::filesystem;

std::string_view to_string(Representation representation)
{
    switch (representation) {
    case Representation::bow:
        return "bow";
    case Representation::boc:
        return "boc";
    case Representation::bor:
        return "bor";
    }
    return "bow";
}

Representation parse_representation(std::string_view text)
{
    if (text == "bow") {
        return Representation::bow;
    }
    if (text == "boc") {
        return Representation::boc;
    }
    if (text == "bor") {
        return Representation::bor;
    }
    throw ConfigError("representation must be bow, boc or bor, got '" + std::string(text) + "'");
}

TermSpace term_space_of(Representation representation)
{
    switch (representation) {
    case Representation::bow:
        return TermSpace::words;
    case Representation::boc:
        return TermSpace::concepts;
    case Representation::bor:
        return TermSpace::relations;
    }
    return TermSpace::words;
}

// ---------------------------------------------------------------------------
// Configuration

namespace {

bool parse_bool(std::string_view key, std::string_view value)
{
    if (value == "on" || value == "true" || value == "yes" || value == "1") {
        return true;
    }
    if (value == "off" || value == "false" || value == "no" || value == "0") {
        return false;
    }
    throw ConfigError(std::string(key) + " must be on/off, got '" + std::string(value) + "'");
}

double parse_real(std::string_view key, std::string_view value)
{
    const auto v = detail::parse_double(value);
    if (!v) {
        throw ConfigError(std::string(key) + " must be a number, got '" + std::string(value) + "'");
    }
    return *v;
}

std::size_t parse_count(std::string_view key, std::string_view value)
{
    const auto v = detail::parse_int<std::size_t>(value);
    if (!v) {
        throw ConfigError(std::string(key) + " must be a non-negative integer, got '" + std::string(value) + "'");
    }
    return *v;
}

fs::path resolve(std::string_view value, const fs::path& base_dir)
{
    fs::path p{std::string(value)};
    if (p.empty() || p.is_absolute() || base_dir.empty()) {
        return p;
    }
    return base_dir / p;
}

std::string on_off(bool v)
{
    return v ? "on" : "off";
}

std::uint64_t fnv1a(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : data) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

void PipelineConfig::set(std::string_view key, std::string_view value, const fs::path& base_dir)
{
    value = detail::trim(value);
    if (key == "corpus") {
        corpus = resolve(value, base_dir);
    } else if (key == "topics") {
        topics = resolve(value, base_dir);
    } else if (key == "qrels") {
        qrels = resolve(value, base_dir);
    } else if (key == "kb_concepts") {
        kb_concepts = resolve(value, base_dir);
    } else if (key == "kb_relations") {
        kb_relations = resolve(value, base_dir);
    } else if (key == "abbreviations") {
        abbreviations = resolve(value, base_dir);
    } else if (key == "stopword_file") {
        stopword_file = resolve(value, base_dir);
    } else if (key == "work_dir") {
        work_dir = resolve(value, base_dir);
    } else if (key == "annotations") {
        annotations = resolve(value, base_dir);
    } else if (key == "mentions") {
        mentions = resolve(value, base_dir);
    } else if (key == "index_dir") {
        index_dir = resolve(value, base_dir);
    } else if (key == "run_dir") {
        run_dir = resolve(value, base_dir);
    } else if (key == "external_annotations") {
        external_annotations = resolve(value, base_dir);
    } else if (key == "topic_set") {
        topic_set = std::string(value);
    } else if (key == "run_tag") {
        run_tag = std::string(value);
    } else if (key == "k1") {
        ranking.k1 = parse_real(key, value);
    } else if (key == "b") {
        ranking.b = parse_real(key, value);
    } else if (key == "top_k") {
        ranking.top_k = parse_count(key, value);
    } else if (key == "passage_len") {
        ranking.passage_len = parse_count(key, value);
    } else if (key == "cutoff") {
        evaluation.cutoff = parse_count(key, value);
    } else if (key == "stemming") {
        text.stemming = parse_bool(key, value);
    } else if (key == "stopwords") {
        text.stopwords = parse_bool(key, value);
    } else if (key == "drop_zero") {
        drop_zero = parse_bool(key, value);
    } else if (key == "representation") {
        representation = parse_representation(value);
    } else if (key == "granularity") {
        granularity = parse_granularity(value);
    } else if (key == "extraction") {
        if (value == "rule") {
            extraction = ExtractionMethod::rule;
        } else if (value == "external") {
            extraction = ExtractionMethod::external;
        } else {
            throw ConfigError("extraction must be rule or external, got '" + std::string(value) + "'");
        }
    } else {
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    }
}

void PipelineConfig::validate() const
{
    ranking.validate();
    evaluation.validate();
    if (granularity == Granularity::passage && representation != Representation::bor) {
        throw ConfigError("passage granularity requires representation=bor");
    }
    if (!run_tag.empty() && detail::has_whitespace(run_tag)) {
        throw ConfigError("run_tag must not contain whitespace");
    }
}

std::string PipelineConfig::canonical() const
{
    // Output locations are left out: they do not influence artifact contents.
    std::map<std::string, std::string> kv{
        {"corpus", corpus.generic_string()},
        {"topics", topics.generic_string()},
        {"qrels", qrels.generic_string()},
        {"kb_concepts", kb_concepts.generic_string()},
        {"kb_relations", kb_relations.generic_string()},
        {"abbreviations", abbreviations.generic_string()},
        {"stopword_file", stopword_file.generic_string()},
        {"external_annotations", external_annotations.generic_string()},
        {"topic_set", effective_topic_set()},
        {"run_tag", effective_run_tag()},
        {"k1", detail::format_shortest(ranking.k1)},
        {"b", detail::format_shortest(ranking.b)},
        {"top_k", std::to_string(ranking.top_k)},
        {"passage_len", std::to_string(ranking.passage_len)},
        {"cutoff", std::to_string(evaluation.cutoff)},
        {"stemming", on_off(text.stemming)},
        {"stopwords", on_off(text.stopwords)},
        {"drop_zero", on_off(drop_zero)},
        {"representation", std::string(to_string(representation))},
        {"granularity", std::string(to_string(granularity))},
        {"extraction", extraction == ExtractionMethod::rule ? "rule" : "external"},
    };
    std::string out;
    for (const auto& [k, v] : kv) {
        out += k + "=" + v + "\n";
    }
    return out;
}

std::string PipelineConfig::hash() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::uint64_t h = fnv1a(canonical());
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

fs::path PipelineConfig::annotations_path() const
{
    return annotations.empty() ? work_dir / "annotations.tsv" : annotations;
}

fs::path PipelineConfig::mentions_path() const
{
    return mentions.empty() ? work_dir / "mentions.tsv" : mentions;
}

fs::path PipelineConfig::sentences_path() const
{
    return work_dir / "sentences.tsv";
}

fs::path PipelineConfig::index_path() const
{
    const fs::path dir = index_dir.empty() ? work_dir / "index" : index_dir;
    return dir / (std::string(to_string(representation)) + "." + std::string(to_string(granularity)) + ".idx");
}

fs::path PipelineConfig::run_path() const
{
    const fs::path dir = run_dir.empty() ? work_dir / "runs" : run_dir;
    return dir / (effective_topic_set() + "." + std::string(to_string(representation)) + "." +
                  std::string(to_string(granularity)) + ".run");
}

std::string PipelineConfig::effective_run_tag() const
{
    if (!run_tag.empty()) {
        return run_tag;
    }
    return std::string(to_string(representation)) + "." + std::string(to_string(granularity));
}

std::string PipelineConfig::effective_topic_set() const
{
    if (!topic_set.empty()) {
        return topic_set;
    }
    return topics.empty() ? std::string("topics") : topics.stem().string();
}

std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in)
{
    std::vector<std::pair<std::string, std::string>> out;
    detail::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(reader.line_number(), "expected 'key = value'");
        }
        const auto key = detail::trim(std::string_view(line).substr(0, eq));
        const auto value = detail::trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) {
            throw ParseError(reader.line_number(), "empty configuration key");
        }
        out.emplace_back(std::string(key), std::string(value));
    }
    return out;
}

void load_config_file(const fs::path& path, PipelineConfig& config)
{
    std::ifstream in(path);
    if (!in) {
        throw MissingInputError("cannot open config file " + path.string());
    }
    std::vector<std::pair<std::string, std::string>> entries;
    try {
        entries = parse_config(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
    const fs::path base = path.parent_path();
    for (const auto& [key, value] : entries) {
        config.set(key, value, base);
    }
}

// ---------------------------------------------------------------------------
// Analysis

std::vector<AnalyzedText> analyze_documents(const std::vector<Document>& documents,
                                            const AbbreviationList& abbreviations)
{
    std::vector<AnalyzedText> out;
    out.reserve(documents.size());
    for (const auto& doc : documents) {
        out.push_back(AnalyzedText{doc.doc_id, document_sentences(doc.title, doc.abstract, abbreviations)});
    }
    return out;
}

std::vector<AnalyzedText> analyze_topics(const std::vector<Topic>& topics)
{
    std::vector<AnalyzedText> out;
    out.reserve(topics.size());
    for (const auto& topic : topics) {
        out.push_back(AnalyzedText{topic.topic_id, query_sentences(topic.title, topic.description)});
    }
    return out;
}

std::vector<ConceptMention> link_texts(const std::vector<AnalyzedText>& texts, const Lexicon& lexicon)
{
    std::vector<ConceptMention> out;
    for (const auto& text : texts) {
        for (const auto& sentence : text.sentences) {
            auto mentions = link(sentence, lexicon, text.text_id);
            std::move(mentions.begin(), mentions.end(), std::back_inserter(out));
        }
    }
    return out;
}

std::vector<RelationInstance> extract_texts(const std::vector<ConceptMention>& mentions, const KnowledgeBase& kb)
{
    std::vector<RelationInstance> out;
    std::size_t i = 0;
    while (i < mentions.size()) {
        std::size_t j = i;
        while (j < mentions.size() && mentions[j].text_id == mentions[i].text_id &&
               mentions[j].sentence_index == mentions[i].sentence_index) {
            ++j;
        }
        const std::vector<ConceptMention> sentence(mentions.begin() + static_cast<std::ptrdiff_t>(i),
                                                   mentions.begin() + static_cast<std::ptrdiff_t>(j));
        auto found = extract_rule_based(sentence, kb);
        std::move(found.begin(), found.end(), std::back_inserter(out));
        i = j;
    }
    return out;
}

namespace {

// Per text: sentence index -> CUIs of mentions, in mention order.
using ConceptsBySentence = std::unordered_map<std::string, std::map<std::size_t, std::vector<std::string>>>;
// Per text: sentence index -> distinct relation tokens.
using RelationsBySentence = std::unordered_map<std::string, std::map<std::size_t, std::set<RelationToken>>>;

ConceptsBySentence group_mentions(const std::vector<ConceptMention>& mentions)
{
    ConceptsBySentence out;
    for (const auto& m : mentions) {
        out[m.text_id][m.sentence_index].push_back(m.cui);
    }
    return out;
}

RelationsBySentence group_relations(const std::vector<RelationInstance>& relations)
{
    RelationsBySentence out;
    for (const auto& r : relations) {
        out[r.text_id][r.sentence_index].insert(relation_token(r));
    }
    return out;
}

}  // namespace

std::vector<UnitTerms> build_units(const std::vector<AnalyzedText>& documents, TermSpace space,
                                   Granularity granularity, std::size_t passage_len,
                                   const std::vector<ConceptMention>& mentions,
                                   const std::vector<RelationInstance>& relations, const TextOptions& text,
                                   const StopwordList& stopwords)
{
    const auto concepts = space == TermSpace::concepts ? group_mentions(mentions) : ConceptsBySentence{};
    const auto tokens = space == TermSpace::relations ? group_relations(relations) : RelationsBySentence{};

    std::vector<UnitTerms> units;
    units.reserve(documents.size());
    for (const auto& doc : documents) {
        const std::size_t count = doc.sentences.size();
        std::vector<Passage> blocks;
        if (granularity == Granularity::doc) {
            blocks.push_back(Passage{doc.text_id, doc.text_id, 0, count == 0 ? 0 : count - 1});
        } else {
            blocks = segment_passages(doc.text_id, count, passage_len);
        }
        const auto block_of = [&](std::size_t sentence) -> std::vector<std::string>& {
            if (sentence >= count) {
                throw Error("annotation for " + doc.text_id + " refers to sentence " + std::to_string(sentence) +
                            " but the document has " + std::to_string(count));
            }
            const std::size_t b = granularity == Granularity::doc ? 0 : sentence / passage_len;
            return units[units.size() - blocks.size() + b].terms;
        };
        for (const auto& block : blocks) {
            units.push_back(UnitTerms{block.passage_id, doc.text_id, {}});
        }
        switch (space) {
        case TermSpace::words:
            for (const auto& sentence : doc.sentences) {
                auto terms = word_terms(sentence.tokens, text, stopwords);
                auto& dest = block_of(sentence.index);
                std::move(terms.begin(), terms.end(), std::back_inserter(dest));
            }
            break;
        case TermSpace::concepts:
            if (const auto it = concepts.find(doc.text_id); it != concepts.end()) {
                for (const auto& [sentence, cuis] : it->second) {
                    auto& dest = block_of(sentence);
                    dest.insert(dest.end(), cuis.begin(), cuis.end());
                }
            }
            break;
        case TermSpace::relations:
            if (const auto it = tokens.find(doc.text_id); it != tokens.end()) {
                for (const auto& [sentence, set] : it->second) {
                    auto& dest = block_of(sentence);
                    dest.insert(dest.end(), set.begin(), set.end());
                }
            }
            break;
        }
    }
    return units;
}

QueryAnalysis analyze_query(const AnalyzedText& topic, const std::vector<ConceptMention>& mentions,
                            const std::vector<RelationInstance>& relations, const TextOptions& text,
                            const StopwordList& stopwords)
{
    QueryAnalysis qa;
    qa.topic_id = topic.text_id;
    for (const auto& sentence : topic.sentences) {
        auto terms = word_terms(sentence.tokens, text, stopwords);
        std::move(terms.begin(), terms.end(), std::back_inserter(qa.words));
    }
    for (const auto& m : mentions) {
        if (m.text_id == topic.text_id) {
            qa.concepts.push_back(m.cui);
        }
    }
    const auto grouped = group_relations(relations);
    if (const auto it = grouped.find(topic.text_id); it != grouped.end()) {
        for (const auto& [sentence, set] : it->second) {
            qa.relations.insert(qa.relations.end(), set.begin(), set.end());
        }
    }
    return qa;
}

SearchResult search(const std::vector<QueryAnalysis>& queries, const InvertedIndex& index,
                    Representation representation, const RankingParams& params, const std::string& run_tag)
{
    if (index.space() != term_space_of(representation)) {
        throw ConfigError("index term space " + std::string(to_string(index.space())) + " does not match representation " +
                          std::string(to_string(representation)));
    }
    SearchResult result;
    for (const auto& query : queries) {
        if (representation == Representation::bor && query.relations.empty()) {
            result.na_topics.insert(query.topic_id);
            continue;
        }
        std::vector<RunEntry> run;
        if (index.granularity() == Granularity::passage) {
            run = score_passage_weighted(query, index, params, run_tag).value_or(std::vector<RunEntry>{});
        } else {
            run = rank_documents(query, index, params, run_tag);
        }
        std::move(run.begin(), run.end(), std::back_inserter(result.entries));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Stages

namespace {

std::ifstream open_input(const fs::path& path, std::string_view what)
{
    if (path.empty()) {
        throw MissingInputError("no " + std::string(what) + " configured");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingInputError("missing " + std::string(what) + ": " + path.string());
    }
    return in;
}

// Runs a parser over a file, prefixing parse errors with the file name.
template <typename Parser>
auto parse_file(const fs::path& path, std::string_view what, Parser parser)
{
    auto in = open_input(path, what);
    try {
        return parser(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path.string() + ": " + e.what());
    }
}

void write_file(const fs::path& path, const std::string& content)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw Error("failed writing " + path.string());
    }
}

std::string artifact_header(const PipelineConfig& config, std::string_view artifact)
{
    return "semrel " + std::string(artifact) + " config=" + config.hash();
}

AbbreviationList load_abbreviations(const PipelineConfig& config)
{
    if (config.abbreviations.empty()) {
        return AbbreviationList::builtin();
    }
    return parse_file(config.abbreviations, "abbreviation list", [](std::istream& in) { return AbbreviationList::load(in); });
}

StopwordList load_stopwords(const PipelineConfig& config)
{
    if (config.stopword_file.empty()) {
        return StopwordList::builtin();
    }
    return parse_file(config.stopword_file, "stopword list", [](std::istream& in) { return StopwordList::load(in); });
}

std::vector<Document> load_corpus(const PipelineConfig& config)
{
    return parse_file(config.corpus, "corpus", [](std::istream& in) { return parse_ohsumed_corpus(in); });
}

std::vector<Topic> load_topics(const PipelineConfig& config)
{
    return parse_file(config.topics, "topics", [](std::istream& in) { return parse_topics(in); });
}

Qrels load_qrels(const PipelineConfig& config)
{
    return Qrels(parse_file(config.qrels, "qrels", [](std::istream& in) { return parse_qrels(in); }));
}

KnowledgeBase load_knowledge_base(const PipelineConfig& config)
{
    auto concepts = open_input(config.kb_concepts, "KB concepts file");
    auto relations = open_input(config.kb_relations, "KB relations file");
    try {
        return load_kb(concepts, relations);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), "knowledge base (" + config.kb_concepts.string() + ", " +
                                       config.kb_relations.string() + "): " + e.what());
    }
}

std::vector<ConceptMention> load_mentions(const PipelineConfig& config)
{
    return parse_file(config.mentions_path(), "mention file (run `link` first)",
                      [](std::istream& in) { return read_mentions(in); });
}

std::vector<RelationInstance> load_annotations(const fs::path& path)
{
    return parse_file(path, "annotation file", [](std::istream& in) { return read_annotations(in); });
}

void check_disjoint_ids(const std::vector<Document>& docs, const std::vector<Topic>& topics)
{
    std::set<std::string_view> ids;
    for (const auto& d : docs) {
        ids.insert(d.doc_id);
    }
    for (const auto& t : topics) {
        if (ids.count(t.topic_id) > 0) {
            throw ParseError(0, "topic id " + t.topic_id + " collides with a document id");
        }
    }
}

std::vector<QueryAnalysis> analyze_queries(const PipelineConfig& config, const std::vector<Topic>& topics)
{
    std::vector<ConceptMention> mentions;
    std::vector<RelationInstance> relations;
    if (config.representation == Representation::boc) {
        mentions = load_mentions(config);
    } else if (config.representation == Representation::bor) {
        relations = load_annotations(config.annotations_path());
    }
    const auto stopwords = load_stopwords(config);
    std::vector<QueryAnalysis> queries;
    for (const auto& topic : analyze_topics(topics)) {
        queries.push_back(analyze_query(topic, mentions, relations, config.text, stopwords));
    }
    return queries;
}

std::string topic_run_tag(const std::vector<RunEntry>& entries, const fs::path& run)
{
    return entries.empty() ? run.stem().string() : entries.front().run_tag;
}

EvalReport evaluate_file(const PipelineConfig& config, const fs::path& run, const Qrels& qrels,
                         const std::vector<std::string>& topic_order)
{
    const auto entries = parse_file(run, "run file", [](std::istream& in) { return parse_run(in); });
    try {
        validate_run(entries);
    } catch (const Error& e) {
        throw ParseError(0, run.string() + ": " + e.what());
    }
    fs::path sidecar = run;
    sidecar += ".na";
    std::set<std::string> na;
    if (fs::exists(sidecar)) {
        na = parse_file(sidecar, "NA sidecar", [](std::istream& in) { return read_na_sidecar(in); });
    }
    std::vector<std::string> topics = topic_order;
    if (topics.empty()) {
        std::set<std::string> all(na.begin(), na.end());
        for (const auto& e : entries) {
            all.insert(e.topic_id);
        }
        for (const auto& t : qrels.topic_ids()) {
            all.insert(t);
        }
        topics.assign(all.begin(), all.end());
    }
    return evaluate_run(entries, topics, qrels, na, config.evaluation, topic_run_tag(entries, run));
}

std::vector<std::string> topic_order(const PipelineConfig& config)
{
    std::vector<std::string> ids;
    if (!config.topics.empty()) {
        for (const auto& t : load_topics(config)) {
            ids.push_back(t.topic_id);
        }
    }
    return ids;
}

}  // namespace

StageOutcome run_ingest(const PipelineConfig& config)
{
    config.validate();
    const auto docs = load_corpus(config);
    const auto topics = load_topics(config);
    check_disjoint_ids(docs, topics);
    std::size_t judgments = 0;
    if (!config.qrels.empty()) {
        judgments = parse_file(config.qrels, "qrels", [](std::istream& in) { return parse_qrels(in); }).size();
    }
    const auto title_only = static_cast<std::size_t>(
        std::count_if(docs.begin(), docs.end(), [](const Document& d) { return d.abstract.empty(); }));

    std::ostringstream out;
    detail::write_header(out, artifact_header(config, "sentences") + "\ntext_id\tsentence_index\ttokens");
    std::size_t sentence_count = 0;
    const auto write_texts = [&](const std::vector<AnalyzedText>& texts) {
        for (const auto& text : texts) {
            for (const auto& s : text.sentences) {
                out << text.text_id << '\t' << s.index << '\t';
                for (std::size_t i = 0; i < s.tokens.size(); ++i) {
                    out << (i > 0 ? " " : "") << s.tokens[i].surface;
                }
                out << '\n';
                ++sentence_count;
            }
        }
    };
    write_texts(analyze_documents(docs, load_abbreviations(config)));
    write_texts(analyze_topics(topics));
    write_file(config.sentences_path(), out.str());

    StageOutcome outcome;
    outcome.artifacts.push_back(config.sentences_path());
    outcome.summary = "ingest: " + std::to_string(docs.size()) + " documents (" + std::to_string(title_only) +
                      " title-only), " + std::to_string(topics.size()) + " topics, " + std::to_string(judgments) +
                      " judgments, " + std::to_string(sentence_count) + " sentences -> " +
                      config.sentences_path().string();
    return outcome;
}

StageOutcome run_link(const PipelineConfig& config)
{
    config.validate();
    const auto docs = load_corpus(config);
    const auto topics = load_topics(config);
    check_disjoint_ids(docs, topics);
    const auto kb = load_knowledge_base(config);
    const auto lexicon = build_lexicon(kb, config.text);

    auto mentions = link_texts(analyze_documents(docs, load_abbreviations(config)), lexicon);
    const auto topic_mentions = link_texts(analyze_topics(topics), lexicon);
    mentions.insert(mentions.end(), topic_mentions.begin(), topic_mentions.end());

    std::ostringstream out;
    write_mentions(mentions, out,
                   artifact_header(config, "mentions") +
                       "\ntext_id\tsentence_index\tcui\ttoken_start\ttoken_end\tmatched_string");
    write_file(config.mentions_path(), out.str());

    StageOutcome outcome;
    outcome.artifacts.push_back(config.mentions_path());
    outcome.summary = "link: " + std::to_string(mentions.size()) + " mentions (" +
                      std::to_string(topic_mentions.size()) + " in topics) over " + std::to_string(lexicon.size()) +
                      " lexicon keys -> " + config.mentions_path().string();
    return outcome;
}

StageOutcome run_extract(const PipelineConfig& config)
{
    config.validate();
    std::vector<RelationInstance> relations;
    std::string origin;
    if (config.extraction == ExtractionMethod::rule) {
        const auto kb = load_knowledge_base(config);
        relations = extract_texts(load_mentions(config), kb);
        origin = "rule-based";
    } else {
        if (config.external_annotations.empty()) {
            throw ConfigError("extraction=external requires external_annotations");
        }
        relations = load_annotations(config.external_annotations);
        origin = "external " + config.external_annotations.string();
    }
    std::ostringstream out;
    write_annotations(relations, out,
                      artifact_header(config, "annotations") +
                          "\ntext_id\tsentence_index\tsubject_cui\tpredicate\tobject_cui\tsource\tconfidence");
    write_file(config.annotations_path(), out.str());

    std::set<std::string> texts;
    for (const auto& r : relations) {
        texts.insert(r.text_id);
    }
    StageOutcome outcome;
    outcome.artifacts.push_back(config.annotations_path());
    outcome.summary = "extract: " + std::to_string(relations.size()) + " relation instances in " +
                      std::to_string(texts.size()) + " texts (" + origin + ") -> " +
                      config.annotations_path().string();
    return outcome;
}

StageOutcome run_index(const PipelineConfig& config)
{
    config.validate();
    const auto docs = analyze_documents(load_corpus(config), load_abbreviations(config));
    std::vector<ConceptMention> mentions;
    std::vector<RelationInstance> relations;
    if (config.representation == Representation::boc) {
        mentions = load_mentions(config);
    } else if (config.representation == Representation::bor) {
        relations = load_annotations(config.annotations_path());
    }
    const TermSpace space = term_space_of(config.representation);
    auto units = build_units(docs, space, config.granularity, config.ranking.passage_len, mentions, relations,
                             config.text, load_stopwords(config));
    const auto index = build_index(std::move(units), space, config.granularity);

    std::ostringstream out;
    index.save(out, artifact_header(config, "index"));
    write_file(config.index_path(), out.str());

    StageOutcome outcome;
    outcome.artifacts.push_back(config.index_path());
    outcome.summary = "index: " + std::string(to_string(space)) + "/" + std::string(to_string(config.granularity)) +
                      " N=" + std::to_string(index.unit_count()) + " terms=" + std::to_string(index.term_count()) +
                      " avgdl=" + detail::format_fixed(index.avgdl(), 3) + " -> " + config.index_path().string();
    return outcome;
}

StageOutcome run_search(const PipelineConfig& config)
{
    config.validate();
    const auto index =
        parse_file(config.index_path(), "index (run `index` first)", [](std::istream& in) { return InvertedIndex::load(in); });
    if (index.granularity() != config.granularity) {
        throw ConfigError("index granularity does not match the configuration");
    }
    const auto topics = load_topics(config);
    const auto queries = analyze_queries(config, topics);
    const auto result = search(queries, index, config.representation, config.ranking, config.effective_run_tag());

    std::ostringstream run;
    write_run(result.entries, run, artifact_header(config, "run"));
    write_file(config.run_path(), run.str());
    fs::path sidecar = config.run_path();
    sidecar += ".na";
    std::ostringstream na;
    write_na_sidecar(result.na_topics, na, artifact_header(config, "na-topics"));
    write_file(sidecar, na.str());

    StageOutcome outcome;
    outcome.artifacts = {config.run_path(), sidecar};
    outcome.summary = "search: " + std::to_string(queries.size()) + " topics, " + std::to_string(result.entries.size()) +
                      " run entries, " + std::to_string(result.na_topics.size()) + " NA -> " +
                      config.run_path().string();
    return outcome;
}

StageOutcome run_eval(const PipelineConfig& config, const fs::path& run)
{
    config.validate();
    const fs::path run_file = run.empty() ? config.run_path() : run;
    const auto qrels = load_qrels(config);
    const auto report = evaluate_file(config, run_file, qrels, topic_order(config));

    fs::path report_path = run_file;
    report_path += ".eval";
    std::ostringstream out;
    write_report(report, out, artifact_header(config, "eval") + "\ntopic_id\trun_tag\tndcg");
    write_file(report_path, out.str());

    StageOutcome outcome;
    outcome.artifacts.push_back(report_path);
    outcome.summary = "eval: " + report.run_tag + " mean nDCG=" +
                      (report.mean ? detail::format_fixed(*report.mean, 6) : std::string("NA")) + " over " +
                      std::to_string(report.topics.size() - report.na_count) + " topics, " +
                      std::to_string(report.na_count) + " NA -> " + report_path.string();
    outcome.details = format_report_table(report);
    return outcome;
}

StageOutcome run_compare(const PipelineConfig& config, const fs::path& run_a, const fs::path& run_b,
                         const fs::path& output)
{
    config.validate();
    const auto qrels = load_qrels(config);
    const auto order = topic_order(config);
    const auto a = evaluate_file(config, run_a, qrels, order);
    const auto b = evaluate_file(config, run_b, qrels, order);
    const auto comparison = compare_reports(a, b, config.drop_zero);
    const std::string table = format_comparison(comparison);

    StageOutcome outcome;
    if (!output.empty()) {
        std::ostringstream out;
        detail::write_header(out, artifact_header(config, "compare"));
        out << table;
        write_file(output, out.str());
        outcome.artifacts.push_back(output);
    }
    outcome.summary = "compare: " + comparison.tag_a + " vs " + comparison.tag_b + " over " +
                      std::to_string(comparison.pairs) + " paired topics" +
                      (comparison.test ? ", p=" + detail::format_fixed(comparison.test->p, 6) : std::string());
    outcome.details = table;
    return outcome;
}

StageOutcome run_batch(const PipelineConfig& config)
{
    config.validate();
    StageOutcome outcome;
    const auto append = [&](StageOutcome stage) {
        outcome.artifacts.insert(outcome.artifacts.end(), stage.artifacts.begin(), stage.artifacts.end());
        outcome.summary += (outcome.summary.empty() ? "" : "\n") + stage.summary;
        outcome.details = std::move(stage.details);
    };
    append(run_ingest(config));
    if (config.representation != Representation::bow) {
        if (config.extraction == ExtractionMethod::rule || config.representation == Representation::boc) {
            append(run_link(config));
        }
        if (config.representation == Representation::bor) {
            append(run_extract(config));
        }
    }
    append(run_index(config));
    append(run_search(config));
    append(run_eval(config));
    return outcome;
}

}  // namespace semrel
