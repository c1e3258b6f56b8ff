#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace semrel {

/// One MEDLINE reference.
struct Document {
    std::string doc_id;  // MEDLINE UI (.U)
    std::int64_t seq_id = 0;  // .I
    std::string title;
    std::string abstract;
    std::vector<std::string> mesh_terms;
    std::string authors;
    std::string source;
    std::string pub_type;

    friend bool operator==(const Document&, const Document&) = default;
};

/// A case query: title sentence plus description sentence.
struct Topic {
    std::string topic_id;
    std::string title;
    std::string description;

    friend bool operator==(const Topic&, const Topic&) = default;
};

struct QrelEntry {
    std::string topic_id;
    std::string doc_id;
    int grade = 0;  // 0, 1 or 2

    friend bool operator==(const QrelEntry&, const QrelEntry&) = default;
};

struct RunEntry {
    std::string topic_id;
    std::string doc_id;
    std::int64_t rank = 0;
    double score = 0.0;
    std::string run_tag;

    friend bool operator==(const RunEntry&, const RunEntry&) = default;
};

/// Parses the line-tagged OHSUMED record format (`.I`, `.U`, `.S`, `.M`, `.T`, `.P`, `.W`, `.A`).
/// Throws ParseError naming the line of the offending record.
std::vector<Document> parse_ohsumed_corpus(std::istream& in);

/// Parses `<top>` ... `</top>` topic records.
std::vector<Topic> parse_topics(std::istream& in);

/// `topic_id 0 doc_id grade` per line; `#` lines are comments.
std::vector<QrelEntry> parse_qrels(std::istream& in);

/// Writes `topic_id Q0 doc_id rank score run_tag`, sorted by (topic_id, rank), score with
/// six decimals. `header`, when non-empty, is emitted first as `#` comment lines.
/// Throws Error if the entries violate the run invariants.
void write_run(std::vector<RunEntry> entries, std::ostream& out, const std::string& header = {});

std::vector<RunEntry> parse_run(std::istream& in);

/// Checks per-topic rank contiguity (1..k), non-increasing scores and (topic, doc) uniqueness.
void validate_run(const std::vector<RunEntry>& entries);

/// Relevance grades indexed by topic then document.
class Qrels {
  public:
    Qrels() = default;
    explicit Qrels(const std::vector<QrelEntry>& entries);

    /// Grade of a judged pair, 0 when unjudged.
    [[nodiscard]] int grade(const std::string& topic_id, const std::string& doc_id) const;
    [[nodiscard]] bool has_topic(const std::string& topic_id) const;
    /// All judged grades for a topic (any order); empty for unknown topics.
    [[nodiscard]] std::vector<int> grades(const std::string& topic_id) const;
    [[nodiscard]] std::vector<std::string> topic_ids() const;

  private:
    std::unordered_map<std::string, std::unordered_map<std::string, int>> judgments_;
};

}  // namespace semrel
