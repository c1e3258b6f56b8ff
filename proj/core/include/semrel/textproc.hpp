#pragma once

#include <cstddef>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace semrel {

struct Token {
    std::string surface;
    std::string normalized;  // ASCII-lowercased surface
    std::size_t start = 0;   // byte offsets into the source text, [start, end)
    std::size_t end = 0;

    friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
    std::size_t index = 0;
    std::size_t start = 0;
    std::size_t end = 0;
    std::vector<Token> tokens;
};

/// A block of consecutive sentences; both bounds inclusive.
struct Passage {
    std::string doc_id;
    std::string passage_id;
    std::size_t sentence_start = 0;
    std::size_t sentence_end = 0;

    friend bool operator==(const Passage&, const Passage&) = default;
};

/// Words that suppress a sentence break when a period follows them.
class AbbreviationList {
  public:
    /// The list shipped in data/abbreviations.txt.
    static const AbbreviationList& builtin();

    /// One entry per line, `#` comments and blank lines ignored, trailing periods stripped.
    static AbbreviationList load(std::istream& in);

    explicit AbbreviationList(std::vector<std::string> entries);

    /// Case-insensitive.
    [[nodiscard]] bool contains(std::string_view word) const;

  private:
    std::set<std::string, std::less<>> entries_;
};

/// Maximal runs of letters and digits, with hyphens and apostrophes kept when they sit
/// between two such characters.
std::vector<Token> tokenize(std::string_view text);

/// Rule-based splitter: breaks after `.`, `!` or `?` when followed by whitespace and an
/// uppercase letter, or by end of text. Sentences without tokens are dropped.
std::vector<Sentence> split_sentences(std::string_view text,
                                      const AbbreviationList& abbreviations = AbbreviationList::builtin());

/// Disjoint blocks of `length` consecutive sentences; the last block may be shorter.
/// Throws ConfigError when length is 0.
std::vector<Passage> segment_passages(const std::string& doc_id, std::size_t sentence_count,
                                      std::size_t length);

/// Title sentences followed by abstract sentences, re-indexed from 0. Offsets refer to
/// `title + "\n" + abstract`.
std::vector<Sentence> document_sentences(std::string_view title, std::string_view abstract,
                                         const AbbreviationList& abbreviations = AbbreviationList::builtin());

/// A query is two sentences, title then description, with no splitting applied.
std::vector<Sentence> query_sentences(std::string_view title, std::string_view description);

/// Classic Porter (1980) suffix stripper over lowercase ASCII words. Words containing
/// other characters are returned unchanged.
std::string porter_stem(std::string_view word);

class StopwordList {
  public:
    static const StopwordList& builtin();
    static StopwordList load(std::istream& in);

    explicit StopwordList(std::vector<std::string> words);

    [[nodiscard]] bool contains(std::string_view normalized) const;

  private:
    std::set<std::string, std::less<>> words_;
};

/// Term normalization switches. Both default off.
struct TextOptions {
    bool stemming = false;
    bool stopwords = false;
};

/// Index/lexicon form of a normalized token: stemmed when enabled. Stopwords are not
/// applied here; see word_terms.
std::string term_form(std::string_view normalized, const TextOptions& options);

/// WORD-space terms of a token sequence, honoring both options.
std::vector<std::string> word_terms(const std::vector<Token>& tokens, const TextOptions& options,
                                    const StopwordList& stopwords = StopwordList::builtin());

}  // namespace semrel
