#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "semrel/kb.hpp"
#include "semrel/textproc.hpp"

namespace semrel {

struct ConceptMention {
    std::string cui;
    std::string text_id;
    std::size_t sentence_index = 0;
    std::size_t token_start = 0;  // inclusive
    std::size_t token_end = 0;    // inclusive
    std::string matched_string;   // surface tokens joined by single spaces

    friend bool operator==(const ConceptMention&, const ConceptMention&) = default;
};

/// Normalized synonym phrase -> CUIs.
class Lexicon {
  public:
    Lexicon() = default;

    /// Sorted CUIs for a key, or nullptr.
    [[nodiscard]] const std::vector<std::string>* find(const std::string& key) const;
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] std::size_t max_phrase_len() const noexcept { return max_phrase_len_; }
    [[nodiscard]] const TextOptions& options() const noexcept { return options_; }

    /// Key form of a phrase: tokenized, normalized, joined by single spaces.
    [[nodiscard]] std::string key_of(const std::string& phrase) const;

  private:
    friend Lexicon build_lexicon(const KnowledgeBase&, const TextOptions&);

    std::unordered_map<std::string, std::vector<std::string>> entries_;
    std::size_t max_phrase_len_ = 0;
    TextOptions options_;
};

/// Every synonym of every concept becomes a key. Stemming in `options` applies to keys
/// and, through the lexicon, to linked text.
Lexicon build_lexicon(const KnowledgeBase& kb, const TextOptions& options = {});

/// Greedy left-to-right longest match. Ambiguous keys yield one mention per CUI on the
/// same span, ordered by CUI.
std::vector<ConceptMention> link(const Sentence& sentence, const Lexicon& lexicon,
                                 const std::string& text_id);

/// `text_id TAB sentence_index TAB cui TAB token_start TAB token_end TAB matched_string`.
void write_mentions(const std::vector<ConceptMention>& mentions, std::ostream& out,
                    const std::string& header = {});
std::vector<ConceptMention> read_mentions(std::istream& in);

}  // namespace semrel
