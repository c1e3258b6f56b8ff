#include "semrel/linker.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "io_util.hpp"
#include "semrel/error.hpp"

namespace semrel {

namespace {

std::string join_terms(const std::vector<Token>& tokens, std::size_t first, std::size_t count, const TextOptions& options)
{
    std::string key;
    for (std::size_t i = first; i < first + count; ++i) {
        if (i > first) {
            key += ' ';
        }
        key += term_form(tokens[i].normalized, options);
    }
    return key;
}

}  // namespace

const std::vector<std::string>* Lexicon::find(const std::string& key) const
{
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

std::string Lexicon::key_of(const std::string& phrase) const
{
    const auto tokens = tokenize(phrase);
    return join_terms(tokens, 0, tokens.size(), options_);
}

Lexicon build_lexicon(const KnowledgeBase& kb, const TextOptions& options)
{
    Lexicon lexicon;
    lexicon.options_ = options;
    for (const Concept* c : kb.concepts()) {
        for (const auto& synonym : c->synonyms) {
            const auto tokens = tokenize(synonym);
            if (tokens.empty()) {
                continue;
            }
            auto& cuis = lexicon.entries_[join_terms(tokens, 0, tokens.size(), options)];
            if (std::find(cuis.begin(), cuis.end(), c->cui) == cuis.end()) {
                cuis.push_back(c->cui);
            }
            lexicon.max_phrase_len_ = std::max(lexicon.max_phrase_len_, tokens.size());
        }
    }
    for (auto& [key, cuis] : lexicon.entries_) {
        std::sort(cuis.begin(), cuis.end());
    }
    return lexicon;
}

std::vector<ConceptMention> link(const Sentence& sentence, const Lexicon& lexicon, const std::string& text_id)
{
    std::vector<ConceptMention> mentions;
    const auto& tokens = sentence.tokens;
    std::size_t i = 0;
    while (i < tokens.size()) {
        const std::size_t longest = std::min(lexicon.max_phrase_len(), tokens.size() - i);
        std::size_t matched = 0;
        for (std::size_t n = longest; n >= 1; --n) {
            const auto* cuis = lexicon.find(join_terms(tokens, i, n, lexicon.options()));
            if (cuis == nullptr) {
                continue;
            }
            std::string surface;
            for (std::size_t t = i; t < i + n; ++t) {
                if (t > i) {
                    surface += ' ';
                }
                surface += tokens[t].surface;
            }
            for (const auto& cui : *cuis) {
                mentions.push_back(ConceptMention{cui, text_id, sentence.index, i, i + n - 1, surface});
            }
            matched = n;
            break;
        }
        i += matched > 0 ? matched : 1;
    }
    return mentions;
}

void write_mentions(const std::vector<ConceptMention>& mentions, std::ostream& out, const std::string& header)
{
    detail::write_header(out, header);
    for (const auto& m : mentions) {
        out << m.text_id << '\t' << m.sentence_index << '\t' << m.cui << '\t' << m.token_start << '\t' << m.token_end
            << '\t' << m.matched_string << '\n';
    }
}

std::vector<ConceptMention> read_mentions(std::istream& in)
{
    std::vector<ConceptMention> mentions;
    detail::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        const auto fields = detail::split_on(line, '\t');
        if (fields.size() != 6) {
            throw ParseError(reader.line_number(), "mention record needs 6 tab-separated fields");
        }
        const auto sentence = detail::parse_int<std::size_t>(fields[1]);
        const auto start = detail::parse_int<std::size_t>(fields[3]);
        const auto end = detail::parse_int<std::size_t>(fields[4]);
        if (fields[0].empty()) {
            throw ParseError(reader.line_number(), "field text_id is empty");
        }
        if (!sentence) {
            throw ParseError(reader.line_number(), "field sentence_index is not a non-negative integer");
        }
        if (fields[2].empty()) {
            throw ParseError(reader.line_number(), "field cui is empty");
        }
        if (!start || !end || *start > *end) {
            throw ParseError(reader.line_number(), "field token_start/token_end is not a valid range");
        }
        mentions.push_back(ConceptMention{std::string(fields[2]), std::string(fields[0]), *sentence, *start, *end,
                                          std::string(fields[5])});
    }
    return mentions;
}

}  // namespace semrel
