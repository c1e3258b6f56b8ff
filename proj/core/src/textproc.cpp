#include "semrel/textproc.hpp"

#include <istream>

#include "io_util.hpp"
#include "semrel/error.hpp"
#include "semrel/utf8.hpp"

namespace semrel {

namespace {

bool is_word_code_point(char32_t cp)
{
    if (cp < 0x80) {
        return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
    }
    if (cp >= 0xC0 && cp <= 0x24F) {
        return cp != 0xD7 && cp != 0xF7;  // Latin letters, excluding multiplication/division signs
    }
    return (cp >= 0x370 && cp <= 0x3FF) || (cp >= 0x400 && cp <= 0x4FF);  // Greek, Cyrillic
}

std::string ascii_lower(std::string_view s)
{
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return out;
}

bool is_upper_ascii(char c)
{
    return c >= 'A' && c <= 'Z';
}

bool is_terminator(char c)
{
    return c == '.' || c == '!' || c == '?';
}

bool is_closer(char c)
{
    return c == ')' || c == ']' || c == '"' || c == '\'';
}

bool is_opener(char c)
{
    return c == '(' || c == '[' || c == '"' || c == '\'';
}

std::set<std::string, std::less<>> load_entries(std::istream& in, bool strip_period)
{
    std::set<std::string, std::less<>> entries;
    detail::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        auto entry = detail::trim(line);
        while (strip_period && !entry.empty() && entry.back() == '.') {
            entry.remove_suffix(1);
        }
        if (!entry.empty()) {
            entries.insert(ascii_lower(entry));
        }
    }
    return entries;
}

Sentence make_sentence(std::string_view text, std::size_t start, std::size_t end)
{
    Sentence sentence;
    sentence.start = start;
    sentence.end = end;
    sentence.tokens = tokenize(text.substr(start, end - start));
    for (auto& token : sentence.tokens) {
        token.start += start;
        token.end += start;
    }
    return sentence;
}

}  // namespace

const AbbreviationList& AbbreviationList::builtin()
{
    static const AbbreviationList list({"vs", "e.g", "i.e", "Dr", "Drs", "Mr", "Mrs", "Ms", "Prof", "Fig", "Figs",
                                        "al", "etc", "approx", "ca", "cf", "No", "Vol", "Jr", "Sr", "St"});
    return list;
}

AbbreviationList AbbreviationList::load(std::istream& in)
{
    AbbreviationList list({});
    list.entries_ = load_entries(in, true);
    return list;
}

AbbreviationList::AbbreviationList(std::vector<std::string> entries)
{
    for (auto& e : entries) {
        entries_.insert(ascii_lower(e));
    }
}

bool AbbreviationList::contains(std::string_view word) const
{
    return entries_.count(ascii_lower(word)) > 0;
}

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = pos;
        if (!is_word_code_point(next_code_point(text, next))) {
            pos = next;
            continue;
        }
        const std::size_t start = pos;
        pos = next;
        while (pos < text.size()) {
            std::size_t after = pos;
            const char32_t cp = next_code_point(text, after);
            if (is_word_code_point(cp)) {
                pos = after;
                continue;
            }
            if ((cp == '-' || cp == '\'') && after < text.size()) {
                std::size_t after_next = after;
                if (is_word_code_point(next_code_point(text, after_next))) {
                    pos = after_next;
                    continue;
                }
            }
            break;
        }
        Token token;
        token.surface = std::string(text.substr(start, pos - start));
        token.normalized = ascii_lower(token.surface);
        token.start = start;
        token.end = pos;
        tokens.push_back(std::move(token));
    }
    return tokens;
}

std::vector<Sentence> split_sentences(std::string_view text, const AbbreviationList& abbreviations)
{
    std::vector<Sentence> sentences;
    const auto emit = [&](std::size_t start, std::size_t end) {
        while (start < end && detail::is_space(text[start])) {
            ++start;
        }
        while (end > start && detail::is_space(text[end - 1])) {
            --end;
        }
        if (start == end) {
            return;
        }
        Sentence sentence = make_sentence(text, start, end);
        if (sentence.tokens.empty()) {
            return;
        }
        sentence.index = sentences.size();
        sentences.push_back(std::move(sentence));
    };

    std::size_t sentence_start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_terminator(text[i])) {
            ++i;
            continue;
        }
        std::size_t run_end = i;
        while (run_end < text.size() && is_terminator(text[run_end])) {
            ++run_end;
        }
        std::size_t close_end = run_end;
        while (close_end < text.size() && is_closer(text[close_end])) {
            ++close_end;
        }
        std::size_t next = close_end;
        while (next < text.size() && detail::is_space(text[next])) {
            ++next;
        }
        const bool at_end = next == text.size();
        bool boundary = at_end || (next > close_end && is_upper_ascii(text[next]));

        if (boundary && !at_end && run_end - i == 1 && text[i] == '.') {
            std::size_t word_start = i;
            while (word_start > sentence_start && !detail::is_space(text[word_start - 1])) {
                --word_start;
            }
            while (word_start < i && is_opener(text[word_start])) {
                ++word_start;
            }
            const auto word = text.substr(word_start, i - word_start);
            if ((word.size() == 1 && is_upper_ascii(word[0])) || abbreviations.contains(word)) {
                boundary = false;
            }
        }
        if (boundary) {
            emit(sentence_start, close_end);
            sentence_start = next;
        }
        i = close_end;
    }
    emit(sentence_start, text.size());
    return sentences;
}

std::vector<Passage> segment_passages(const std::string& doc_id, std::size_t sentence_count, std::size_t length)
{
    if (length == 0) {
        throw ConfigError("passage length must be at least 1");
    }
    std::vector<Passage> passages;
    for (std::size_t first = 0, block = 0; first < sentence_count; first += length, ++block) {
        Passage p;
        p.doc_id = doc_id;
        p.passage_id = doc_id + "#" + std::to_string(block);
        p.sentence_start = first;
        p.sentence_end = std::min(first + length, sentence_count) - 1;
        passages.push_back(std::move(p));
    }
    return passages;
}

std::vector<Sentence> document_sentences(std::string_view title, std::string_view abstract,
                                         const AbbreviationList& abbreviations)
{
    auto sentences = split_sentences(title, abbreviations);
    const std::size_t offset = title.size() + 1;
    for (auto& sentence : split_sentences(abstract, abbreviations)) {
        sentence.index = sentences.size();
        sentence.start += offset;
        sentence.end += offset;
        for (auto& token : sentence.tokens) {
            token.start += offset;
            token.end += offset;
        }
        sentences.push_back(std::move(sentence));
    }
    return sentences;
}

std::vector<Sentence> query_sentences(std::string_view title, std::string_view description)
{
    const std::string joined = std::string(title) + "\n" + std::string(description);
    std::vector<Sentence> sentences;
    sentences.push_back(make_sentence(joined, 0, title.size()));
    sentences.push_back(make_sentence(joined, title.size() + 1, joined.size()));
    sentences[1].index = 1;
    return sentences;
}

const StopwordList& StopwordList::builtin()
{
    static const StopwordList list({
        "a",     "about", "after", "all",   "also",   "an",    "and",   "any",   "are",   "as",    "at",
        "be",    "been",  "before", "but",  "by",     "can",   "could", "did",   "do",    "does",  "during",
        "each",  "for",   "from",  "had",   "has",    "have",  "he",    "her",   "his",   "how",   "if",
        "in",    "into",  "is",    "it",    "its",    "may",   "more",  "most",  "no",    "not",   "of",
        "on",    "or",    "other", "our",   "over",   "she",   "should", "such", "than",  "that",  "the",
        "their", "them",  "then",  "there", "these",  "they",  "this",  "those", "to",    "under", "was",
        "we",    "were",  "what",  "when",  "where",  "which", "while", "who",   "why",   "will",  "with",
        "would",
    });
    return list;
}

StopwordList StopwordList::load(std::istream& in)
{
    StopwordList list({});
    list.words_ = load_entries(in, false);
    return list;
}

StopwordList::StopwordList(std::vector<std::string> words)
{
    for (auto& w : words) {
        words_.insert(ascii_lower(w));
    }
}

bool StopwordList::contains(std::string_view normalized) const
{
    return words_.count(normalized) > 0;
}

std::string term_form(std::string_view normalized, const TextOptions& options)
{
    return options.stemming ? porter_stem(normalized) : std::string(normalized);
}

std::vector<std::string> word_terms(const std::vector<Token>& tokens, const TextOptions& options,
                                    const StopwordList& stopwords)
{
    std::vector<std::string> terms;
    terms.reserve(tokens.size());
    for (const auto& token : tokens) {
        if (options.stopwords && stopwords.contains(token.normalized)) {
            continue;
        }
        terms.push_back(term_form(token.normalized, options));
    }
    return terms;
}

}  // namespace semrel
