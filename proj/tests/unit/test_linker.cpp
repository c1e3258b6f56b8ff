#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "fixture.hpp"
#include "oracles.hpp"
#include "semrel/error.hpp"
#include "semrel/linker.hpp"

using namespace semrel;

namespace {

KnowledgeBase make_kb(const std::string& concepts)
{
    std::istringstream c(concepts);
    std::istringstream r;
    return load_kb(c, r);
}

Sentence sentence_of(const std::string& text)
{
    return query_sentences(text, "x")[0];
}

std::map<std::string, std::set<std::string>> lexicon_map(const KnowledgeBase& kb)
{
    std::map<std::string, std::set<std::string>> out;
    for (const Concept* c : kb.concepts()) {
        for (const auto& s : c->synonyms) {
            std::string key;
            for (const auto& t : tokenize(s)) {
                key += (key.empty() ? "" : " ") + t.normalized;
            }
            out[key].insert(c->cui);
        }
    }
    return out;
}

}  // namespace

TEST(Lexicon, SynonymsBecomeKeys)
{
    const auto kb = make_kb("C1|heart attack|P\nC1|myocardial infarction|S\n");
    const auto lex = build_lexicon(kb);
    EXPECT_EQ(lex.size(), 2u);
    ASSERT_NE(lex.find("heart attack"), nullptr);
    EXPECT_EQ(*lex.find("myocardial infarction"), (std::vector<std::string>{"C1"}));
    EXPECT_EQ(lex.max_phrase_len(), 2u);
}

TEST(Lexicon, AmbiguityPreserved)
{
    const auto lex = build_lexicon(make_kb("C_b|cold|P\nC_a|Cold|P\n"));
    ASSERT_NE(lex.find("cold"), nullptr);
    EXPECT_EQ(*lex.find("cold"), (std::vector<std::string>{"C_a", "C_b"}));
}

TEST(Lexicon, FixtureKeyCount)
{
    const auto f = fixture::load_fixture();
    EXPECT_EQ(f.lexicon.size(), 23u);
    EXPECT_EQ(f.lexicon.size(), lexicon_map(f.kb).size());
}

TEST(Link, LongestMatch)
{
    const auto lex = build_lexicon(make_kb("C1|heart|P\nC2|heart attack|P\nC3|aspirin|P\n"));
    const auto m = link(sentence_of("Heart attack treated with aspirin"), lex, "q");
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0], (ConceptMention{"C2", "q", 0, 0, 1, "Heart attack"}));
    EXPECT_EQ(m[1].cui, "C3");
    EXPECT_EQ(m[1].token_start, 4u);
    EXPECT_TRUE(link(sentence_of("nothing to see"), lex, "q").empty());
}

TEST(Link, AmbiguousSpanEmitsEveryCui)
{
    const auto lex = build_lexicon(make_kb("C2|cold|P\nC1|cold|P\n"));
    const auto m = link(sentence_of("a cold day"), lex, "q");
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0].cui, "C1");
    EXPECT_EQ(m[1].cui, "C2");
    EXPECT_EQ(m[0].token_start, m[1].token_start);
    EXPECT_EQ(m[0].token_end, m[1].token_end);
}

TEST(Link, StemmingAppliesToBothSides)
{
    const auto kb = make_kb("C1|bleeding|P\n");
    EXPECT_TRUE(link(sentence_of("it bleeds"), build_lexicon(kb), "q").empty());
    EXPECT_EQ(link(sentence_of("it bleeds"), build_lexicon(kb, {.stemming = true}), "q").size(), 1u);
}

TEST(Link, FixtureDocThreeTitle)
{
    const auto f = fixture::load_fixture();
    const auto& s0 = f.doc_texts[2].sentences[0];
    const auto m = link(s0, f.lexicon, "87049003");
    EXPECT_EQ(m.size(), 3u);
    EXPECT_EQ(m.size(), oracle::brute_force_mention_count(
                            [&] {
                                std::vector<std::string> n;
                                for (const auto& t : s0.tokens) {
                                    n.push_back(t.normalized);
                                }
                                return n;
                            }(),
                            lexicon_map(f.kb)));
}

TEST(Link, FixtureProperties)
{
    const auto f = fixture::load_fixture();
    for (const auto& text : f.doc_texts) {
        for (const auto& s : text.sentences) {
            const auto m = link(s, f.lexicon, text.text_id);
            EXPECT_EQ(m, link(s, f.lexicon, text.text_id));
            std::vector<std::string> norm;
            for (const auto& t : s.tokens) {
                norm.push_back(t.normalized);
            }
            EXPECT_EQ(m.size(), oracle::brute_force_mention_count(norm, lexicon_map(f.kb)));
            for (std::size_t i = 0; i < m.size(); ++i) {
                EXPECT_LE(m[i].token_start, m[i].token_end);
                EXPECT_NE(f.lexicon.find(f.lexicon.key_of(m[i].matched_string)), nullptr);
                if (i > 0) {
                    const bool same_span =
                        m[i].token_start == m[i - 1].token_start && m[i].token_end == m[i - 1].token_end;
                    EXPECT_TRUE(same_span || m[i].token_start > m[i - 1].token_end);
                }
            }
        }
    }
}

TEST(Mentions, RoundTrip)
{
    const auto f = fixture::load_fixture();
    std::ostringstream out;
    write_mentions(f.doc_mentions, out, "mentions");
    std::istringstream in(out.str());
    EXPECT_EQ(read_mentions(in), f.doc_mentions);
}

TEST(Mentions, MalformedLine)
{
    std::istringstream in("D1\t0\tC1\t3\t1\theart\n");
    EXPECT_THROW(read_mentions(in), ParseError);
    std::istringstream short_line("D1\t0\tC1\t0\n");
    EXPECT_THROW(read_mentions(short_line), ParseError);
}
