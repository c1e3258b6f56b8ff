#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "fixture.hpp"
#include "oracles.hpp"
#include "semrel/error.hpp"
#include "semrel/relext.hpp"

using namespace semrel;

namespace {

KnowledgeBase toy_kb()
{
    std::istringstream c("C1|one|P\nC2|two|P\nC3|three|P\nC4|four|P\n");
    std::istringstream r("C1|treats|C2\nC2|causes|C1\nC2|prevents|C3\n");
    return load_kb(c, r);
}

ConceptMention mention(const std::string& cui, std::size_t pos)
{
    return {cui, "T", 0, pos, pos, cui};
}

std::set<KbRelation> triples(const std::vector<RelationInstance>& instances)
{
    std::set<KbRelation> out;
    for (const auto& i : instances) {
        out.insert({i.subject_cui, i.predicate, i.object_cui});
    }
    return out;
}

}  // namespace

TEST(RelationToken, DirectionKept)
{
    EXPECT_EQ(relation_token(KbRelation{"C1", "treats", "C2"}), "C1|treats|C2");
    EXPECT_EQ(relation_token(RelationInstance{"C2", "causes", "C1", "T", 0}), "C2|causes|C1");
    EXPECT_NE(relation_token(KbRelation{"C1", "treats", "C2"}), relation_token(KbRelation{"C2", "treats", "C1"}));
}

TEST(ExtractRuleBased, Examples)
{
    const auto kb = toy_kb();
    const auto one = extract_rule_based({mention("C3", 0), mention("C2", 1)}, kb);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], (RelationInstance{"C2", "prevents", "C3", "T", 0, RelationSource::rule, 1.0}));
    EXPECT_TRUE(extract_rule_based({mention("C1", 0), mention("C3", 1)}, kb).empty());
    EXPECT_TRUE(extract_rule_based({}, kb).empty());
}

TEST(ExtractRuleBased, RepeatedMentionsDoNotMultiply)
{
    const auto kb = toy_kb();
    const auto got = extract_rule_based({mention("C1", 0), mention("C2", 1), mention("C1", 2), mention("C2", 3)}, kb);
    EXPECT_EQ(got.size(), 2u);
}

TEST(ExtractRuleBased, ThreeConceptsMatchOracle)
{
    const auto kb = toy_kb();
    const std::vector<ConceptMention> m{mention("C1", 0), mention("C2", 1), mention("C3", 2)};
    const auto got = extract_rule_based(m, kb);
    EXPECT_EQ(triples(got), oracle::brute_force_relations(m, kb.relations()));
    EXPECT_EQ(got.size(), 3u);
    for (std::size_t i = 1; i < got.size(); ++i) {
        EXPECT_LT(relation_token(got[i - 1]), relation_token(got[i]));
    }
}

TEST(ExtractRuleBased, MonotoneUnderAddedMentions)
{
    const auto kb = toy_kb();
    const std::vector<std::string> cuis{"C1", "C2", "C3", "C4"};
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::vector<ConceptMention> base;
        for (std::size_t i = 0; i < cuis.size(); ++i) {
            if ((mask >> i) & 1u) {
                base.push_back(mention(cuis[i], i));
            }
        }
        const auto before = triples(extract_rule_based(base, kb));
        for (const auto& extra : cuis) {
            auto more = base;
            more.push_back(mention(extra, 9));
            const auto after = triples(extract_rule_based(more, kb));
            for (const auto& t : before) {
                EXPECT_TRUE(after.count(t) > 0);
            }
        }
    }
}

TEST(ExtractRuleBased, EveryFixtureSentenceMatchesOracle)
{
    const auto f = fixture::load_fixture();
    const auto all = f.kb.relations();
    std::map<std::pair<std::string, std::size_t>, std::vector<ConceptMention>> by_sentence;
    for (const auto* list : {&f.doc_mentions, &f.topic_mentions}) {
        for (const auto& m : *list) {
            by_sentence[{m.text_id, m.sentence_index}].push_back(m);
        }
    }
    ASSERT_FALSE(by_sentence.empty());
    for (const auto& [key, mentions] : by_sentence) {
        const auto got = extract_rule_based(mentions, f.kb);
        EXPECT_EQ(triples(got), oracle::brute_force_relations(mentions, all)) << key.first << "/" << key.second;
        for (const auto& r : got) {
            EXPECT_EQ(r.text_id, key.first);
            EXPECT_EQ(r.sentence_index, key.second);
            EXPECT_EQ(r.confidence, 1.0);
        }
    }
}

TEST(Annotations, RoundTrip)
{
    std::vector<RelationInstance> seven;
    for (std::size_t i = 0; i < 6; ++i) {
        seven.push_back({"C1", "treats", "C2", "D" + std::to_string(i), i, RelationSource::rule, 1.0});
    }
    seven.push_back({"C2", "causes", "C1", "D9", 3, RelationSource::learned, 0.8125});
    std::ostringstream out;
    write_annotations(seven, out, "annotations");
    std::istringstream in(out.str());
    EXPECT_EQ(read_annotations(in), seven);
}

TEST(Annotations, FixtureRoundTrip)
{
    const auto f = fixture::load_fixture();
    std::ostringstream out;
    write_annotations(f.doc_relations, out);
    std::istringstream in(out.str());
    EXPECT_EQ(read_annotations(in), f.doc_relations);
}

TEST(Annotations, ValidationErrors)
{
    const auto fails_at = [](const std::string& text, std::size_t line, const std::string& field) {
        std::istringstream in(text);
        try {
            read_annotations(in);
        } catch (const ParseError& e) {
            EXPECT_EQ(e.line(), line) << text;
            EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
            return;
        }
        ADD_FAILURE() << "accepted: " << text;
    };
    const std::string ok = "D1\t0\tC1\ttreats\tC2\trule\t1\n";
    fails_at(ok + "D1\t0\tC1\tC2\trule\t1\n", 2, "field");
    fails_at("D1\t0\tC1\ttreats\tC2\tlearned\t1.3\n", 1, "confidence");
    fails_at("D1\t0\tC1\ttreats\tC2\trule\t0.5\n", 1, "confidence");
    fails_at("D1\t0\tC1\ttreats\tC2\toracle\t1\n", 1, "source");
    fails_at("D1\tx\tC1\ttreats\tC2\trule\t1\n", 1, "sentence_index");
    fails_at("D1\t0\tC1\ttr|eats\tC2\trule\t1\n", 1, "predicate");
    fails_at("D1\t0\tC1\ttreats\tC1\trule\t1\n", 1, "object");
}
