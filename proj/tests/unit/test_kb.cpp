#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "fixture.hpp"
#include "semrel/error.hpp"
#include "semrel/kb.hpp"

using namespace semrel;

namespace {

KnowledgeBase make_kb(const std::string& concepts, const std::string& relations)
{
    std::istringstream c(concepts);
    std::istringstream r(relations);
    return load_kb(c, r);
}

KnowledgeBase fixture_kb()
{
    auto c = fixture::open_fixture("kb_concepts.txt");
    auto r = fixture::open_fixture("kb_relations.txt");
    return load_kb(c, r);
}

const std::string toy_concepts = "C1|one|P\nC2|two|P\nC3|three|P\nC3|tres|S\n";

}  // namespace

TEST(KnowledgeBase, FixtureCounts)
{
    const auto kb = fixture_kb();
    EXPECT_EQ(kb.concept_count(), 10u);
    EXPECT_EQ(kb.relation_count(), 8u);
    const Concept* mi = kb.find("C0027051");
    ASSERT_NE(mi, nullptr);
    EXPECT_EQ(mi->preferred_name, "myocardial infarction");
    EXPECT_EQ(mi->synonyms, (std::vector<std::string>{"myocardial infarction", "heart attack", "MI"}));
    EXPECT_EQ(kb.find("C9999999"), nullptr);
}

TEST(KnowledgeBase, EmptyRelations)
{
    const auto kb = make_kb(toy_concepts, "");
    EXPECT_EQ(kb.relation_count(), 0u);
    EXPECT_TRUE(kb.relations_between("C1", "C2").empty());
}

TEST(KnowledgeBase, UnknownCuiIsError)
{
    EXPECT_THROW(make_kb(toy_concepts, "C1|treats|C999\n"), ParseError);
}

TEST(KnowledgeBase, LoadErrors)
{
    EXPECT_THROW(make_kb(toy_concepts + "C1|uno|P\n", ""), ParseError);
    EXPECT_THROW(make_kb(toy_concepts, "C1|treats|C1\n"), ParseError);
    EXPECT_THROW(make_kb(toy_concepts, "C1|bad pred|C2\n"), ParseError);
    EXPECT_THROW(make_kb(toy_concepts, "C1|treats\n"), ParseError);
}

TEST(KnowledgeBase, DuplicateTriplesCollapse)
{
    const auto kb = make_kb(toy_concepts, "C1|treats|C2\nC1|treats|C2\n");
    EXPECT_EQ(kb.relation_count(), 1u);
}

TEST(RelationsBetween, OrientationInsensitive)
{
    const auto kb = make_kb(toy_concepts, "C1|treats|C2\nC2|causes|C1\n");
    EXPECT_EQ(kb.relations_between("C2", "C1"),
              (std::vector<KbRelation>{{"C2", "causes", "C1"}, {"C1", "treats", "C2"}}));
    EXPECT_TRUE(kb.relations_between("C1", "C1").empty());
    EXPECT_TRUE(kb.relations_between("C1", "C3").empty());
    EXPECT_TRUE(kb.relations_between("C1", "C404").empty());
}

TEST(RelationsBetween, FixtureBothDirectionsByScan)
{
    const auto kb = fixture_kb();
    const auto all = kb.relations();
    std::set<KbRelation> scanned;
    for (const auto& r : all) {
        const bool match = (r.subject_cui == "C0004057" && r.object_cui == "C0019080") ||
                           (r.subject_cui == "C0019080" && r.object_cui == "C0004057");
        if (match) {
            scanned.insert(r);
        }
    }
    const auto got = kb.relations_between("C0004057", "C0019080");
    EXPECT_EQ(got.size(), 2u);
    EXPECT_EQ(std::set<KbRelation>(got.begin(), got.end()), scanned);
}

TEST(RelationsBetween, SymmetricAndVerbatimOverFixture)
{
    const auto kb = fixture_kb();
    const auto all = kb.relations();
    const std::set<KbRelation> snapshot(all.begin(), all.end());
    for (const Concept* a : kb.concepts()) {
        for (const Concept* b : kb.concepts()) {
            const auto ab = kb.relations_between(a->cui, b->cui);
            const auto ba = kb.relations_between(b->cui, a->cui);
            EXPECT_EQ(std::set<KbRelation>(ab.begin(), ab.end()), std::set<KbRelation>(ba.begin(), ba.end()));
            for (const auto& r : ab) {
                EXPECT_TRUE(snapshot.count(r) > 0);
            }
        }
    }
}
