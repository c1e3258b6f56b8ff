#include "semrel/kb.hpp"

#include <algorithm>
#include <istream>
#include <set>

#include "io_util.hpp"
#include "semrel/error.hpp"

namespace semrel {

namespace {

std::string pair_key(const std::string& a, const std::string& b)
{
    return a < b ? a + '\x1f' + b : b + '\x1f' + a;
}

bool valid_token_part(std::string_view s)
{
    return !s.empty() && s.find('|') == std::string_view::npos && !detail::has_whitespace(s);
}

}  // namespace

const Concept* KnowledgeBase::find(const std::string& cui) const
{
    const auto it = concepts_.find(cui);
    return it == concepts_.end() ? nullptr : &it->second;
}

std::vector<const Concept*> KnowledgeBase::concepts() const
{
    std::vector<const Concept*> out;
    out.reserve(concepts_.size());
    for (const auto& [cui, c] : concepts_) {
        out.push_back(&c);
    }
    std::sort(out.begin(), out.end(), [](const Concept* a, const Concept* b) { return a->cui < b->cui; });
    return out;
}

std::vector<KbRelation> KnowledgeBase::relations_between(const std::string& cui_a, const std::string& cui_b) const
{
    if (cui_a == cui_b) {
        return {};
    }
    const auto it = by_pair_.find(pair_key(cui_a, cui_b));
    return it == by_pair_.end() ? std::vector<KbRelation>{} : it->second;
}

std::vector<KbRelation> KnowledgeBase::relations() const
{
    std::vector<KbRelation> out;
    out.reserve(relation_count_);
    for (const auto& [key, list] : by_pair_) {
        out.insert(out.end(), list.begin(), list.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

KnowledgeBase load_kb(std::istream& concepts, std::istream& relations)
{
    KnowledgeBase kb;
    std::set<std::string> has_preferred;
    {
        detail::LineReader reader(concepts);
        std::string line;
        while (reader.next(line)) {
            if (detail::is_blank_or_comment(line)) {
                continue;
            }
            const auto fields = detail::split_on(line, '|');
            if (fields.size() != 3) {
                throw ParseError(reader.line_number(), "concept line needs CUI|STRING|FLAG");
            }
            const std::string cui(detail::trim(fields[0]));
            const std::string name(detail::trim(fields[1]));
            const auto flag = detail::trim(fields[2]);
            if (!valid_token_part(cui)) {
                throw ParseError(reader.line_number(), "invalid CUI '" + cui + "'");
            }
            if (name.empty()) {
                throw ParseError(reader.line_number(), "empty concept string for " + cui);
            }
            if (flag != "P" && flag != "S") {
                throw ParseError(reader.line_number(), "concept flag must be P or S");
            }
            Concept& c = kb.concepts_[cui];
            c.cui = cui;
            if (flag == "P") {
                if (!has_preferred.insert(cui).second) {
                    throw ParseError(reader.line_number(), "duplicate CUI " + cui + " (second preferred name)");
                }
                c.preferred_name = name;
            }
            if (std::find(c.synonyms.begin(), c.synonyms.end(), name) == c.synonyms.end()) {
                c.synonyms.push_back(name);
            }
        }
    }
    for (auto& [cui, c] : kb.concepts_) {
        if (c.preferred_name.empty()) {
            c.preferred_name = c.synonyms.front();
        }
    }

    std::set<KbRelation> seen;
    detail::LineReader reader(relations);
    std::string line;
    while (reader.next(line)) {
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        const auto fields = detail::split_on(line, '|');
        if (fields.size() != 3) {
            throw ParseError(reader.line_number(), "relation line needs SUBJECT|PREDICATE|OBJECT");
        }
        KbRelation rel{std::string(detail::trim(fields[0])), std::string(detail::trim(fields[1])),
                       std::string(detail::trim(fields[2]))};
        const std::string triple = rel.subject_cui + "|" + rel.predicate + "|" + rel.object_cui;
        if (!valid_token_part(rel.predicate)) {
            throw ParseError(reader.line_number(), "invalid predicate in " + triple);
        }
        if (kb.find(rel.subject_cui) == nullptr || kb.find(rel.object_cui) == nullptr) {
            throw ParseError(reader.line_number(), "relation " + triple + " references an unknown CUI");
        }
        if (rel.subject_cui == rel.object_cui) {
            throw ParseError(reader.line_number(), "relation " + triple + " relates a concept to itself");
        }
        if (!seen.insert(rel).second) {
            continue;
        }
        kb.by_pair_[pair_key(rel.subject_cui, rel.object_cui)].push_back(std::move(rel));
        ++kb.relation_count_;
    }
    for (auto& [key, list] : kb.by_pair_) {
        std::sort(list.begin(), list.end(), [](const KbRelation& a, const KbRelation& b) {
            return std::tie(a.predicate, a.subject_cui) < std::tie(b.predicate, b.subject_cui);
        });
    }
    return kb;
}

}  // namespace semrel
