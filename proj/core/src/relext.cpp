#include "semrel/relext.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include "io_util.hpp"
#include "semrel/error.hpp"

namespace semrel {

std::string_view to_string(RelationSource source)
{
    return source == RelationSource::rule ? "rule" : "learned";
}

RelationToken relation_token(const RelationInstance& instance)
{
    return instance.subject_cui + "|" + instance.predicate + "|" + instance.object_cui;
}

RelationToken relation_token(const KbRelation& relation)
{
    return relation.subject_cui + "|" + relation.predicate + "|" + relation.object_cui;
}

std::vector<RelationInstance> extract_rule_based(const std::vector<ConceptMention>& mentions, const KnowledgeBase& kb)
{
    if (mentions.empty()) {
        return {};
    }
    const auto& text_id = mentions.front().text_id;
    const auto sentence_index = mentions.front().sentence_index;
    std::set<std::string> cui_set;
    for (const auto& m : mentions) {
        if (m.text_id != text_id || m.sentence_index != sentence_index) {
            throw Error("extract_rule_based: mentions span more than one sentence");
        }
        cui_set.insert(m.cui);
    }
    const std::vector<std::string> cuis(cui_set.begin(), cui_set.end());

    std::set<KbRelation> found;
    for (std::size_t i = 0; i < cuis.size(); ++i) {
        for (std::size_t j = i + 1; j < cuis.size(); ++j) {
            for (auto& rel : kb.relations_between(cuis[i], cuis[j])) {
                found.insert(std::move(rel));
            }
        }
    }
    std::vector<RelationInstance> out;
    out.reserve(found.size());
    for (const auto& rel : found) {
        out.push_back(RelationInstance{rel.subject_cui, rel.predicate, rel.object_cui, text_id, sentence_index,
                                       RelationSource::rule, 1.0});
    }
    return out;
}

void write_annotations(const std::vector<RelationInstance>& instances, std::ostream& out, const std::string& header)
{
    detail::write_header(out, header);
    for (const auto& r : instances) {
        out << r.text_id << '\t' << r.sentence_index << '\t' << r.subject_cui << '\t' << r.predicate << '\t'
            << r.object_cui << '\t' << to_string(r.source) << '\t' << detail::format_shortest(r.confidence) << '\n';
    }
}

namespace {

void require_token_part(std::string_view value, std::string_view field, std::size_t line)
{
    if (value.empty()) {
        throw ParseError(line, "field " + std::string(field) + " is empty");
    }
    if (value.find('|') != std::string_view::npos || detail::has_whitespace(value)) {
        throw ParseError(line, "field " + std::string(field) + " contains '|' or whitespace");
    }
}

}  // namespace

std::vector<RelationInstance> read_annotations(std::istream& in)
{
    std::vector<RelationInstance> out;
    detail::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        const std::size_t n = reader.line_number();
        const auto fields = detail::split_on(line, '\t');
        static constexpr std::string_view names[] = {"text_id",    "sentence_index", "subject_cui", "predicate",
                                                     "object_cui", "source",         "confidence"};
        if (fields.size() < 7) {
            throw ParseError(n, "missing field " + std::string(names[fields.size()]));
        }
        if (fields.size() > 7) {
            throw ParseError(n, "too many fields (" + std::to_string(fields.size()) + ")");
        }
        RelationInstance r;
        if (fields[0].empty()) {
            throw ParseError(n, "field text_id is empty");
        }
        r.text_id = std::string(fields[0]);
        const auto sentence = detail::parse_int<std::size_t>(fields[1]);
        if (!sentence) {
            throw ParseError(n, "field sentence_index is not a non-negative integer");
        }
        r.sentence_index = *sentence;
        require_token_part(fields[2], "subject_cui", n);
        require_token_part(fields[3], "predicate", n);
        require_token_part(fields[4], "object_cui", n);
        r.subject_cui = std::string(fields[2]);
        r.predicate = std::string(fields[3]);
        r.object_cui = std::string(fields[4]);
        if (r.subject_cui == r.object_cui) {
            throw ParseError(n, "field object_cui equals subject_cui");
        }
        if (fields[5] == "rule") {
            r.source = RelationSource::rule;
        } else if (fields[5] == "learned") {
            r.source = RelationSource::learned;
        } else {
            throw ParseError(n, "field source must be 'rule' or 'learned'");
        }
        const auto confidence = detail::parse_double(fields[6]);
        if (!confidence) {
            throw ParseError(n, "field confidence is not a number");
        }
        if (!(*confidence >= 0.0 && *confidence <= 1.0)) {
            throw ParseError(n, "field confidence out of range [0,1]");
        }
        if (r.source == RelationSource::rule && *confidence != 1.0) {
            throw ParseError(n, "field confidence must be 1 for rule-based relations");
        }
        r.confidence = *confidence;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace semrel
