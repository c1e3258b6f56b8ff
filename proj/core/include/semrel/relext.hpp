#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "semrel/kb.hpp"
#include "semrel/linker.hpp"

namespace semrel {

enum class RelationSource { rule, learned };

std::string_view to_string(RelationSource source);

struct RelationInstance {
    std::string subject_cui;
    std::string predicate;
    std::string object_cui;
    std::string text_id;
    std::size_t sentence_index = 0;
    RelationSource source = RelationSource::rule;
    double confidence = 1.0;

    friend bool operator==(const RelationInstance&, const RelationInstance&) = default;
};

/// Canonical `subject|predicate|object`; direction is kept.
using RelationToken = std::string;

RelationToken relation_token(const RelationInstance& instance);
RelationToken relation_token(const KbRelation& relation);

/// Rule-based extraction: every KB triple linking any two distinct CUIs mentioned in the
/// sentence, once each, ordered by (subject, predicate, object). All mentions must share
/// text_id and sentence_index.
std::vector<RelationInstance> extract_rule_based(const std::vector<ConceptMention>& mentions,
                                                 const KnowledgeBase& kb);

/// Tab-separated annotation records:
/// `text_id sentence_index subject_cui predicate object_cui source confidence`.
void write_annotations(const std::vector<RelationInstance>& instances, std::ostream& out,
                       const std::string& header = {});

/// Validates every field. Throws ParseError naming the line and field.
std::vector<RelationInstance> read_annotations(std::istream& in);

}  // namespace semrel
