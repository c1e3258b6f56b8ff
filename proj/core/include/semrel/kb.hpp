#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace semrel {

struct Concept {
    std::string cui;
    std::string preferred_name;
    std::vector<std::string> synonyms;  // includes preferred_name, file order
};

struct KbRelation {
    std::string subject_cui;
    std::string predicate;
    std::string object_cui;

    friend auto operator<=>(const KbRelation&, const KbRelation&) = default;
};

/// Immutable concept table plus directed relation triples, queried by unordered CUI pair.
class KnowledgeBase {
  public:
    KnowledgeBase() = default;

    [[nodiscard]] std::size_t concept_count() const noexcept { return concepts_.size(); }
    [[nodiscard]] std::size_t relation_count() const noexcept { return relation_count_; }

    /// Nullptr for unknown CUIs.
    [[nodiscard]] const Concept* find(const std::string& cui) const;

    /// Concepts ordered by CUI.
    [[nodiscard]] std::vector<const Concept*> concepts() const;

    /// Every stored triple relating the two CUIs in either direction, ordered by
    /// (predicate, subject). Empty when a == b or either CUI is unknown.
    [[nodiscard]] std::vector<KbRelation> relations_between(const std::string& cui_a,
                                                            const std::string& cui_b) const;

    /// All triples ordered by (subject, predicate, object).
    [[nodiscard]] std::vector<KbRelation> relations() const;

  private:
    friend KnowledgeBase load_kb(std::istream&, std::istream&);

    std::unordered_map<std::string, Concept> concepts_;
    std::unordered_map<std::string, std::vector<KbRelation>> by_pair_;
    std::size_t relation_count_ = 0;
};

/// Loads `CUI|STRING|P|S` concept lines and `SUBJECT|PREDICATE|OBJECT` relation lines.
/// Throws ParseError on unknown CUIs, self relations, two preferred names for one CUI,
/// or fields that cannot form a relation token.
KnowledgeBase load_kb(std::istream& concepts, std::istream& relations);

}  // namespace semrel
