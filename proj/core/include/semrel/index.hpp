#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semrel {

enum class TermSpace { words, concepts, relations };
enum class Granularity { doc, passage };

std::string_view to_string(TermSpace space);     // WORD, CONCEPT, RELATION
std::string_view to_string(Granularity granularity);  // doc, passage
TermSpace parse_term_space(std::string_view text);
Granularity parse_granularity(std::string_view text);

struct IndexUnit {
    std::string unit_id;
    std::string parent_doc_id;
    std::uint64_t length = 0;

    friend bool operator==(const IndexUnit&, const IndexUnit&) = default;
};

/// `unit` is a position in InvertedIndex::units(), which is sorted by unit_id, so postings
/// ordered by `unit` are ordered by unit_id.
struct Posting {
    std::uint32_t unit = 0;
    std::uint32_t tf = 0;

    friend bool operator==(const Posting&, const Posting&) = default;
};

/// Input to build_index: one indexing unit and its term multiset.
struct UnitTerms {
    std::string unit_id;
    std::string parent_doc_id;
    std::vector<std::string> terms;
};

class InvertedIndex {
  public:
    InvertedIndex() = default;

    [[nodiscard]] TermSpace space() const noexcept { return space_; }
    [[nodiscard]] Granularity granularity() const noexcept { return granularity_; }

    /// Number of units (N).
    [[nodiscard]] std::size_t unit_count() const noexcept { return units_.size(); }
    [[nodiscard]] double avgdl() const noexcept { return avgdl_; }
    [[nodiscard]] std::size_t df(std::string_view term) const;
    [[nodiscard]] std::size_t term_count() const noexcept { return postings_.size(); }

    [[nodiscard]] const std::vector<IndexUnit>& units() const noexcept { return units_; }
    [[nodiscard]] const IndexUnit& unit(std::uint32_t position) const { return units_.at(position); }
    /// Position of a unit id, or -1.
    [[nodiscard]] std::int64_t find_unit(std::string_view unit_id) const;

    /// Postings of a term ordered by unit; empty for unknown terms.
    [[nodiscard]] const std::vector<Posting>& lookup(std::string_view term) const;

    /// All terms in ascending order.
    [[nodiscard]] std::vector<std::string> terms() const;

    /// Textual persisted form. `header` lines are written as `#` comments after the
    /// `#index` line.
    void save(std::ostream& out, const std::string& header = {}) const;
    static InvertedIndex load(std::istream& in);

  private:
    friend InvertedIndex build_index(std::vector<UnitTerms>, TermSpace, Granularity);

    struct StringHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
    };

    void finalize();

    TermSpace space_ = TermSpace::words;
    Granularity granularity_ = Granularity::doc;
    std::vector<IndexUnit> units_;
    std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> unit_positions_;
    std::unordered_map<std::string, std::vector<Posting>, StringHash, std::equal_to<>> postings_;
    double avgdl_ = 0.0;
};

/// Builds postings and statistics. Input order does not affect the result. Throws Error on
/// duplicate unit ids.
InvertedIndex build_index(std::vector<UnitTerms> units, TermSpace space,
                          Granularity granularity = Granularity::doc);

}  // namespace semrel
