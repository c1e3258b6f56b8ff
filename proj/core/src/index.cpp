#include "semrel/index.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "io_util.hpp"
#include "semrel/error.hpp"

namespace semrel {

std::string_view to_string(TermSpace space)
{
    switch (space) {
    case TermSpace::words:
        return "WORD";
    case TermSpace::concepts:
        return "CONCEPT";
    case TermSpace::relations:
        return "RELATION";
    }
    return "WORD";
}

std::string_view to_string(Granularity granularity)
{
    return granularity == Granularity::doc ? "doc" : "passage";
}

TermSpace parse_term_space(std::string_view text)
{
    if (text == "WORD") {
        return TermSpace::words;
    }
    if (text == "CONCEPT") {
        return TermSpace::concepts;
    }
    if (text == "RELATION") {
        return TermSpace::relations;
    }
    throw ConfigError("unknown term space '" + std::string(text) + "'");
}

Granularity parse_granularity(std::string_view text)
{
    if (text == "doc") {
        return Granularity::doc;
    }
    if (text == "passage") {
        return Granularity::passage;
    }
    throw ConfigError("unknown granularity '" + std::string(text) + "'");
}

std::size_t InvertedIndex::df(std::string_view term) const
{
    return lookup(term).size();
}

std::int64_t InvertedIndex::find_unit(std::string_view unit_id) const
{
    const auto it = unit_positions_.find(unit_id);
    return it == unit_positions_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

const std::vector<Posting>& InvertedIndex::lookup(std::string_view term) const
{
    static const std::vector<Posting> empty;
    const auto it = postings_.find(term);
    return it == postings_.end() ? empty : it->second;
}

std::vector<std::string> InvertedIndex::terms() const
{
    std::vector<std::string> out;
    out.reserve(postings_.size());
    for (const auto& [term, list] : postings_) {
        out.push_back(term);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void InvertedIndex::finalize()
{
    unit_positions_.clear();
    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i < units_.size(); ++i) {
        unit_positions_.emplace(units_[i].unit_id, i);
        total += units_[i].length;
    }
    avgdl_ = units_.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(units_.size());
}

InvertedIndex build_index(std::vector<UnitTerms> units, TermSpace space, Granularity granularity)
{
    std::sort(units.begin(), units.end(), [](const UnitTerms& a, const UnitTerms& b) { return a.unit_id < b.unit_id; });
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (units[i].unit_id.empty() || detail::has_whitespace(units[i].unit_id)) {
            throw Error("invalid unit id '" + units[i].unit_id + "'");
        }
        if (i > 0 && units[i].unit_id == units[i - 1].unit_id) {
            throw Error("duplicate unit id " + units[i].unit_id);
        }
    }
    InvertedIndex index;
    index.space_ = space;
    index.granularity_ = granularity;
    index.units_.reserve(units.size());

    std::unordered_map<std::string_view, std::uint32_t> counts;
    for (std::uint32_t position = 0; position < units.size(); ++position) {
        const auto& unit = units[position];
        counts.clear();
        for (const auto& term : unit.terms) {
            if (term.empty() || detail::has_whitespace(term)) {
                throw Error("invalid term '" + term + "' in unit " + unit.unit_id);
            }
            ++counts[term];
        }
        for (const auto& [term, tf] : counts) {
            auto it = index.postings_.find(term);
            if (it == index.postings_.end()) {
                it = index.postings_.emplace(std::string(term), std::vector<Posting>{}).first;
            }
            it->second.push_back(Posting{position, tf});
        }
        index.units_.push_back(IndexUnit{unit.unit_id, unit.parent_doc_id.empty() ? unit.unit_id : unit.parent_doc_id,
                                         unit.terms.size()});
    }
    index.finalize();
    return index;
}

void InvertedIndex::save(std::ostream& out, const std::string& header) const
{
    out << "#index space=" << to_string(space_) << " granularity=" << to_string(granularity_) << " N=" << units_.size()
        << " avgdl=" << detail::format_shortest(avgdl_) << '\n';
    detail::write_header(out, header);
    for (const auto& term : terms()) {
        out << "T " << term << '\n';
        for (const auto& p : lookup(term)) {
            out << "P " << units_[p.unit].unit_id << ' ' << p.tf << '\n';
        }
    }
    out << "#units N=" << units_.size() << '\n';
    for (const auto& u : units_) {
        out << "U " << u.unit_id << ' ' << u.parent_doc_id << ' ' << u.length << '\n';
    }
}

namespace {

std::string_view header_value(const std::vector<std::string_view>& fields, std::string_view key, std::size_t line)
{
    for (const auto f : fields) {
        if (f.size() > key.size() && f.substr(0, key.size()) == key && f[key.size()] == '=') {
            return f.substr(key.size() + 1);
        }
    }
    throw ParseError(line, "index header lacks " + std::string(key));
}

}  // namespace

InvertedIndex InvertedIndex::load(std::istream& in)
{
    detail::LineReader reader(in);
    std::string line;
    if (!reader.next(line) || line.rfind("#index", 0) != 0) {
        throw ParseError(1, "missing #index header");
    }
    InvertedIndex index;
    const auto header = detail::split_whitespace(line);
    try {
        index.space_ = parse_term_space(header_value(header, "space", 1));
        index.granularity_ = parse_granularity(header_value(header, "granularity", 1));
    } catch (const ConfigError& e) {
        throw ParseError(1, e.what());
    }
    const auto declared_n = detail::parse_int<std::size_t>(header_value(header, "N", 1));
    const auto declared_avgdl = detail::parse_double(header_value(header, "avgdl", 1));
    if (!declared_n || !declared_avgdl) {
        throw ParseError(1, "malformed N or avgdl in index header");
    }

    struct RawPosting {
        std::string unit_id;
        std::uint32_t tf;
        std::size_t line;
    };
    std::vector<std::pair<std::string, std::vector<RawPosting>>> raw;
    while (reader.next(line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto fields = detail::split_whitespace(line);
        const std::size_t n = reader.line_number();
        if (fields[0] == "T" && fields.size() == 2) {
            raw.emplace_back(std::string(fields[1]), std::vector<RawPosting>{});
        } else if (fields[0] == "P" && fields.size() == 3) {
            const auto tf = detail::parse_int<std::uint32_t>(fields[2]);
            if (raw.empty()) {
                throw ParseError(n, "posting before any term");
            }
            if (!tf || *tf == 0) {
                throw ParseError(n, "tf must be a positive integer");
            }
            raw.back().second.push_back(RawPosting{std::string(fields[1]), *tf, n});
        } else if (fields[0] == "U" && fields.size() == 4) {
            const auto length = detail::parse_int<std::uint64_t>(fields[3]);
            if (!length) {
                throw ParseError(n, "unit length is not an integer");
            }
            index.units_.push_back(IndexUnit{std::string(fields[1]), std::string(fields[2]), *length});
        } else {
            throw ParseError(n, "unrecognized index line");
        }
    }
    if (index.units_.size() != *declared_n) {
        throw ParseError(1, "header N does not match the unit table");
    }
    std::sort(index.units_.begin(), index.units_.end(),
              [](const IndexUnit& a, const IndexUnit& b) { return a.unit_id < b.unit_id; });
    index.finalize();
    if (index.unit_positions_.size() != index.units_.size()) {
        throw ParseError(0, "duplicate unit id in unit table");
    }

    std::vector<std::uint64_t> lengths(index.units_.size(), 0);
    for (auto& [term, postings] : raw) {
        std::vector<Posting> list;
        list.reserve(postings.size());
        for (const auto& p : postings) {
            const auto position = index.find_unit(p.unit_id);
            if (position < 0) {
                throw ParseError(p.line, "posting references unknown unit " + p.unit_id);
            }
            list.push_back(Posting{static_cast<std::uint32_t>(position), p.tf});
            lengths[static_cast<std::size_t>(position)] += p.tf;
        }
        std::sort(list.begin(), list.end(), [](const Posting& a, const Posting& b) { return a.unit < b.unit; });
        if (!index.postings_.emplace(term, std::move(list)).second) {
            throw ParseError(0, "term '" + term + "' listed twice");
        }
    }
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (lengths[i] != index.units_[i].length) {
            throw ParseError(0, "unit " + index.units_[i].unit_id + " length does not match its postings");
        }
    }
    if (std::abs(index.avgdl_ - *declared_avgdl) > 1e-9 * std::max(1.0, index.avgdl_)) {
        throw ParseError(1, "header avgdl does not match the unit table");
    }
    return index;
}

}  // namespace semrel
