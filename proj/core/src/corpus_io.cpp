#include "semrel/corpus_io.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <utility>

#include "io_util.hpp"
#include "semrel/error.hpp"

namespace semrel {

using detail::LineReader;
using detail::trim;

namespace {

bool is_tag_line(std::string_view line)
{
    return line.size() == 2 && line[0] == '.' && line[1] >= 'A' && line[1] <= 'Z';
}

std::vector<std::string> split_mesh(std::string_view value)
{
    std::vector<std::string> terms;
    for (auto part : detail::split_on(value, ';')) {
        part = trim(part);
        if (!part.empty() && part.back() == '.') {
            part.remove_suffix(1);
        }
        part = trim(part);
        if (!part.empty()) {
            terms.emplace_back(part);
        }
    }
    return terms;
}

struct PendingRecord {
    Document doc;
    std::size_t start_line = 0;
    bool has_uid = false;
    bool has_title = false;
};

}  // namespace

std::vector<Document> parse_ohsumed_corpus(std::istream& in)
{
    std::vector<Document> docs;
    std::set<std::string> seen;
    LineReader reader(in);
    std::string line;
    std::optional<PendingRecord> current;

    const auto finish = [&]() {
        if (!current) {
            return;
        }
        if (!current->has_uid || current->doc.doc_id.empty()) {
            throw ParseError(current->start_line, "record missing .U (MEDLINE UI)");
        }
        if (!current->has_title || current->doc.title.empty()) {
            throw ParseError(current->start_line, "record missing .T (title)");
        }
        if (!seen.insert(current->doc.doc_id).second) {
            throw ParseError(current->start_line, "duplicate document id " + current->doc.doc_id);
        }
        docs.push_back(std::move(current->doc));
        current.reset();
    };

    while (reader.next(line)) {
        if (line.rfind(".I", 0) == 0 && (line.size() == 2 || detail::is_space(line[2]))) {
            finish();
            const auto seq_text = trim(std::string_view(line).substr(2));
            const auto seq = detail::parse_int<std::int64_t>(seq_text);
            if (!seq) {
                throw ParseError(reader.line_number(), "record missing .I sequence number");
            }
            current.emplace();
            current->start_line = reader.line_number();
            current->doc.seq_id = *seq;
            continue;
        }
        if (!current) {
            if (trim(line).empty()) {
                continue;
            }
            throw ParseError(reader.line_number(), "content before the first .I record");
        }
        if (!is_tag_line(line)) {
            if (trim(line).empty()) {
                continue;
            }
            throw ParseError(reader.line_number(), "expected a field tag line, got '" + line + "'");
        }
        const char tag = line[1];
        const std::size_t tag_line = reader.line_number();
        std::string value;
        if (!reader.next(value)) {
            throw ParseError(tag_line, std::string("tag .") + tag + " has no value line");
        }
        const std::string field(trim(value));
        Document& doc = current->doc;
        switch (tag) {
        case 'U':
            doc.doc_id = field;
            current->has_uid = true;
            break;
        case 'T':
            doc.title = field;
            current->has_title = true;
            break;
        case 'W':
            doc.abstract = field;
            break;
        case 'M':
            doc.mesh_terms = split_mesh(field);
            break;
        case 'A':
            doc.authors = field;
            break;
        case 'S':
            doc.source = field;
            break;
        case 'P':
            doc.pub_type = field;
            break;
        default:
            break;  // unknown tags are skipped with their value
        }
    }
    finish();
    return docs;
}

namespace {

// Content after `tag`, with an optional leading label such as "Number:" removed.
std::string tag_content(std::string_view line, std::string_view tag, std::string_view label)
{
    auto rest = trim(line.substr(line.find(tag) + tag.size()));
    if (rest.substr(0, label.size()) == label) {
        rest = trim(rest.substr(label.size()));
    }
    return std::string(rest);
}

bool starts_with_tag(std::string_view line, std::string_view tag)
{
    return trim(line).substr(0, tag.size()) == tag;
}

}  // namespace

std::vector<Topic> parse_topics(std::istream& in)
{
    std::vector<Topic> topics;
    std::set<std::string> seen;
    LineReader reader(in);
    std::string line;

    bool inside = false;
    bool in_description = false;
    std::size_t start_line = 0;
    Topic topic;

    while (reader.next(line)) {
        const auto t = trim(line);
        if (starts_with_tag(t, "<top>")) {
            if (inside) {
                throw ParseError(reader.line_number(), "nested <top>");
            }
            inside = true;
            in_description = false;
            start_line = reader.line_number();
            topic = Topic{};
            continue;
        }
        if (!inside) {
            if (!t.empty()) {
                throw ParseError(reader.line_number(), "content outside <top> record");
            }
            continue;
        }
        if (starts_with_tag(t, "</top>")) {
            if (topic.topic_id.empty()) {
                throw ParseError(start_line, "malformed topic: missing <num>");
            }
            if (topic.title.empty()) {
                throw ParseError(start_line, "malformed topic " + topic.topic_id + ": missing <title>");
            }
            if (topic.description.empty()) {
                throw ParseError(start_line, "malformed topic " + topic.topic_id + ": missing description");
            }
            if (!seen.insert(topic.topic_id).second) {
                throw ParseError(start_line, "duplicate topic id " + topic.topic_id);
            }
            topics.push_back(std::move(topic));
            inside = false;
            continue;
        }
        if (starts_with_tag(t, "<num>")) {
            topic.topic_id = tag_content(t, "<num>", "Number:");
            in_description = false;
        } else if (starts_with_tag(t, "<title>")) {
            topic.title = tag_content(t, "<title>", "");
            in_description = false;
        } else if (starts_with_tag(t, "<desc>")) {
            topic.description = tag_content(t, "<desc>", "Description:");
            in_description = true;
        } else if (!t.empty() && t.front() == '<') {
            in_description = false;  // other sections (e.g. <narr>) are not used
        } else if (in_description && !t.empty()) {
            if (!topic.description.empty()) {
                topic.description += ' ';
            }
            topic.description += t;
        }
    }
    if (inside) {
        throw ParseError(start_line, "unterminated <top> record");
    }
    return topics;
}

std::vector<QrelEntry> parse_qrels(std::istream& in)
{
    std::vector<QrelEntry> entries;
    std::set<std::pair<std::string, std::string>> seen;
    LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        const auto fields = detail::split_whitespace(line);
        if (fields.size() != 4) {
            throw ParseError(reader.line_number(), "qrels line needs 4 fields, got " + std::to_string(fields.size()));
        }
        const auto grade = detail::parse_int<int>(fields[3]);
        if (!grade) {
            throw ParseError(reader.line_number(), "grade is not an integer: '" + std::string(fields[3]) + "'");
        }
        if (*grade < 0 || *grade > 2) {
            throw ParseError(reader.line_number(), "grade out of range {0,1,2}: " + std::to_string(*grade));
        }
        QrelEntry entry{std::string(fields[0]), std::string(fields[2]), *grade};
        if (!seen.emplace(entry.topic_id, entry.doc_id).second) {
            throw ParseError(reader.line_number(), "duplicate judgment for " + entry.topic_id + " " + entry.doc_id);
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

void validate_run(const std::vector<RunEntry>& entries)
{
    std::map<std::string, std::vector<const RunEntry*>> by_topic;
    std::set<std::pair<std::string_view, std::string_view>> seen;
    for (const auto& e : entries) {
        if (e.topic_id.empty() || e.doc_id.empty() || e.run_tag.empty()) {
            throw Error("run entry with empty field");
        }
        if (detail::has_whitespace(e.topic_id) || detail::has_whitespace(e.doc_id) || detail::has_whitespace(e.run_tag)) {
            throw Error("run entry field contains whitespace");
        }
        if (!seen.emplace(e.topic_id, e.doc_id).second) {
            throw Error("document " + e.doc_id + " retrieved twice for topic " + e.topic_id);
        }
        by_topic[e.topic_id].push_back(&e);
    }
    for (auto& [topic, list] : by_topic) {
        std::sort(list.begin(), list.end(), [](const RunEntry* a, const RunEntry* b) { return a->rank < b->rank; });
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i]->rank != static_cast<std::int64_t>(i + 1)) {
                throw Error("topic " + topic + ": ranks are not 1..k without gaps");
            }
            if (i > 0 && list[i]->score > list[i - 1]->score) {
                throw Error("topic " + topic + ": score increases at rank " + std::to_string(list[i]->rank));
            }
        }
    }
}

void write_run(std::vector<RunEntry> entries, std::ostream& out, const std::string& header)
{
    validate_run(entries);
    std::sort(entries.begin(), entries.end(), [](const RunEntry& a, const RunEntry& b) {
        return std::tie(a.topic_id, a.rank) < std::tie(b.topic_id, b.rank);
    });
    detail::write_header(out, header);
    for (const auto& e : entries) {
        out << e.topic_id << " Q0 " << e.doc_id << ' ' << e.rank << ' ' << detail::format_fixed(e.score, 6) << ' '
            << e.run_tag << '\n';
    }
}

std::vector<RunEntry> parse_run(std::istream& in)
{
    std::vector<RunEntry> entries;
    LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        const auto fields = detail::split_whitespace(line);
        if (fields.size() != 6) {
            throw ParseError(reader.line_number(), "run line needs 6 fields, got " + std::to_string(fields.size()));
        }
        const auto rank = detail::parse_int<std::int64_t>(fields[3]);
        if (!rank || *rank < 1) {
            throw ParseError(reader.line_number(), "rank is not a positive integer: '" + std::string(fields[3]) + "'");
        }
        const auto score = detail::parse_double(fields[4]);
        if (!score) {
            throw ParseError(reader.line_number(), "score is not a number: '" + std::string(fields[4]) + "'");
        }
        entries.push_back(RunEntry{std::string(fields[0]), std::string(fields[2]), *rank, *score, std::string(fields[5])});
    }
    return entries;
}

Qrels::Qrels(const std::vector<QrelEntry>& entries)
{
    for (const auto& e : entries) {
        judgments_[e.topic_id][e.doc_id] = e.grade;
    }
}

int Qrels::grade(const std::string& topic_id, const std::string& doc_id) const
{
    const auto topic = judgments_.find(topic_id);
    if (topic == judgments_.end()) {
        return 0;
    }
    const auto doc = topic->second.find(doc_id);
    return doc == topic->second.end() ? 0 : doc->second;
}

bool Qrels::has_topic(const std::string& topic_id) const
{
    return judgments_.count(topic_id) > 0;
}

std::vector<int> Qrels::grades(const std::string& topic_id) const
{
    std::vector<int> out;
    const auto topic = judgments_.find(topic_id);
    if (topic != judgments_.end()) {
        for (const auto& [doc, grade] : topic->second) {
            out.push_back(grade);
        }
    }
    return out;
}

std::vector<std::string> Qrels::topic_ids() const
{
    std::vector<std::string> ids;
    for (const auto& [topic, docs] : judgments_) {
        ids.push_back(topic);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace semrel
