#include "semrel/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "semrel/error.hpp"

namespace semrel {

void RankingParams::validate() const
{
    if (!(k1 >= 0.0) || !std::isfinite(k1)) {
        throw ConfigError("k1 must be a finite value >= 0");
    }
    if (!(b >= 0.0 && b <= 1.0)) {
        throw ConfigError("b must lie in [0, 1]");
    }
    if (top_k < 1) {
        throw ConfigError("top_k must be at least 1");
    }
    if (passage_len < 1) {
        throw ConfigError("passage_len must be at least 1");
    }
}

const std::vector<std::string>& QueryAnalysis::terms(TermSpace space) const
{
    switch (space) {
    case TermSpace::words:
        return words;
    case TermSpace::concepts:
        return concepts;
    case TermSpace::relations:
        return relations;
    }
    return words;
}

std::set<RelationToken> QueryAnalysis::relation_set() const
{
    return {relations.begin(), relations.end()};
}

double bm25_idf(std::size_t unit_count, std::size_t df)
{
    const double n = static_cast<double>(unit_count);
    const double d = static_cast<double>(df);
    return std::log(1.0 + (n - d + 0.5) / (d + 0.5));
}

namespace {

double term_weight(double idf, std::uint32_t tf, std::uint64_t length, double avgdl, const RankingParams& params)
{
    const double f = static_cast<double>(tf);
    const double norm = avgdl > 0.0 ? static_cast<double>(length) / avgdl : 0.0;
    return idf * f * (params.k1 + 1.0) / (f + params.k1 * (1.0 - params.b + params.b * norm));
}

std::set<std::string> distinct(const std::vector<std::string>& terms)
{
    return {terms.begin(), terms.end()};
}

struct Scored {
    std::string doc_id;
    double score;
};

std::vector<RunEntry> to_run(std::vector<Scored> scored, const std::string& topic_id, std::size_t top_k,
                             const std::string& run_tag)
{
    const auto better = [](const Scored& a, const Scored& b) {
        return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
    };
    const std::size_t keep = std::min(top_k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(), better);
    std::vector<RunEntry> run;
    run.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        run.push_back(RunEntry{topic_id, std::move(scored[i].doc_id), static_cast<std::int64_t>(i + 1), scored[i].score,
                               run_tag});
    }
    return run;
}

}  // namespace

double bm25(const std::vector<std::string>& query_terms, std::uint32_t unit, const InvertedIndex& index,
            const RankingParams& params)
{
    if (index.unit_count() == 0) {
        throw Error("bm25 over an empty index");
    }
    const IndexUnit& u = index.unit(unit);
    double score = 0.0;
    for (const auto& term : distinct(query_terms)) {
        const auto& postings = index.lookup(term);
        const auto it = std::lower_bound(postings.begin(), postings.end(), unit,
                                         [](const Posting& p, std::uint32_t value) { return p.unit < value; });
        if (it == postings.end() || it->unit != unit) {
            continue;
        }
        score += term_weight(bm25_idf(index.unit_count(), postings.size()), it->tf, u.length, index.avgdl(), params);
    }
    return score;
}

std::vector<RunEntry> rank_documents(const std::vector<std::string>& query_terms, const std::string& topic_id,
                                     const InvertedIndex& index, const RankingParams& params, const std::string& run_tag)
{
    if (index.granularity() != Granularity::doc) {
        throw Error("rank_documents needs a document-granularity index");
    }
    if (index.unit_count() == 0) {
        return {};
    }
    std::vector<double> scores(index.unit_count(), 0.0);
    std::vector<std::uint32_t> touched;
    for (const auto& term : distinct(query_terms)) {
        const auto& postings = index.lookup(term);
        if (postings.empty()) {
            continue;
        }
        const double idf = bm25_idf(index.unit_count(), postings.size());
        for (const auto& p : postings) {
            if (scores[p.unit] == 0.0) {
                touched.push_back(p.unit);
            }
            scores[p.unit] += term_weight(idf, p.tf, index.unit(p.unit).length, index.avgdl(), params);
        }
    }
    std::vector<Scored> scored;
    scored.reserve(touched.size());
    for (const auto unit : touched) {
        if (scores[unit] > 0.0) {
            scored.push_back(Scored{index.unit(unit).parent_doc_id, scores[unit]});
        }
    }
    return to_run(std::move(scored), topic_id, params.top_k, run_tag);
}

std::map<std::string, double> combine_passage_scores(const std::vector<PassageEvidence>& passages,
                                                     std::size_t query_relation_count)
{
    if (query_relation_count == 0) {
        throw Error("passage weighting needs a non-empty query relation set");
    }
    const double query_size = static_cast<double>(query_relation_count);
    std::map<std::string, double> documents;
    for (const auto& p : passages) {
        if (p.shared > query_relation_count) {
            throw Error("passage shares more relations than the query holds");
        }
        documents[p.doc_id] += static_cast<double>(p.shared) / query_size * p.bm25;
    }
    return documents;
}

std::optional<std::vector<RunEntry>> score_passage_weighted(const QueryAnalysis& query,
                                                            const InvertedIndex& passage_index,
                                                            const RankingParams& params, const std::string& run_tag)
{
    if (passage_index.space() != TermSpace::relations || passage_index.granularity() != Granularity::passage) {
        throw Error("score_passage_weighted needs a RELATION passage index");
    }
    const auto query_relations = query.relation_set();
    if (query_relations.empty()) {
        return std::nullopt;
    }
    if (passage_index.unit_count() == 0) {
        return std::vector<RunEntry>{};
    }
    const std::size_t n = passage_index.unit_count();
    std::vector<double> passage_bm25(n, 0.0);
    std::vector<std::uint32_t> shared(n, 0);
    for (const auto& relation : query_relations) {
        const auto& postings = passage_index.lookup(relation);
        if (postings.empty()) {
            continue;
        }
        const double idf = bm25_idf(n, postings.size());
        for (const auto& p : postings) {
            ++shared[p.unit];
            passage_bm25[p.unit] +=
                term_weight(idf, p.tf, passage_index.unit(p.unit).length, passage_index.avgdl(), params);
        }
    }
    std::vector<PassageEvidence> evidence;
    for (std::uint32_t unit = 0; unit < n; ++unit) {
        if (shared[unit] > 0) {
            evidence.push_back(PassageEvidence{passage_index.unit(unit).parent_doc_id, shared[unit], passage_bm25[unit]});
        }
    }
    const auto documents = combine_passage_scores(evidence, query_relations.size());
    std::vector<Scored> scored;
    for (const auto& [doc, score] : documents) {
        if (score > 0.0) {
            scored.push_back(Scored{doc, score});
        }
    }
    return to_run(std::move(scored), query.topic_id, params.top_k, run_tag);
}

}  // namespace semrel
