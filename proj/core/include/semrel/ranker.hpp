#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semrel/corpus_io.hpp"
#include "semrel/index.hpp"
#include "semrel/relext.hpp"

namespace semrel {

struct RankingParams {
    double k1 = 1.2;
    double b = 0.75;
    std::size_t top_k = 1000;
    std::size_t passage_len = 2;

    /// Throws ConfigError unless k1 >= 0, 0 <= b <= 1, top_k >= 1 and passage_len >= 1.
    void validate() const;
};

/// Query side of every representation for one topic.
struct QueryAnalysis {
    std::string topic_id;
    std::vector<std::string> words;
    std::vector<std::string> concepts;
    std::vector<RelationToken> relations;

    [[nodiscard]] const std::vector<std::string>& terms(TermSpace space) const;
    /// R_q: the distinct relation tokens.
    [[nodiscard]] std::set<RelationToken> relation_set() const;
};

/// idf(t) = ln(1 + (N - df + 0.5) / (df + 0.5)). Never negative.
double bm25_idf(std::size_t unit_count, std::size_t df);

/// BM25 of one unit against the distinct query terms. Throws Error when the index is empty.
double bm25(const std::vector<std::string>& query_terms, std::uint32_t unit, const InvertedIndex& index,
            const RankingParams& params);

/// Document-granularity ranking: top_k documents by descending BM25, ties by doc id
/// ascending, zero scores omitted.
std::vector<RunEntry> rank_documents(const std::vector<std::string>& query_terms,
                                     const std::string& topic_id, const InvertedIndex& index,
                                     const RankingParams& params, const std::string& run_tag);

inline std::vector<RunEntry> rank_documents(const QueryAnalysis& query, const InvertedIndex& index,
                                            const RankingParams& params, const std::string& run_tag)
{
    return rank_documents(query.terms(index.space()), query.topic_id, index, params, run_tag);
}

/// One passage's contribution: how many query relations it shares and its BM25 against R_q.
struct PassageEvidence {
    std::string doc_id;
    std::size_t shared = 0;
    double bm25 = 0.0;
};

/// Per-document sum of shared / query_relation_count * bm25. Throws Error when
/// query_relation_count is 0 or a passage claims more shared relations than the query has.
std::map<std::string, double> combine_passage_scores(const std::vector<PassageEvidence>& passages,
                                                     std::size_t query_relation_count);

/// Relation-weighted passage ranking: a document scores the sum over its passages of
/// |R_p ∩ R_q| / |R_q| times BM25(p, R_q). Returns nullopt (NA) when R_q is empty.
std::optional<std::vector<RunEntry>> score_passage_weighted(const QueryAnalysis& query,
                                                            const InvertedIndex& passage_index,
                                                            const RankingParams& params,
                                                            const std::string& run_tag);

}  // namespace semrel
