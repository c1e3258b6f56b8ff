#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace semrel::oracle {

namespace {

double bm25_unit(const std::vector<std::string>& terms, const std::set<std::string>& query, double n,
                 const std::map<std::string, double>& df, double avgdl, double k1, double b)
{
    double score = 0.0;
    for (const auto& q : query) {
        const double tf = static_cast<double>(std::count(terms.begin(), terms.end(), q));
        if (tf == 0.0) {
            continue;
        }
        const double d = df.at(q);
        const double idf = std::log(1.0 + (n - d + 0.5) / (d + 0.5));
        const double len = static_cast<double>(terms.size());
        score += idf * (tf * (k1 + 1.0)) / (tf + k1 * (1.0 - b + b * len / avgdl));
    }
    return score;
}

struct Stats {
    double n = 0.0;
    double avgdl = 0.0;
    std::map<std::string, double> df;
};

Stats collect(const std::vector<UnitTerms>& units)
{
    Stats s;
    s.n = static_cast<double>(units.size());
    double total = 0.0;
    for (const auto& u : units) {
        total += static_cast<double>(u.terms.size());
        for (const auto& t : std::set<std::string>(u.terms.begin(), u.terms.end())) {
            s.df[t] += 1.0;
        }
    }
    s.avgdl = units.empty() ? 0.0 : total / s.n;
    return s;
}

std::vector<ScoredDoc> rank(const std::map<std::string, double>& totals, std::size_t top_k)
{
    std::vector<ScoredDoc> out;
    for (const auto& [doc, score] : totals) {
        if (score > 0.0) {
            out.push_back({doc, score});
        }
    }
    std::sort(out.begin(), out.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.doc_id < b.doc_id;
    });
    if (out.size() > top_k) {
        out.resize(top_k);
    }
    return out;
}

}  // namespace

std::vector<ScoredDoc> brute_force_bm25(const std::vector<UnitTerms>& units, const std::vector<std::string>& query,
                                        double k1, double b, std::size_t top_k)
{
    const Stats s = collect(units);
    const std::set<std::string> q(query.begin(), query.end());
    std::map<std::string, double> totals;
    for (const auto& u : units) {
        totals[u.parent_doc_id] += bm25_unit(u.terms, q, s.n, s.df, s.avgdl, k1, b);
    }
    return rank(totals, top_k);
}

std::vector<ScoredDoc> direct_passage_weighted(const std::vector<UnitTerms>& passages,
                                               const std::set<std::string>& query_relations, double k1, double b,
                                               std::size_t top_k)
{
    const Stats s = collect(passages);
    std::map<std::string, double> totals;
    for (const auto& p : passages) {
        const std::set<std::string> rp(p.terms.begin(), p.terms.end());
        std::size_t shared = 0;
        for (const auto& r : query_relations) {
            shared += rp.count(r);
        }
        const double weight = static_cast<double>(shared) / static_cast<double>(query_relations.size());
        totals[p.parent_doc_id] += weight * bm25_unit(p.terms, query_relations, s.n, s.df, s.avgdl, k1, b);
    }
    return rank(totals, top_k);
}

std::set<KbRelation> brute_force_relations(const std::vector<ConceptMention>& mentions,
                                           const std::vector<KbRelation>& triples)
{
    std::set<KbRelation> out;
    for (std::size_t i = 0; i < mentions.size(); ++i) {
        for (std::size_t j = 0; j < mentions.size(); ++j) {
            const auto& a = mentions[i].cui;
            const auto& c = mentions[j].cui;
            if (a == c) {
                continue;
            }
            for (const auto& t : triples) {
                if (t.subject_cui == a && t.object_cui == c) {
                    out.insert(t);
                }
            }
        }
    }
    return out;
}

double reference_ndcg(const std::vector<std::string>& ranked, const std::map<std::string, int>& judgments,
                      std::size_t cutoff)
{
    std::vector<double> ideal_gains;
    for (const auto& [doc, grade] : judgments) {
        ideal_gains.push_back(std::pow(2.0, grade) - 1.0);
    }
    std::sort(ideal_gains.rbegin(), ideal_gains.rend());
    if (ideal_gains.empty() || ideal_gains.front() <= 0.0) {
        return -1.0;
    }
    const auto dcg = [cutoff](const std::vector<double>& gains) {
        double sum = 0.0;
        for (std::size_t i = 0; i < gains.size() && i < cutoff; ++i) {
            sum += gains[i] * std::log(2.0) / std::log(static_cast<double>(i) + 2.0);
        }
        return sum;
    };
    std::vector<double> gains;
    for (const auto& doc : ranked) {
        const auto it = judgments.find(doc);
        gains.push_back(it == judgments.end() ? 0.0 : std::pow(2.0, it->second) - 1.0);
    }
    return dcg(gains) / dcg(ideal_gains);
}

std::size_t brute_force_mention_count(const std::vector<std::string>& tokens,
                                      const std::map<std::string, std::set<std::string>>& lexicon)
{
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < tokens.size()) {
        std::size_t best = 0;
        std::string phrase;
        for (std::size_t n = 1; i + n <= tokens.size(); ++n) {
            phrase += (n > 1 ? " " : "") + tokens[i + n - 1];
            if (lexicon.count(phrase) > 0) {
                best = n;
            }
        }
        if (best > 0) {
            std::string key;
            for (std::size_t n = 0; n < best; ++n) {
                key += (n > 0 ? " " : "") + tokens[i + n];
            }
            count += lexicon.at(key).size();
            i += best;
        } else {
            ++i;
        }
    }
    return count;
}

}  // namespace semrel::oracle
