#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "semrel/corpus_io.hpp"

namespace semrel {

/// Gain 2^grade - 1, discount 1 / log2(rank + 1), evaluated over the first `cutoff` ranks.
struct EvalParams {
    std::size_t cutoff = 1000;

    void validate() const;
};

/// nDCG of one topic's ranking. `run` must hold that topic's entries in rank order.
/// Returns nullopt (NA) when the topic has no document with grade > 0. Unjudged documents
/// have grade 0. Throws Error when ranks are not strictly increasing.
std::optional<double> ndcg(const std::vector<RunEntry>& run, const std::string& topic_id,
                           const Qrels& qrels, const EvalParams& params = {});

struct TopicValue {
    std::string topic_id;
    std::optional<double> value;
};

struct EvalReport {
    std::string run_tag;
    std::vector<TopicValue> topics;  // in topic order given to evaluate_run
    std::optional<double> mean;      // over non-NA topics; nullopt when all are NA
    std::size_t na_count = 0;
};

/// Evaluates `entries` on each topic in `topic_ids`. Topics in `na_topics` are NA regardless
/// of the run; other topics missing from the run score 0 (or NA if nothing is relevant).
EvalReport evaluate_run(const std::vector<RunEntry>& entries, const std::vector<std::string>& topic_ids,
                        const Qrels& qrels, const std::set<std::string>& na_topics,
                        const EvalParams& params, const std::string& run_tag);

/// Arithmetic mean of the non-NA values. Throws Error when every value is NA.
double mean_ndcg(const std::vector<std::optional<double>>& values);

struct TTestResult {
    double t = 0.0;
    int df = 0;
    double p = 1.0;

    [[nodiscard]] bool significant(double alpha = 0.05) const { return p < alpha; }
};

/// Two-tailed paired t-test on a - b. Throws Error when fewer than two pairs remain.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

/// Pairs where either side is NA are dropped before testing.
TTestResult paired_t_test(const std::vector<std::optional<double>>& a,
                          const std::vector<std::optional<double>>& b);

/// I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_tailed(double t, int df);

struct ComparisonRow {
    std::string topic_id;
    std::optional<double> a;
    std::optional<double> b;
};

struct Comparison {
    std::string tag_a;
    std::string tag_b;
    std::vector<ComparisonRow> rows;  // topics of report a, in order
    std::size_t pairs = 0;            // rows with both values present after filtering
    std::optional<double> mean_a;
    std::optional<double> mean_b;
    std::optional<TTestResult> test;  // absent when fewer than two pairs
};

/// Aligns two reports by topic. With `drop_zero_a`, topics where run a scores exactly 0
/// are excluded from the paired statistics.
Comparison compare_reports(const EvalReport& a, const EvalReport& b, bool drop_zero_a = false);

/// Machine-readable lines `topic_id TAB run_tag TAB value|NA` (six decimals).
void write_report(const EvalReport& report, std::ostream& out, const std::string& header = {});

std::string format_report_table(const EvalReport& report);
std::string format_comparison(const Comparison& comparison);

/// Sidecar listing of NA topics: one `NA <topic_id>` line each.
void write_na_sidecar(const std::set<std::string>& topics, std::ostream& out, const std::string& header = {});
std::set<std::string> read_na_sidecar(std::istream& in);

}  // namespace semrel
