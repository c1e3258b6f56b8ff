#include "semrel/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "io_util.hpp"
#include "semrel/error.hpp"

namespace semrel {

void EvalParams::validate() const
{
    if (cutoff < 1) {
        throw ConfigError("cutoff must be at least 1");
    }
}

namespace {

double gain(int grade)
{
    return std::exp2(static_cast<double>(grade)) - 1.0;
}

double discount(std::size_t rank)
{
    return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

}  // namespace

std::optional<double> ndcg(const std::vector<RunEntry>& run, const std::string& topic_id, const Qrels& qrels,
                           const EvalParams& params)
{
    for (std::size_t i = 1; i < run.size(); ++i) {
        if (run[i].rank <= run[i - 1].rank) {
            throw Error("run for topic " + topic_id + " is not sorted by rank");
        }
    }
    auto ideal = qrels.grades(topic_id);
    std::sort(ideal.begin(), ideal.end(), std::greater<>());
    if (ideal.empty() || ideal.front() <= 0) {
        return std::nullopt;
    }
    double idcg = 0.0;
    for (std::size_t i = 0; i < std::min(params.cutoff, ideal.size()); ++i) {
        idcg += gain(ideal[i]) * discount(i + 1);
    }
    double dcg = 0.0;
    for (std::size_t i = 0; i < std::min(params.cutoff, run.size()); ++i) {
        dcg += gain(qrels.grade(topic_id, run[i].doc_id)) * discount(i + 1);
    }
    return dcg / idcg;
}

EvalReport evaluate_run(const std::vector<RunEntry>& entries, const std::vector<std::string>& topic_ids,
                        const Qrels& qrels, const std::set<std::string>& na_topics, const EvalParams& params,
                        const std::string& run_tag)
{
    params.validate();
    std::map<std::string, std::vector<RunEntry>> by_topic;
    for (const auto& e : entries) {
        by_topic[e.topic_id].push_back(e);
    }
    for (auto& [topic, run] : by_topic) {
        std::stable_sort(run.begin(), run.end(), [](const RunEntry& a, const RunEntry& b) { return a.rank < b.rank; });
    }
    EvalReport report;
    report.run_tag = run_tag;
    std::vector<std::optional<double>> values;
    static const std::vector<RunEntry> no_entries;
    for (const auto& topic : topic_ids) {
        std::optional<double> value;
        if (na_topics.count(topic) == 0) {
            const auto it = by_topic.find(topic);
            value = ndcg(it == by_topic.end() ? no_entries : it->second, topic, qrels, params);
        }
        if (!value) {
            ++report.na_count;
        }
        values.push_back(value);
        report.topics.push_back(TopicValue{topic, value});
    }
    if (report.na_count < values.size()) {
        report.mean = mean_ndcg(values);
    }
    return report;
}

double mean_ndcg(const std::vector<std::optional<double>>& values)
{
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& v : values) {
        if (v) {
            sum += *v;
            ++count;
        }
    }
    if (count == 0) {
        throw Error("mean over topics that are all NA");
    }
    return sum / static_cast<double>(count);
}

double regularized_incomplete_beta(double a, double b, double x)
{
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    // Continued fraction converges quickly for x < (a + 1) / (a + b + 2); use symmetry otherwise.
    if (x > (a + 1.0) / (a + b + 2.0)) {
        return 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);
    }
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    constexpr double tiny = 1e-300;
    constexpr double epsilon = 1e-15;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::abs(d) < tiny) {
        d = tiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 10000; ++m) {
        const double m2 = 2.0 * m;
        double numerator = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + numerator * d;
        d = std::abs(d) < tiny ? tiny : d;
        c = 1.0 + numerator / c;
        c = std::abs(c) < tiny ? tiny : c;
        d = 1.0 / d;
        h *= d * c;
        numerator = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + numerator * d;
        d = std::abs(d) < tiny ? tiny : d;
        c = 1.0 + numerator / c;
        c = std::abs(c) < tiny ? tiny : c;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < epsilon) {
            break;
        }
    }
    return std::exp(log_front) * h / a;
}

double student_t_two_tailed(double t, int df)
{
    if (std::isinf(t)) {
        return 0.0;
    }
    const double v = static_cast<double>(df);
    return regularized_incomplete_beta(v / 2.0, 0.5, v / (v + t * t));
}

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size()) {
        throw Error("paired t-test needs samples of equal length");
    }
    const std::size_t n = a.size();
    if (n < 2) {
        throw Error("paired t-test needs at least two pairs, got " + std::to_string(n));
    }
    std::vector<double> d(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a[i] - b[i];
        mean += d[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const double x : d) {
        ss += (x - mean) * (x - mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    TTestResult result;
    result.df = static_cast<int>(n - 1);
    if (sd == 0.0) {
        if (mean == 0.0) {
            result.t = 0.0;
            result.p = 1.0;
        } else {
            result.t = std::copysign(std::numeric_limits<double>::infinity(), mean);
            result.p = 0.0;
        }
        return result;
    }
    result.t = mean / (sd / std::sqrt(static_cast<double>(n)));
    result.p = std::clamp(student_t_two_tailed(result.t, result.df), 0.0, 1.0);
    return result;
}

TTestResult paired_t_test(const std::vector<std::optional<double>>& a, const std::vector<std::optional<double>>& b)
{
    if (a.size() != b.size()) {
        throw Error("paired t-test needs samples of equal length");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && b[i]) {
            x.push_back(*a[i]);
            y.push_back(*b[i]);
        }
    }
    return paired_t_test(x, y);
}

Comparison compare_reports(const EvalReport& a, const EvalReport& b, bool drop_zero_a)
{
    Comparison cmp;
    cmp.tag_a = a.run_tag;
    cmp.tag_b = b.run_tag;
    std::map<std::string, std::optional<double>> b_values;
    for (const auto& row : b.topics) {
        b_values[row.topic_id] = row.value;
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& row : a.topics) {
        const auto it = b_values.find(row.topic_id);
        ComparisonRow out{row.topic_id, row.value, it == b_values.end() ? std::nullopt : it->second};
        if (out.a && out.b && !(drop_zero_a && *out.a == 0.0)) {
            xs.push_back(*out.a);
            ys.push_back(*out.b);
        }
        cmp.rows.push_back(std::move(out));
    }
    cmp.pairs = xs.size();
    if (!xs.empty()) {
        double sa = 0.0;
        double sb = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sa += xs[i];
            sb += ys[i];
        }
        cmp.mean_a = sa / static_cast<double>(xs.size());
        cmp.mean_b = sb / static_cast<double>(xs.size());
    }
    if (xs.size() >= 2) {
        cmp.test = paired_t_test(xs, ys);
    }
    return cmp;
}

namespace {

std::string value_text(const std::optional<double>& v)
{
    return v ? detail::format_fixed(*v, 6) : std::string("NA");
}

std::string pad(const std::string& s, std::size_t width)
{
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string pad_left(const std::string& s, std::size_t width)
{
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

void write_report(const EvalReport& report, std::ostream& out, const std::string& header)
{
    detail::write_header(out, header);
    for (const auto& row : report.topics) {
        out << row.topic_id << '\t' << report.run_tag << '\t' << value_text(row.value) << '\n';
    }
    out << "# mean\t" << report.run_tag << '\t' << value_text(report.mean) << '\n';
    out << "# na_topics\t" << report.run_tag << '\t' << report.na_count << '\n';
}

std::string format_report_table(const EvalReport& report)
{
    std::size_t width = 5;
    for (const auto& row : report.topics) {
        width = std::max(width, row.topic_id.size());
    }
    const std::size_t col = std::max<std::size_t>(8, report.run_tag.size());
    std::ostringstream out;
    out << pad("topic", width) << "  " << pad_left(report.run_tag, col) << '\n';
    for (const auto& row : report.topics) {
        out << pad(row.topic_id, width) << "  " << pad_left(value_text(row.value), col) << '\n';
    }
    out << pad("mean", width) << "  " << pad_left(value_text(report.mean), col) << '\n';
    out << pad("NA", width) << "  " << pad_left(std::to_string(report.na_count), col) << '\n';
    return out.str();
}

std::string format_comparison(const Comparison& cmp)
{
    std::size_t width = 5;
    for (const auto& row : cmp.rows) {
        width = std::max(width, row.topic_id.size());
    }
    const std::size_t col = std::max({std::size_t{9}, cmp.tag_a.size(), cmp.tag_b.size()});
    std::ostringstream out;
    out << pad("topic", width) << "  " << pad_left(cmp.tag_a, col) << "  " << pad_left(cmp.tag_b, col) << "  "
        << pad_left("delta", col) << '\n';
    for (const auto& row : cmp.rows) {
        const std::string delta = row.a && row.b ? detail::format_fixed(*row.a - *row.b, 6) : std::string("NA");
        out << pad(row.topic_id, width) << "  " << pad_left(value_text(row.a), col) << "  "
            << pad_left(value_text(row.b), col) << "  " << pad_left(delta, col) << '\n';
    }
    out << pad("mean", width) << "  " << pad_left(value_text(cmp.mean_a), col) << "  "
        << pad_left(value_text(cmp.mean_b), col) << "  "
        << pad_left(cmp.mean_a && cmp.mean_b ? detail::format_fixed(*cmp.mean_a - *cmp.mean_b, 6) : "NA", col) << '\n';
    out << "pairs: " << cmp.pairs << '\n';
    if (cmp.test) {
        out << "paired t-test (two-tailed, alpha=0.05): t=" << detail::format_fixed(cmp.test->t, 6)
            << " df=" << cmp.test->df << " p=" << detail::format_fixed(cmp.test->p, 6)
            << " significant=" << (cmp.test->significant() ? "yes" : "no") << '\n';
    } else {
        out << "paired t-test: not computed (fewer than 2 paired topics)\n";
    }
    return out.str();
}

void write_na_sidecar(const std::set<std::string>& topics, std::ostream& out, const std::string& header)
{
    detail::write_header(out, header);
    for (const auto& t : topics) {
        out << "NA " << t << '\n';
    }
}

std::set<std::string> read_na_sidecar(std::istream& in)
{
    std::set<std::string> topics;
    detail::LineReader reader(in);
    std::string line;
    while (reader.next(line)) {
        if (detail::is_blank_or_comment(line)) {
            continue;
        }
        const auto fields = detail::split_whitespace(line);
        if (fields.size() != 2 || fields[0] != "NA") {
            throw ParseError(reader.line_number(), "expected 'NA <topic_id>'");
        }
        topics.emplace(fields[1]);
    }
    return topics;
}

}  // namespace semrel
