// semrel: batch experiment driver for word / concept / relation retrieval.
//
// Exit status: 0 success, 1 internal error, 2 missing input, 3 malformed input,
// 4 invalid option or option combination.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "semrel/error.hpp"
#include "semrel/pipeline.hpp"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitMissingInput = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitInvalidOptions = 4;

struct Overrides {
    std::string config_file;
    std::vector<std::string> assignments;  // --set key=value
    std::vector<std::pair<std::string, std::string>> flags;
};

// Registers `--name` as an override of configuration key `key`.
void add_override(CLI::App& app, Overrides& overrides, const std::string& name, const std::string& key,
                  const std::string& help)
{
    app.add_option_function<std::string>(
           "--" + name, [&overrides, key](const std::string& value) { overrides.flags.emplace_back(key, value); }, help)
        ->type_name("VALUE");
}

semrel::PipelineConfig resolve_config(const Overrides& overrides)
{
    semrel::PipelineConfig config;
    std::string file = overrides.config_file;
    if (file.empty()) {
        if (const char* env = std::getenv("SEMREL_CONFIG"); env != nullptr && *env != '\0') {
            file = env;
        }
    }
    if (!file.empty()) {
        semrel::load_config_file(file, config);
    }
    for (const auto& assignment : overrides.assignments) {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos) {
            throw semrel::ConfigError("--set expects key=value, got '" + assignment + "'");
        }
        config.set(assignment.substr(0, eq), assignment.substr(eq + 1));
    }
    for (const auto& [key, value] : overrides.flags) {
        config.set(key, value);
    }
    config.validate();
    return config;
}

void print(const semrel::StageOutcome& outcome)
{
    if (!outcome.details.empty()) {
        std::cout << outcome.details;
    }
    std::cout << outcome.summary << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"semrel: retrieval over bags of words, concepts and relations"};
    app.require_subcommand(1);
    Overrides overrides;

    app.add_option("-c,--config", overrides.config_file, "key = value configuration file (default: $SEMREL_CONFIG)");
    app.add_option("--set", overrides.assignments, "Override any configuration key (key=value)")->type_name("KEY=VALUE");
    add_override(app, overrides, "corpus", "corpus", "OHSUMED-format corpus");
    add_override(app, overrides, "topics", "topics", "Topic file");
    add_override(app, overrides, "qrels", "qrels", "Relevance judgments");
    add_override(app, overrides, "kb-concepts", "kb_concepts", "KB concepts file (CUI|STRING|P/S)");
    add_override(app, overrides, "kb-relations", "kb_relations", "KB relations file (SUBJECT|PREDICATE|OBJECT)");
    add_override(app, overrides, "work-dir", "work_dir", "Directory for artifacts");
    add_override(app, overrides, "representation", "representation", "bow, boc or bor");
    add_override(app, overrides, "granularity", "granularity", "doc or passage");
    add_override(app, overrides, "k1", "k1", "BM25 k1");
    add_override(app, overrides, "b", "b", "BM25 b");
    add_override(app, overrides, "top-k", "top_k", "Documents retrieved per topic");
    add_override(app, overrides, "passage-len", "passage_len", "Sentences per passage");
    add_override(app, overrides, "cutoff", "cutoff", "nDCG rank cutoff");
    add_override(app, overrides, "stemming", "stemming", "on/off");
    add_override(app, overrides, "stopwords", "stopwords", "on/off");
    add_override(app, overrides, "run-tag", "run_tag", "Run tag written in run files");

    auto* ingest = app.add_subcommand("ingest", "Parse corpus, topics and qrels; write the sentence file");
    auto* link = app.add_subcommand("link", "Link concept mentions; write the mention file");
    auto* extract = app.add_subcommand("extract", "Extract relations (rule-based) or import an annotation file");
    std::string method;
    std::string from;
    extract->add_option("--method", method, "rule or external")->check(CLI::IsMember({"rule", "external"}));
    extract->add_option("--from", from, "Annotation file to import (implies --method external)");
    auto* index = app.add_subcommand("index", "Build the index for the configured representation/granularity");
    auto* search = app.add_subcommand("search", "Rank every topic; write the run file and NA sidecar");
    auto* batch = app.add_subcommand("batch", "ingest, link, extract, index, search and eval in sequence");
    auto* eval = app.add_subcommand("eval", "nDCG per topic for a run file");
    std::string eval_run;
    eval->add_option("run", eval_run, "Run file (default: the configured run)");
    auto* compare = app.add_subcommand("compare", "Per-topic comparison of two runs with a paired t-test");
    std::string run_a;
    std::string run_b;
    std::string compare_output;
    bool drop_zero = false;
    compare->add_option("run_a", run_a, "First run file")->required();
    compare->add_option("run_b", run_b, "Second run file")->required();
    compare->add_option("-o,--output", compare_output, "Also write the table to this file");
    compare->add_flag("--drop-zero", drop_zero, "Exclude topics where the first run scores 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidOptions;
    }

    try {
        if (extract->parsed()) {
            if (!from.empty()) {
                overrides.flags.emplace_back("external_annotations", from);
                if (method.empty()) {
                    method = "external";
                }
            }
            if (!method.empty()) {
                overrides.flags.emplace_back("extraction", method);
            }
        }
        if (compare->parsed() && drop_zero) {
            overrides.flags.emplace_back("drop_zero", "on");
        }
        const auto config = resolve_config(overrides);

        if (ingest->parsed()) {
            print(semrel::run_ingest(config));
        } else if (link->parsed()) {
            print(semrel::run_link(config));
        } else if (extract->parsed()) {
            print(semrel::run_extract(config));
        } else if (index->parsed()) {
            print(semrel::run_index(config));
        } else if (search->parsed()) {
            print(semrel::run_search(config));
        } else if (batch->parsed()) {
            print(semrel::run_batch(config));
        } else if (eval->parsed()) {
            print(semrel::run_eval(config, eval_run));
        } else if (compare->parsed()) {
            print(semrel::run_compare(config, run_a, run_b, compare_output));
        }
    } catch (const semrel::MissingInputError& e) {
        std::cerr << "semrel: " << e.what() << '\n';
        return kExitMissingInput;
    } catch (const semrel::ParseError& e) {
        std::cerr << "semrel: malformed input: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const semrel::ConfigError& e) {
        std::cerr << "semrel: invalid options: " << e.what() << '\n';
        return kExitInvalidOptions;
    } catch (const std::exception& e) {
        std::cerr << "semrel: " << e.what() << '\n';
        return kExitInternal;
    }
    return 0;
}
