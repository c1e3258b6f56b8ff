#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "fixture.hpp"

namespace fs = std::filesystem;
using semrel::fixture::fixture_dir;
using semrel::fixture::read_file;
using semrel::fixture::scratch_dir;

namespace {

struct Result {
    int status = -1;
    std::string output;  // stdout and stderr interleaved
};

Result run_cli(const std::string& args)
{
    const std::string command = std::string(SEMREL_CLI_PATH) + " " + args + " 2>&1";
    Result r;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.output.append(buf.data(), n);
    }
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string fixture_args(const fs::path& work)
{
    return "-c " + (fixture_dir() / "semrel.conf").string() + " --work-dir " + work.string();
}

}  // namespace

TEST(Cli, BatchReportsNaTopic)
{
    const auto work = scratch_dir("cli_batch");
    const auto r = run_cli(fixture_args(work) + " batch");
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("OHSU4"), std::string::npos);
    EXPECT_NE(r.output.find("NA"), std::string::npos);
    EXPECT_TRUE(fs::exists(work / "runs" / "topics.bor.passage.run"));
}

TEST(Cli, StagesInSequence)
{
    const auto work = scratch_dir("cli_stages");
    for (const char* stage : {"ingest", "link", "extract", "index", "search", "eval"}) {
        const auto r = run_cli(fixture_args(work) + " " + stage);
        ASSERT_EQ(r.status, 0) << stage << ": " << r.output;
        EXPECT_FALSE(r.output.empty()) << stage;
    }
}

TEST(Cli, PassageWithBowIsInvalid)
{
    const auto work = scratch_dir("cli_invalid");
    const auto r = run_cli(fixture_args(work) + " --representation bow --granularity passage index");
    EXPECT_EQ(r.status, 4) << r.output;
}

TEST(Cli, UnknownOptionIsInvalid)
{
    EXPECT_EQ(run_cli("--no-such-flag batch").status, 4);
    EXPECT_EQ(run_cli(fixture_args(scratch_dir("cli_k1")) + " --k1 -3 batch").status, 4);
}

TEST(Cli, MissingInputFile)
{
    const auto work = scratch_dir("cli_missing");
    const auto r = run_cli(fixture_args(work) + " --corpus " + (work / "absent.ohsu").string() + " ingest");
    EXPECT_EQ(r.status, 2) << r.output;
    EXPECT_NE(r.output.find("absent.ohsu"), std::string::npos);
    EXPECT_EQ(run_cli("-c " + (work / "none.conf").string() + " batch").status, 2);
}

TEST(Cli, MalformedInputReportsLine)
{
    const auto work = scratch_dir("cli_malformed");
    const auto bad = work / "bad_qrels.txt";
    std::ofstream(bad) << "OHSU1 0 87049001 2\nOHSU1 0 87049002 high\n";
    const auto r = run_cli(fixture_args(work) + " --qrels " + bad.string() + " batch");
    EXPECT_EQ(r.status, 3) << r.output;
    EXPECT_NE(r.output.find("line 2"), std::string::npos) << r.output;
}

TEST(Cli, CompareTableWithTTest)
{
    const auto work = scratch_dir("cli_compare");
    ASSERT_EQ(run_cli(fixture_args(work) + " batch").status, 0);
    ASSERT_EQ(run_cli(fixture_args(work) + " --representation boc --granularity doc batch").status, 0);
    const auto out = work / "cmp.txt";
    const auto r = run_cli(fixture_args(work) + " compare " + (work / "runs/topics.bor.passage.run").string() + " " +
                           (work / "runs/topics.boc.doc.run").string() + " -o " + out.string());
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("paired t-test"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("bor.passage"), std::string::npos);
    EXPECT_NE(r.output.find("boc.doc"), std::string::npos);
    EXPECT_NE(read_file(out).find("paired t-test"), std::string::npos);
}

TEST(Cli, SetOverridesConfigFile)
{
    const auto work = scratch_dir("cli_set");
    const auto r = run_cli(fixture_args(work) + " --set representation=bow --set granularity=doc batch");
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_TRUE(fs::exists(work / "runs" / "topics.bow.doc.run"));
}
