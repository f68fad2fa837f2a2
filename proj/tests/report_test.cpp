#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "padyn/suites.hpp"

using namespace padyn;

TEST(ReportTest, CsvQuoting) {
    Record r;
    r.suite = "s";
    r.index = 3;
    r.inputs = {{"w", "1,0"}};
    r.observed = {{"note", "say \"hi\""}};
    r.expected = "plain";
    r.verdict = "pass";
    r.regime_flag = "verified";
    EXPECT_EQ(to_csv_row(r), "s,3,\"w=1,0\",\"note=say \"\"hi\"\"\",plain,pass,verified");
    std::ostringstream os;
    write_records(os, {r}, ReportFormat::csv);
    EXPECT_EQ(os.str().rfind(std::string(kCsvHeader) + "\r\n", 0), 0u);
}

TEST(ReportTest, JsonRecordFields) {
    Record r;
    r.suite = "s";
    r.observed = {{"v", "3"}};
    r.verdict = "fail";
    const auto j = nlohmann::json::parse(to_json(r).dump());
    for (const char* key : {"suite", "index", "inputs", "observed", "expected", "verdict", "regime_flag"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["observed"]["v"], "3");
    EXPECT_THROW(parse_format("xml"), ParseError);
}

TEST(ReportTest, VerifyIsDeterministicAcrossWorkerCounts) {
    RunConfig c;
    c.samples = 20;
    c.seed = 42;
    auto render = [&](unsigned workers) {
        c.workers = workers;
        std::ostringstream os;
        write_records(os, run_verify(c).records, ReportFormat::json);
        return os.str();
    };
    const std::string a = render(1);
    EXPECT_EQ(a, render(3));
    c.seed = 43;
    EXPECT_NE(a, render(1));
}

TEST(ReportTest, VerifyHeaderAndSummary) {
    RunConfig c;
    c.p = 3;
    c.e = 2;
    c.precision = 12;
    c.samples = 10;
    const VerifyReport rep = run_verify(c);
    ASSERT_GE(rep.records.size(), 2u);
    const Record& h = rep.records.front();
    EXPECT_EQ(h.suite, "header");
    bool saw = false;
    for (const auto& [k, v] : h.observed)
        if (k == "v_pi(p)") {
            EXPECT_EQ(v, "2");
            saw = true;
        }
    EXPECT_TRUE(saw);
    EXPECT_EQ(rep.records.back().suite, "summary");
    EXPECT_TRUE(rep.all_hard_checks_pass());
}

TEST(ReportTest, ExperimentalRegimeDowngrades) {
    RunConfig c;
    c.m = 2;
    c.n = 1;
    c.samples = 10;
    const VerifyReport rep = run_verify(c);
    EXPECT_EQ(rep.records.front().regime_flag, "experimental_n1");
    for (const auto& r : rep.records) {
        if (r.suite == "local_scaling") {
            EXPECT_EQ(r.verdict, "report");
        }
    }
}

TEST(ReportTest, ConfigErrors) {
    RunConfig c;
    c.m = 1;
    c.n = 1;
    EXPECT_THROW(run_verify(c), BadParameters);
    c = RunConfig{};
    c.max_steps = 40;
    EXPECT_THROW(run_verify(c), BadParameters);
}
