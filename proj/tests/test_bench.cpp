#include "llmr/bench.hpp"
#include "llmr/error.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace llmr::bench {
namespace {

using test::TempDir;

TEST(CostModel, ClosedForms) {
    CostModel m;
    m.startup_s = 0.2;
    m.work_w = 0.02;
    m.files = 512;
    EXPECT_EQ(files_per_task(512, 256), 2u);
    EXPECT_EQ(files_per_task(512, 3), 171u);
    EXPECT_DOUBLE_EQ(predicted_elapsed(m, Mode::default_mode, 256), 2 * 0.22);
    EXPECT_DOUBLE_EQ(predicted_elapsed(m, Mode::block, 256), 2 * 0.22);
    EXPECT_DOUBLE_EQ(predicted_elapsed(m, Mode::mimo, 256), 0.2 + 2 * 0.02);
    EXPECT_DOUBLE_EQ(predicted_overhead(m, Mode::block, 4), 128 * 0.2);
    EXPECT_DOUBLE_EQ(predicted_overhead(m, Mode::mimo, 4), 0.2);

    SweepMeasurement s;
    s.files_per_task = 4;
    s.elapsed = 1.0;
    EXPECT_DOUBLE_EQ(overhead_per_task(s, m), 1.0 - 4 * 0.02);
}

TEST(CostModel, Check) {
    CostModel m;
    EXPECT_NO_THROW(check(m));
    m.task_counts = {513};
    EXPECT_THROW(check(m), ConfigError);
    m.task_counts = {1};
    m.startup_s = 0;
    EXPECT_THROW(check(m), ConfigError);
}

TEST(Modes, RoundTrip) {
    for (auto m : {Mode::default_mode, Mode::block, Mode::mimo}) EXPECT_EQ(parse_mode(to_string(m)), m);
    EXPECT_FALSE(parse_mode("cyclic").has_value());
}

TEST(SweepConfig, ModeMapping) {
    auto const d = sweep_config(Mode::default_mode, 4, "/r", "/s");
    EXPECT_EQ(d.distribution, Distribution::cyclic);
    EXPECT_EQ(d.apptype, AppType::siso);
    EXPECT_EQ(d.np, 4u);
    EXPECT_EQ(d.concurrency, 4u);
    auto const b = sweep_config(Mode::block, 4, "/r", "/s");
    EXPECT_EQ(b.distribution, Distribution::block);
    EXPECT_EQ(b.apptype, AppType::siso);
    auto const m = sweep_config(Mode::mimo, 4, "/r", "/s");
    EXPECT_EQ(m.apptype, AppType::mimo);
    EXPECT_NE(d.output, b.output);
}

TEST(Corpus, Deterministic) {
    TempDir a, b;
    synthesize_corpus(a / "c", 12, 32);
    synthesize_corpus(b / "c", 12, 32);
    auto const sa = test::snapshot_tree(a / "c");
    EXPECT_EQ(sa, test::snapshot_tree(b / "c"));
    ASSERT_EQ(sa.size(), 12u);
    EXPECT_EQ(sa.begin()->first, "file_0001");
    EXPECT_EQ(sa.begin()->second.size(), 32u);
    synthesize_corpus(a / "c", 3, 1);  // starts fresh
    EXPECT_EQ(test::snapshot_tree(a / "c").size(), 3u);
}

TEST(JobSpan, EarliestStartToLatestExit) {
    auto const t0 = Clock::now();
    std::vector<TaskResult> rs(2);
    rs[0].started_at = t0 + std::chrono::milliseconds(10);
    rs[0].finished_at = t0 + std::chrono::milliseconds(50);
    rs[1].started_at = t0;
    rs[1].finished_at = t0 + std::chrono::milliseconds(30);
    EXPECT_NEAR(job_span(rs), 0.05, 1e-9);
    EXPECT_EQ(job_span({}), 0.0);
}

TEST(SpeedupTable, BaselineAndOrder) {
    std::vector<SweepMeasurement> ms{{Mode::mimo, 2, 1, 0.5, 0, 0, 0},
                                     {Mode::default_mode, 2, 1, 1.0, 0, 0, 0},
                                     {Mode::default_mode, 1, 2, 2.0, 0, 0, 0}};
    auto const t = speedup_table(ms);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0].tasks, 1u);
    EXPECT_EQ(t[1].tasks, 2u);
    EXPECT_EQ(t[2].mode, Mode::mimo);
    EXPECT_DOUBLE_EQ(t[0].speedup, 1.0);
    EXPECT_DOUBLE_EQ(t[2].speedup, 4.0);
    ms.pop_back();
    EXPECT_THROW(speedup_table(ms), Error);

    auto const text = format_table(t);
    EXPECT_EQ(text.substr(0, text.find('\n')), "mode,T,k,elapsed,overhead,speedup,wall");
    EXPECT_NE(text.find("mimo,2,1,0.5,0,4,0\n"), std::string::npos);
}

TEST(Sweep, SmallSweepMatchesModel) {
    TempDir d;
    CostModel m;
    m.startup_s = 0.05;
    m.work_w = 0.01;
    m.files = 8;
    m.task_counts = {1, 4};
    auto const ms = run_sweep(m, {d / "bench", test::sleep_mapper(), 1, 16});
    ASSERT_EQ(ms.size(), 6u);
    for (auto const& s : ms) {
        double const p = predicted_elapsed(m, s.mode, s.tasks);
        EXPECT_GE(s.elapsed, p * 0.95) << to_string(s.mode) << "@" << s.tasks;
        EXPECT_LE(s.elapsed, p * 2.0 + 0.1) << to_string(s.mode) << "@" << s.tasks;
    }
    EXPECT_DOUBLE_EQ(ms[0].speedup, 1.0);
    for (auto const& s : ms) EXPECT_LE(s.elapsed, s.wall);
    EXPECT_FALSE(fs::exists(d / "bench/output_default_1"));
}

TEST(Sweep, RejectsMissingStub) {
    TempDir d;
    CostModel m;
    m.files = 2;
    m.task_counts = {1};
    EXPECT_THROW(run_sweep(m, {d / "b", d / "nope", 1, 1}), ConfigError);
}

}  // namespace
}  // namespace llmr::bench
