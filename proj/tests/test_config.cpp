#include "llmr/config.hpp"
#include "llmr/error.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace llmr {
namespace {

using test::TempDir;

class ConfigTest : public ::testing::Test {
protected:
    void SetUp() override {
        fs::create_directories(dir_ / "input");
        test::write_file(dir_ / "list.txt", "input/a\n");
    }

    LaunchConfig minimal() const {
        LaunchConfig c;
        c.work_dir = dir_.path();
        c.mapper = "m.sh";
        c.input = "input/";
        c.output = "output/";
        return c;
    }

    TempDir dir_;
};

TEST_F(ConfigTest, DefaultsApplied) {
    auto const c = validate(minimal());
    EXPECT_EQ(c.ext, "out");
    EXPECT_EQ(c.delimiter, ".");
    EXPECT_EQ(c.distribution, Distribution::block);
    EXPECT_EQ(c.apptype, AppType::siso);
    EXPECT_FALSE(c.subdir);
    EXPECT_FALSE(c.keep);
    EXPECT_FALSE(c.exclusive);
    EXPECT_EQ(c.max_array_tasks, 75000u);
    EXPECT_FALSE(c.redout.has_value());
}

TEST_F(ConfigTest, ReducerGetsDefaultRedout) {
    auto raw = minimal();
    raw.reducer = "r.sh";
    EXPECT_EQ(validate(raw).redout, "llmapreduce.out");

    raw.redout = "final.txt";
    EXPECT_EQ(validate(raw).redout, "final.txt");
}

TEST_F(ConfigTest, NdataOverridesNpWithWarning) {
    auto raw = minimal();
    raw.np = 10;
    raw.ndata = 4;
    std::vector<std::string> warnings;
    auto const c = validate(raw, &warnings);
    EXPECT_FALSE(c.np.has_value());
    EXPECT_EQ(c.ndata, 4u);
    ASSERT_EQ(warnings.size(), 1u);
}

TEST_F(ConfigTest, Rejections) {
    auto expect_error = [](LaunchConfig c, std::string const& fragment) {
        try {
            validate(c);
            FAIL() << "expected ConfigError containing " << fragment;
        } catch (ConfigError const& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };

    auto c = minimal();
    c.np = 0;
    expect_error(c, "np must be positive");

    c = minimal();
    c.ndata = 0;
    expect_error(c, "ndata must be positive");

    c = minimal();
    c.mapper.clear();
    expect_error(c, "mapper");

    c = minimal();
    c.input.clear();
    expect_error(c, "input");

    c = minimal();
    c.delimiter = "a/b";
    expect_error(c, "delimiter");

    c = minimal();
    c.ext = "";
    expect_error(c, "ext");

    c = minimal();
    c.input = "missing";
    expect_error(c, "does not exist");
}

TEST_F(ConfigTest, ListFileInputAccepted) {
    auto c = minimal();
    c.input = "list.txt";
    EXPECT_NO_THROW(validate(c));
}

TEST_F(ConfigTest, Idempotent) {
    std::vector<LaunchConfig> cases;
    cases.push_back(minimal());
    auto c = minimal();
    c.reducer = "r.sh";
    c.np = 3;
    c.ndata = 2;
    c.ext = "gray";
    c.apptype = AppType::mimo;
    cases.push_back(c);
    c = minimal();
    c.redout = "x";
    c.distribution = Distribution::cyclic;
    cases.push_back(c);

    for (auto const& raw : cases) {
        auto const once = validate(raw);
        EXPECT_EQ(validate(once), once);
    }
}

TEST_F(ConfigTest, UserValuesSurvive) {
    auto raw = minimal();
    raw.np = 7;
    raw.ext = "gray";
    raw.delimiter = "_";
    raw.extra_options = "-l mem=8G";
    raw.keep = true;
    raw.subdir = true;
    auto const c = validate(raw);
    EXPECT_EQ(c.np, 7u);
    EXPECT_EQ(c.ext, "gray");
    EXPECT_EQ(c.delimiter, "_");
    EXPECT_EQ(c.extra_options, "-l mem=8G");
    EXPECT_TRUE(c.keep);
    EXPECT_TRUE(c.subdir);
}

}  // namespace
}  // namespace llmr
