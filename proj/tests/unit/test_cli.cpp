#include "excursion_kit/app.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "excursion_kit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = exkit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path() / ("exkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string at(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

} // namespace

TEST_F(Cli, UsageErrorsExitWithTwo)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"decompose", "--bogus"}).code, 2);
    EXPECT_EQ(run({"simulate", "--model", "ou", "--out", at("x"), "--steps", "abc"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, DataErrorsExitWithOneAndNameTheError)
{
    std::ofstream(at("bad.csv")) << "time,value\n1,0\n0,1\n";
    const auto r = run({"decompose", "--input", at("bad.csv"), "--delta", "0.5"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("NonMonotoneTime"), std::string::npos) << r.err;
    const auto m = run({"simulate", "--model", "ou", "--params", "alpha=0.5,beta=1", "--out", at("s")});
    EXPECT_EQ(m.code, 1);
    EXPECT_NE(m.err.find("InvalidParam"), std::string::npos);
}

TEST_F(Cli, DecomposeWritesJsonAndManifest)
{
    std::ofstream(at("p.csv")) << "time,value\n0,0\n1,0.6\n2,-0.1\n3,0.7\n4,0\n";
    const auto r = run({"decompose", "--input", at("p.csv"), "--delta", "0.5", "--out", at("exc.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string doc = slurp(at("exc.json"));
    EXPECT_NE(doc.find("\"complete_excursions\": 2"), std::string::npos);
    const std::string manifest = slurp(at("exc.json.manifest.json"));
    EXPECT_NE(manifest.find("\"schema_version\": 1"), std::string::npos);
    EXPECT_NE(manifest.find("fnv1a64"), std::string::npos);
}

TEST_F(Cli, SimulateThenBacktestIsDeterministic)
{
    for (const char* run_dir : {"a", "b"}) {
        const std::string sim = at(std::string(run_dir) + "/sim");
        ASSERT_EQ(run({"simulate", "--model", "ou", "--params", "alpha=0.5,mu=0,gamma=0.1", "--dt", "1", "--steps",
                       "28800", "--paths", "3", "--seed", "1", "--out", sim})
                      .code,
                  0);
        for (int i = 0; i < 3; ++i) {
            const std::string name = "path_000" + std::to_string(i);
            ASSERT_EQ(run({"backtest", "--input", sim + "/" + name + ".csv", "--delta", "0.07", "--stop-loss", "0.2",
                           "--out", at(std::string(run_dir) + "/bt_" + name)})
                          .code,
                      0);
        }
    }
    const std::string threaded = at("c/sim");
    ASSERT_EQ(run({"--threads", "3", "simulate", "--model", "ou", "--params", "alpha=0.5,mu=0,gamma=0.1", "--dt", "1",
                   "--steps", "28800", "--paths", "3", "--seed", "1", "--out", threaded})
                  .code,
              0);
    for (int i = 0; i < 3; ++i) {
        const std::string name = "path_000" + std::to_string(i);
        EXPECT_EQ(slurp(at("a/sim/" + name + ".csv")), slurp(at("b/sim/" + name + ".csv")));
        EXPECT_EQ(slurp(at("a/sim/" + name + ".csv")), slurp(threaded + "/" + name + ".csv"));
        for (const char* f : {"ledger.csv", "cycles.json"})
            EXPECT_EQ(slurp(at("a/bt_" + name + "/" + f)), slurp(at("b/bt_" + name + "/" + f)));
    }
    EXPECT_EQ(slurp(at("a/sim/path_0000.csv")).substr(0, 15), "time,value\n0,0\n");
    const std::string ledger = slurp(at("a/bt_path_0000/ledger.csv"));
    EXPECT_EQ(ledger.substr(0, ledger.find('\n')), "time,position,value,realized,drawdown");
}

TEST_F(Cli, StdoutCarriesOnlyData)
{
    const auto r = run({"analytics", "mgf", "--model", "bm", "--params", "sigma=1", "--lambda-grid", "0.5",
                        "--delta", "1", "--out", "-"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "lambda,waiting,holding,cycle");
    EXPECT_NE(r.out.find("0.1353352832366127"), std::string::npos) << r.out;
    EXPECT_NE(r.err.find("\"command\": \"analytics\""), std::string::npos);
}

TEST_F(Cli, EmpiricalPipeline)
{
    ASSERT_EQ(run({"simulate", "--model", "ou", "--params", "alpha=0.05,gamma=0.02", "--dt", "1", "--steps", "20000",
                   "--paths", "2", "--seed", "4", "--out", at("px")})
                  .code,
              0);
    const auto sig = run({"signal", "pairs", "--a", at("px/path_0000.csv"), "--b", at("px/path_0001.csv"), "--window",
                          "1h", "--refit", "10m", "--out", at("sig.csv")});
    ASSERT_EQ(sig.code, 0) << sig.err;
    const auto est = run({"estimate", "ou", "--input", at("px/path_0000.csv"), "--dt", "1", "--out", at("fit.json")});
    ASSERT_EQ(est.code, 0) << est.err;
    EXPECT_NE(slurp(at("fit.json")).find("alpha_hat"), std::string::npos);
    const auto bs = run({"bootstrap", "--input", at("px/path_0000.csv"), "--delta", "auto", "--horizon", "2h",
                         "--paths", "3", "--seed", "7", "--out", at("bs")});
    ASSERT_EQ(bs.code, 0) << bs.err;
    EXPECT_TRUE(fs::exists(at("bs/path_0002.csv")));
    EXPECT_TRUE(fs::exists(at("bs/manifest.json")));
    const auto rep = run({"report", "--a", at("bs/path_0000.csv"), "--b", at("bs/path_0001.csv"), "--out", at("r.json")});
    ASSERT_EQ(rep.code, 0) << rep.err;
    EXPECT_NE(slurp(at("r.json")).find("rank_frequency_a"), std::string::npos);
    const auto rough = run({"roughness", "--input", at("px/path_0000.csv"), "--scale", "1", "--out", at("curve.csv")});
    ASSERT_EQ(rough.code, 0) << rough.err;
    EXPECT_EQ(slurp(at("curve.csv")).substr(0, 29), "delta,count,realized_profit\n1");
}

TEST_F(Cli, DurationsAndGrids)
{
    EXPECT_EQ(run({"analytics", "frontier", "--params", "alpha=0.5,gamma=0.1", "--horizon", "2x", "--delta-grid",
                   "0.1", "--out", at("f.csv")})
                  .code,
              2);
    EXPECT_EQ(run({"analytics", "maxloss", "--params", "alpha=0.5,gamma=0.1", "--delta-grid", "0.5:1:3",
                   "--sigma-units", "--stop-loss", "0.1", "--out", at("m.csv")})
                  .code,
              0);
    const std::string m = slurp(at("m.csv"));
    EXPECT_EQ(std::count(m.begin(), m.end(), '\n'), 4);
}
