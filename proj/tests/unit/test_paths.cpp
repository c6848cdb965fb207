#include "exkit/crossings.hpp"
#include "exkit/csv.hpp"
#include "exkit/error.hpp"
#include "exkit/excursion.hpp"
#include "exkit/simulate.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace exkit;

namespace {

Path from_values(std::vector<double> v)
{
    return Path::uniform(std::move(v), 1.0);
}

template <class Fn>
ErrorCode code_of(Fn&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no exkit::Error thrown";
    return ErrorCode::IoError;
}

Path sine_path(std::size_t n, double periods)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = std::sin(2.0 * std::numbers::pi * periods * static_cast<double>(i) / static_cast<double>(n - 1));
    return Path::uniform(std::move(v), periods / static_cast<double>(n - 1));
}

} // namespace

TEST(Path, RejectsMalformedInput)
{
    EXPECT_EQ(code_of([] { Path({0.0}, {0.0}); }), ErrorCode::EmptyPath);
    EXPECT_EQ(code_of([] { Path({0.0, 1.0}, {0.0}); }), ErrorCode::LengthMismatch);
    EXPECT_EQ(code_of([] { Path({0.0, 0.0}, {0.0, 1.0}); }), ErrorCode::NonMonotoneTime);
    EXPECT_EQ(code_of([] { Path({0.0, 1.0}, {0.0, NAN}); }), ErrorCode::NonFiniteValue);
}

TEST(Crossings, SingleForcedCycle)
{
    const auto c = detect_crossings(std::vector<double>{0, 0.6, -0.1}, 0.5);
    ASSERT_EQ(c.complete_cycles(), 1u);
    EXPECT_EQ(c.tau_plus[0], 1u);
    EXPECT_EQ(c.theta_plus[0], 2u);
    EXPECT_FALSE(c.open_at_end());
}

TEST(Crossings, NeverReachesDelta)
{
    const auto c = detect_crossings(std::vector<double>{0, 0.3, 0.2, 0.4}, 0.5);
    EXPECT_EQ(c.complete_cycles(), 0u);
    EXPECT_TRUE(c.tau_plus.empty());
}

TEST(Crossings, SineWaveMatchesScanOracle)
{
    const Path p = sine_path(10'000, 3.0);
    EXPECT_EQ(count_crossings(p.values(), 0.5), 3u);
    EXPECT_EQ(count_crossings(p.values(), 0.5), oracle::scan_crossings(p.values(), 0.5));
}

TEST(Crossings, LowerPolarityTracksNegatedPath)
{
    const std::vector<double> v{0, -0.6, 0.1, -0.7, 0.3};
    const auto c = detect_crossings(v, 0.5, Polarity::lower);
    EXPECT_EQ(c.complete_cycles(), 2u);
    EXPECT_EQ(c.tau_plus, (std::vector<std::size_t>{1, 3}));
}

TEST(Crossings, RandomPathsAgreeWithScan)
{
    SimConfig cfg;
    cfg.n_steps = 5000;
    cfg.n_paths = 20;
    cfg.seed = 11;
    for (const auto& p : simulate_bm(1.0, cfg))
        for (double d : {0.5, 2.0, 7.0}) EXPECT_EQ(count_crossings(p.values(), d), oracle::scan_crossings(p.values(), d));
}

TEST(Decompose, TwoForcedCycles)
{
    const auto ex = decompose(from_values({0, 0.6, -0.1, 0.7, 0.0}), 0.5);
    ASSERT_EQ(ex.size(), 2u);
    EXPECT_TRUE(ex[0].complete);
    EXPECT_TRUE(ex[1].complete);
    EXPECT_EQ(ex[1].values, (std::vector<double>{-0.1, 0.7, 0.0}));
}

TEST(Decompose, UpSegmentKeepsZeroTouchingPrefix)
{
    const auto ex = decompose(from_values({0, 0.2, 0, 0.6, -0.1}), 0.5);
    ASSERT_EQ(ex.size(), 1u);
    EXPECT_EQ(ex[0].tau_index, 3u);
    EXPECT_EQ(ex[0].last_exit_index, 2u);
    const auto up = ex[0].up_segment();
    EXPECT_EQ(std::vector<double>(up.begin(), up.end()), (std::vector<double>{0, 0.2, 0, 0.6}));
}

TEST(Decompose, RequiresStartAtReference)
{
    EXPECT_EQ(code_of([] { decompose(from_values({0.1, 0.6, -0.1}), 0.5); }), ErrorCode::StartNotAtReference);
    DecomposeOptions o;
    o.auto_shift = true;
    EXPECT_EQ(decompose(from_values({0.1, 0.7, 0.0}), 0.5, o).size(), 1u);
}

TEST(Decompose, RoundTripOnOUPaths)
{
    SimConfig cfg;
    cfg.n_steps = 20'000;
    cfg.n_paths = 10;
    cfg.seed = 3;
    for (const auto& p : simulate_ou(0.5, 0.0, 0.1, cfg))
        for (double d : {0.05, 0.1, 0.2}) EXPECT_EQ(reconstruct(decompose(p, d)), p);
}

TEST(Reconstruct, SingleExcursionIsIdentity)
{
    const Path p = from_values({0, 0.6, -0.1});
    const auto ex = decompose(p, 0.5);
    EXPECT_EQ(reconstruct(ex), p);
}

TEST(Reconstruct, TwoCopiesDoubleTheSpan)
{
    const auto ex = decompose(Path({0.0, 1.0, 2.0}, {0.0, 0.6, 0.0}), 0.5);
    const std::vector<DeltaExcursion> two{ex[0], ex[0]};
    const Path r = reconstruct(two);
    EXPECT_DOUBLE_EQ(r.span(), 2.0 * ex[0].duration());
    EXPECT_EQ(r.size(), 5u);
}

TEST(Reconstruct, IncompleteInteriorIsRejected)
{
    const auto ex = decompose(from_values({0, 0.6, -0.1, 0.2, 0.3}), 0.5);
    ASSERT_EQ(ex.size(), 2u);
    ASSERT_FALSE(ex[1].complete);
    const std::vector<DeltaExcursion> bad{ex[1], ex[0]};
    EXPECT_EQ(code_of([&] { reconstruct(bad); }), ErrorCode::IncompleteInterior);
}

TEST(LastExit, NoRetouchGivesEmptyPrefix)
{
    const auto ex = decompose(from_values({0, 0.3, 0.6, -0.1}), 0.5);
    const auto s = last_exit_split(ex.at(0));
    EXPECT_TRUE(s.prefix.empty());
    EXPECT_EQ(s.final_excursion, ex[0].values);
    EXPECT_EQ(s.split_time, 0.0);
}

TEST(LastExit, PrefixAndFinalExcursion)
{
    const auto ex = decompose(from_values({0, 0.2, 0, 0.6, -0.1}), 0.5);
    const auto s = last_exit_split(ex.at(0));
    EXPECT_EQ(s.prefix, (std::vector<double>{0, 0.2, 0}));
    EXPECT_EQ(s.final_excursion, (std::vector<double>{0, 0.6, -0.1}));
    EXPECT_DOUBLE_EQ(s.split_time, 2.0);
}

TEST(LastExit, PrefixNeverReachesDeltaOnOUExcursions)
{
    SimConfig cfg;
    cfg.n_steps = 50'000;
    cfg.seed = 9;
    const auto p = simulate_ou(0.5, 0.0, 0.1, cfg).front();
    const double delta = 0.1;
    std::size_t checked = 0;
    for (const auto& e : decompose(p, delta)) {
        if (!e.complete) continue;
        const auto s = last_exit_split(e);
        for (double v : s.prefix) EXPECT_LT(v, delta);
        if (!s.prefix.empty()) {
            EXPECT_LE(s.prefix.back(), 0.0);
        }
        EXPECT_LE(s.final_excursion.front(), 0.0);
        for (std::size_t i = 1; i + 1 < s.final_excursion.size() && s.final_excursion[i] < delta; ++i)
            EXPECT_GT(s.final_excursion[i], 0.0);
        ++checked;
    }
    EXPECT_GT(checked, 100u);
}

TEST(TwoSided, SineWaveOrderIndependent)
{
    const Path p = sine_path(10'000, 3.0);
    const auto a = decompose_two_sided(p, 0.5, SplitOrder::positive_first);
    const auto b = decompose_two_sided(p, 0.5, SplitOrder::negative_first);
    EXPECT_EQ(a.boundaries(), b.boundaries());
    EXPECT_FALSE(a.boundaries().empty());
}

TEST(TwoSided, NonNegativePathMatchesOneSided)
{
    const Path p = from_values({0, 0.6, 0.0, 0.2, 0.7, 0.0, 0.3});
    const auto two = decompose_two_sided(p, 0.5);
    const auto one = detect_crossings(p, 0.5);
    EXPECT_EQ(two.boundaries(), one.theta_plus);
}

TEST(TwoSided, BrownianPathsOrderIndependent)
{
    SimConfig cfg;
    cfg.n_steps = 20'000;
    cfg.n_paths = 5;
    cfg.seed = 21;
    for (const auto& p : simulate_bm(1.0, cfg)) {
        const auto a = decompose_two_sided(p, 0.5, SplitOrder::positive_first);
        const auto b = decompose_two_sided(p, 0.5, SplitOrder::negative_first);
        EXPECT_EQ(a.boundaries(), b.boundaries());
    }
}

TEST(Csv, TwoRowFile)
{
    std::istringstream in("time,value\n0,0\n1,0.5\n");
    const Path p = parse_csv(in);
    EXPECT_EQ(p.size(), 2u);
    EXPECT_EQ(p.value(1), 0.5);
}

TEST(Csv, OutOfOrderRows)
{
    std::istringstream in("time,value\n1,0\n0,0.5\n");
    EXPECT_EQ(code_of([&] { parse_csv(in); }), ErrorCode::NonMonotoneTime);
}

TEST(Csv, BadHeaderAndRows)
{
    std::istringstream a("t,v\n0,0\n1,1\n");
    EXPECT_EQ(code_of([&] { parse_csv(a); }), ErrorCode::ParseError);
    std::istringstream b("time,value\n0,abc\n1,1\n");
    EXPECT_EQ(code_of([&] { parse_csv(b); }), ErrorCode::ParseError);
}

TEST(Csv, RoundTripIsExact)
{
    SimConfig cfg;
    cfg.n_steps = 2000;
    cfg.dt = 0.37;
    cfg.seed = 5;
    const Path p = simulate_ou(0.5, 0.0, 0.1, cfg).front();
    std::stringstream io;
    write_csv(p, io);
    EXPECT_EQ(parse_csv(io), p);
}
