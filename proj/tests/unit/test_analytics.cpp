#include "exkit/analytics.hpp"
#include "exkit/brownian.hpp"
#include "exkit/error.hpp"
#include "exkit/first_passage.hpp"
#include "exkit/ou_transforms.hpp"
#include "exkit/renewal.hpp"
#include "exkit/rng.hpp"
#include "exkit/scale.hpp"
#include "exkit/stats.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace exkit;

namespace {

const OrnsteinUhlenbeck ou_ref{0.5, 0.0, 0.1};
constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<double> uniform_grid(double t_max, std::size_t n)
{
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = t_max * static_cast<double>(i) / static_cast<double>(n - 1);
    return t;
}

} // namespace

TEST(Scale, BrownianIsIdentity)
{
    const ScaleFunction s(DiffusionModel{Brownian{0.7}});
    for (double x : {-2.0, 0.0, 0.3, 5.0}) EXPECT_DOUBLE_EQ(s(x), x);
}

TEST(Scale, OUMatchesQuadratureOracle)
{
    const ScaleFunction s(DiffusionModel{OrnsteinUhlenbeck{1.0, 0.0, std::sqrt(2.0)}});
    const double ref = oracle::adaptive_simpson([](double y) { return std::exp(0.5 * y * y); }, 0.0, 1.0, 1e-13);
    EXPECT_NEAR(s(1.0), ref, 1e-10);
    EXPECT_NEAR(s(1.0), 1.19496, 1e-5);
    EXPECT_EQ(s(0.0), 0.0);
    EXPECT_NEAR(std::exp(s.log_value(1.0)), ref, 1e-10);
}

TEST(Scale, GeneralDiffusionReproducesOU)
{
    const ScaleFunction general(GeneralDiffusion{[](double x) { return -0.5 * x; }, [](double) { return 0.01; }});
    const ScaleFunction closed(DiffusionModel{ou_ref});
    for (double x : {0.05, 0.1, 0.3}) EXPECT_NEAR(general(x) / closed(x), 1.0, 1e-8);
}

TEST(StopLoss, BrownianIsParetoTail)
{
    const DiffusionModel bm = Brownian{1.0};
    EXPECT_NEAR(stop_loss_probability(bm, 0.1, 0.1), 0.5, 1e-14);
    EXPECT_NEAR(stop_loss_probability(bm, 0.1, 1e-9), 1.0, 1e-7);
    EXPECT_NEAR(stop_loss_quantile(bm, 0.1, 0.5), 0.1, 1e-12);
    EXPECT_LT(stop_loss_quantile(bm, 0.1, 1.0 - 1e-9), 1e-8);
}

TEST(StopLoss, OUIsDecreasingInM)
{
    const DiffusionModel m = ou_ref;
    double prev = 1.0;
    for (double M : {0.01, 0.05, 0.1, 0.2, 0.4}) {
        const double p = stop_loss_probability(m, 0.1, M);
        EXPECT_GT(p, 0.0);
        EXPECT_LT(p, prev);
        prev = p;
    }
}

TEST(StopLoss, OUQuantileRoundTrip)
{
    const DiffusionModel m = ou_ref;
    const double M = stop_loss_quantile(m, 0.1, 0.1);
    EXPECT_NEAR(stop_loss_probability(m, 0.1, M), 0.1, 1e-8);
}

TEST(StopLoss, OUMatchesMonteCarloRace)
{
    oracle::Normal rng(2024);
    const double delta = 0.1, M = 0.2;
    const int n = 20'000;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += oracle::first_exit(delta, 0.0, delta + M, 0.5, 0.1, 0.01, rng).upper_first;
    const double p = static_cast<double>(hits) / n;
    const double se = std::sqrt(p * (1 - p) / n);
    EXPECT_NEAR(stop_loss_probability(DiffusionModel{ou_ref}, delta, M), p, 3.0 * se);
}

TEST(MaxLoss, BrownianClosedForm)
{
    const DiffusionModel bm = Brownian{1.0};
    EXPECT_NEAR(expected_max_loss(bm, 0.1, 0.1), 0.1 * std::log(2.0), 1e-10);
    EXPECT_EQ(expected_max_loss(bm, 0.1, inf), inf);
    EXPECT_NEAR(BrownianCycleLaws(1.0, 0.1).expected_max_loss(0.1), 0.1 * std::log(2.0), 1e-15);
}

TEST(MaxLoss, OUMatchesMonteCarlo)
{
    const double sigma = ou_ref.stationary_stddev();
    oracle::Normal rng(7);
    std::vector<double> loss(100'000);
    for (auto& l : loss) l = oracle::max_before(sigma, 0.0, ou_ref.alpha, ou_ref.gamma, 0.01, rng) - sigma;
    const auto mc = oracle::mean_se(loss);
    EXPECT_NEAR(expected_max_loss(DiffusionModel{ou_ref}, sigma, inf) / mc.mean, 1.0, 0.03);
}

TEST(Profit, BrownianFairGame)
{
    const DiffusionModel bm = Brownian{0.3};
    for (double M : {0.05, 0.2, 1.0}) EXPECT_NEAR(per_cycle_expected_profit(bm, 0.1, M), 0.0, 1e-14);
    EXPECT_EQ(expected_realized_profit(bm, 0.1, 0.2, 100.0), 0.0);
}

TEST(Profit, ZeroHorizon)
{
    EXPECT_EQ(expected_realized_profit(DiffusionModel{ou_ref}, 0.05, 0.4, 0.0), 0.0);
}

TEST(Profit, OUMatchesMonteCarloCycles)
{
    const double delta = 0.05, M = 4.0 * ou_ref.stationary_stddev(), horizon = 600.0, dt = 0.01;
    oracle::Normal rng(31);
    std::vector<double> pnl(1000);
    for (auto& total : pnl) {
        double t = 0.0, acc = 0.0;
        for (;;) {
            t += oracle::first_passage(0.0, delta, ou_ref.alpha, ou_ref.gamma, dt, rng);
            if (t > horizon) break;
            const auto race = oracle::first_exit(delta, 0.0, delta + M, ou_ref.alpha, ou_ref.gamma, dt, rng);
            double rest = race.time;
            if (race.upper_first) rest += oracle::first_passage(delta + M, 0.0, ou_ref.alpha, ou_ref.gamma, dt, rng);
            t += rest;
            if (t > horizon) break;
            acc += race.upper_first ? -M : delta;
        }
        total = acc;
    }
    const auto mc = oracle::mean_se(pnl);
    const double model = expected_realized_profit(DiffusionModel{ou_ref}, delta, M, horizon);
    EXPECT_NEAR(model, mc.mean, 3.0 * mc.se + 0.01 * mc.mean) << "se " << mc.se;
}

TEST(HittingDensity, NormalizedAndVanishingAtZero)
{
    auto f = [](double t) { return ou_hitting_density(t, 0.1, 0.5, 0.1); };
    const double mass = oracle::adaptive_simpson(f, 1e-9, 20.0, 1e-12) +
                        oracle::adaptive_simpson(f, 20.0, 400.0, 1e-12);
    EXPECT_NEAR(mass, 1.0, 1e-6);
    EXPECT_LT(f(1e-4), 1e-12);
}

TEST(HittingDensity, LaplaceTransformIsHoldingMgf)
{
    for (double lambda : {0.1, 0.5, 2.0}) {
        auto g = [lambda](double t) { return std::exp(-lambda * t) * ou_hitting_density(t, 0.1, 0.5, 0.1); };
        const double lt = oracle::adaptive_simpson(g, 1e-9, 20.0, 1e-12) + oracle::adaptive_simpson(g, 20.0, 400.0, 1e-12);
        EXPECT_NEAR(lt, ou_holding_mgf(lambda, 0.1, ou_ref), 1e-4);
    }
}

TEST(HittingDensity, MatchesMonteCarloHistogram)
{
    oracle::Normal rng(77);
    std::vector<double> times(20'000);
    for (auto& t : times) t = oracle::first_passage(0.1, 0.0, 0.5, 0.1, 0.001, rng);
    auto cdf = [](double t) {
        return oracle::adaptive_simpson([](double u) { return ou_hitting_density(u, 0.1, 0.5, 0.1); }, 1e-9, t, 1e-10);
    };
    EXPECT_LT(oracle::ks_distance(times, cdf), 0.02);
}

TEST(OuTransforms, RatiosAreMgfs)
{
    for (double lambda : {0.01, 0.3, 3.0}) {
        const double w = ou_waiting_mgf(lambda, 0.1, ou_ref);
        const double h = ou_holding_mgf(lambda, 0.1, ou_ref);
        EXPECT_GT(w, 0.0);
        EXPECT_LT(w, 1.0);
        EXPECT_GT(h, 0.0);
        EXPECT_LT(h, 1.0);
    }
    EXPECT_NEAR(ou_waiting_mgf(1e-9, 0.1, ou_ref), 1.0, 1e-6);
    EXPECT_NEAR(ou_holding_mgf(1e-9, 0.1, ou_ref), 1.0, 1e-6);
}

TEST(OuTransforms, HoldingMgfMatchesMonteCarlo)
{
    const double lambda = 0.5;
    oracle::Normal rng(15);
    std::vector<double> w(20'000);
    for (auto& x : w) x = std::exp(-lambda * oracle::first_passage(0.1, 0.0, 0.5, 0.1, 0.001, rng));
    const auto mc = oracle::mean_se(w);
    EXPECT_NEAR(ou_holding_mgf(lambda, 0.1, ou_ref), mc.mean, 3.0 * mc.se);
}

TEST(OuTransforms, MeanTimesMatchMgfSlope)
{
    const double h = 1e-5;
    EXPECT_NEAR(ou_mean_waiting(0.1, ou_ref), (1.0 - ou_waiting_mgf(h, 0.1, ou_ref)) / h, 1e-3);
    EXPECT_NEAR(ou_mean_holding(0.1, ou_ref), (1.0 - ou_holding_mgf(h, 0.1, ou_ref)) / h, 1e-3);
}

TEST(CycleMgf, BrownianValues)
{
    const DiffusionModel bm = Brownian{1.0};
    EXPECT_NEAR(cycle_mgf(bm, 0.5, 1.0), std::exp(-2.0), 1e-12);
    EXPECT_EQ(cycle_mgf(bm, 0.0, 1.0), 1.0);
}

TEST(CycleMgf, ExcursionMeasureIdentity)
{
    for (double lambda : {0.01, 0.1, 0.5, 1.0, 4.0})
        for (double delta : {0.05, 0.2, 0.5, 1.0}) {
            const double g = brownian_excursion_measure_laplace(lambda, delta);
            const double c = brownian_excursion_complement_laplace(lambda);
            EXPECT_NEAR(mgf_from_excursion_measure(g, c), std::exp(-2.0 * std::sqrt(2.0 * lambda) * delta), 1e-13);
        }
    EXPECT_LT(cycle_mgf(DiffusionModel{Brownian{1.0}}, 1e6, 0.5), 1e-100);
    const double tiny = 1e-6;
    EXPECT_NEAR(brownian_excursion_measure_laplace(1.0, tiny) * 2.0 * tiny, 1.0, 1e-5);
}

TEST(BrownianLaws, WaitingSurvivalIsAProbability)
{
    const BrownianCycleLaws laws(1.0, 0.5);
    EXPECT_NEAR(laws.waiting_survival(1e-8), 1.0, 1e-12);
    for (double t : {0.01, 0.1, 1.0, 10.0}) {
        EXPECT_GE(laws.waiting_survival(t), 0.0);
        EXPECT_LE(laws.waiting_survival(t), 1.0);
        EXPECT_NEAR(laws.waiting_survival(t), std::erf(0.5 / std::sqrt(2.0 * t)), 1e-14);
    }
    EXPECT_NEAR(laws.worst_loss_survival(0.5), 0.5, 1e-15);
}

TEST(BrownianLaws, WaitingLawMatchesMonteCarloFirstPassage)
{
    const double t_max = 1e4;
    oracle::Normal rng(5);
    std::vector<double> fp(10'000);
    for (auto& t : fp) t = oracle::bm_first_passage(0.5, 1.0, rng, t_max);
    const BrownianCycleLaws laws(1.0, 0.5);
    std::vector<double> draws(10'000);
    exkit::RandomStream rs(3, 0);
    // Reflection: the first passage to delta has the law of delta^2 / Z^2.
    // Both samples are censored at t_max.
    for (auto& d : draws) {
        const double z = rs.normal();
        d = std::min(0.25 / (z * z), t_max);
    }
    EXPECT_GT(ks_two_sample(fp, draws).p_value, 0.01);
    EXPECT_LT(oracle::ks_distance(fp, [&](double t) { return laws.waiting_cdf(t); }), 0.02);
}

TEST(FirstPassagePde, BrownianClosedForm)
{
    const auto t = uniform_grid(4.0, 401);
    const auto F = first_passage_cdf(DiffusionModel{Brownian{1.0}}, 0.0, 0.5, t);
    for (std::size_t i = 1; i < t.size(); i += 25) EXPECT_NEAR(F[i], std::erfc(0.5 / std::sqrt(2.0 * t[i])), 2e-4) << t[i];
}

TEST(FirstPassagePde, OUMatchesHittingDensity)
{
    const auto t = uniform_grid(20.0, 401);
    const auto F = first_passage_cdf(DiffusionModel{ou_ref}, 0.1, 0.0, t);
    for (std::size_t i = 20; i < t.size(); i += 40) {
        const double ref = oracle::adaptive_simpson([](double u) { return ou_hitting_density(u, 0.1, 0.5, 0.1); },
                                                    1e-9, t[i], 1e-11);
        EXPECT_NEAR(F[i], ref, 5e-4) << t[i];
    }
}

TEST(Renewal, PoissonCase)
{
    const double r = 2.0;
    const auto t = uniform_grid(10.0 / r, 8001);
    std::vector<double> F(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) F[i] = -std::expm1(-r * t[i]);
    const auto sol = renewal_solve(F, t);
    double worst = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) worst = std::max(worst, std::abs(sol.n_delta[i] - r * t[i]) / (r * t[i]));
    EXPECT_LT(worst, 1e-3);
    EXPECT_LT(renewal_residual(sol, F), 1e-6);
    for (std::size_t i = 1; i < t.size(); ++i) ASSERT_GE(sol.n_delta[i], sol.n_delta[i - 1]);
}

TEST(Renewal, DeterministicStaircase)
{
    const double t0 = 0.7;
    const auto t = uniform_grid(7.0, 1001);
    std::vector<double> F(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) F[i] = t[i] >= t0 - 1e-12 ? 1.0 : 0.0;
    const auto sol = renewal_solve(F, t);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double k = t[i] / t0;
        if (std::abs(k - std::round(k)) < 1e-6) continue;
        EXPECT_EQ(sol.n_delta[i], std::floor(k)) << t[i];
    }
}

TEST(Renewal, RejectsInvalidCdf)
{
    const std::vector<double> t{0, 1, 2}, F{0, 0.6, 0.4};
    try {
        renewal_solve(F, t);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidCDF);
    }
}

TEST(Renewal, OUCountMatchesMonteCarlo)
{
    const double delta = 0.1, horizon = 300.0, dt = 0.005;
    oracle::Normal rng(64);
    std::vector<double> counts(1500);
    for (auto& c : counts) {
        double t = 0.0;
        int k = 0;
        for (;;) {
            t += oracle::first_passage(0.0, delta, ou_ref.alpha, ou_ref.gamma, dt, rng);
            t += oracle::first_passage(delta, 0.0, ou_ref.alpha, ou_ref.gamma, dt, rng);
            if (t > horizon) break;
            ++k;
        }
        c = k;
    }
    const auto mc = oracle::mean_se(counts);
    EXPECT_NEAR(expected_trades(DiffusionModel{ou_ref}, delta, horizon), mc.mean, 3.0 * mc.se);
}

TEST(DoubleLaplace, ZeroLambdaLimit)
{
    for (double z : {0.5, 1.0, 3.0}) EXPECT_NEAR(bm_portfolio_value_double_laplace(1e-9, z, 0.5, 1.0), 1.0 / z, 1e-6);
}

TEST(DoubleLaplace, ClosedFormMatchesRenewalComposition)
{
    for (double lambda : {0.3, 1.0})
        for (double z : {1.0, 2.5}) {
            const double lt = bm_laplace_tau(z, 0.5, 1.0), lth = bm_laplace_theta(z, 0.5, 1.0);
            const double u2 = bm_u2_transform(lambda, z, 0.5, 1.0);
            EXPECT_NEAR(portfolio_value_double_laplace(lambda, z, 0.5, lt, lth, u2),
                        bm_portfolio_value_double_laplace(lambda, z, 0.5, 1.0), 1e-12);
        }
}

TEST(DoubleLaplace, BrownianScaling)
{
    // V scales like S: (sigma, delta, lambda) -> (c sigma, c delta, lambda / c) leaves the transform unchanged.
    for (double c : {0.5, 2.0, 3.0}) {
        const double a = bm_portfolio_value_double_laplace(1.0, 1.0, 0.5, 1.0);
        const double b = bm_portfolio_value_double_laplace(1.0 / c, 1.0, 0.5 * c, c);
        EXPECT_NEAR(a, b, 1e-12);
    }
}

TEST(Frontier, SinglePointAgreesWithScalarOps)
{
    const std::vector<double> grid{0.1};
    const auto pts = efficient_frontier(DiffusionModel{ou_ref}, grid, 0.2, 1000.0);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_DOUBLE_EQ(pts[0].expected_max_loss, expected_max_loss(DiffusionModel{ou_ref}, 0.1, 0.2));
    EXPECT_DOUBLE_EQ(pts[0].expected_profit, expected_realized_profit(DiffusionModel{ou_ref}, 0.1, 0.2, 1000.0));
}

TEST(Frontier, LossGrowsAsMeanReversionWeakens)
{
    double prev = 0.0;
    for (double alpha : {1.0, 0.5, 0.1, 0.02, 0.001}) {
        const double l = expected_max_loss(DiffusionModel{OrnsteinUhlenbeck{alpha, 0.0, 0.1}}, 0.1, inf);
        EXPECT_GT(l, prev);
        prev = l;
    }
    // Growth is only logarithmic in 1/alpha; reference from a high-precision quadrature.
    EXPECT_NEAR(prev, 0.359536566441213, 1e-7);
}
