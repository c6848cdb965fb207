#include "excursion_kit/run_context.hpp"

#include "exkit/analytics.hpp"
#include "exkit/error.hpp"
#include "exkit/ou_transforms.hpp"
#include "exkit/parallel.hpp"
#include "exkit/renewal.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <memory>

namespace exkit::cli {

namespace {

struct AnalyticsOpts {
    std::string kind, model = "ou", params, out = "-";
    std::string delta_grid, alpha_grid, lambda_grid, t_grid;
    std::string stop = "inf", horizon;
    double delta = 0.0;
    bool sigma_units = false;
};

double stationary_sigma(const DiffusionModel& model)
{
    if (const auto* ou = std::get_if<OrnsteinUhlenbeck>(&model)) return ou->stationary_stddev();
    if (const auto* bm = std::get_if<Brownian>(&model)) return bm->sigma;
    fail(ErrorCode::InvalidParam, "analytics support bm and ou models");
}

std::vector<double> delta_grid(const AnalyticsOpts& o, const DiffusionModel& model)
{
    if (o.delta_grid.empty()) throw CLI::ValidationError("--delta-grid", "required for this kind");
    auto grid = parse_grid(o.delta_grid);
    if (o.sigma_units) {
        const double s = stationary_sigma(model);
        for (auto& d : grid) d *= s;
    }
    return grid;
}

double single_delta(const AnalyticsOpts& o, const DiffusionModel& model)
{
    if (!(o.delta > 0.0)) throw CLI::ValidationError("--delta", "required for this kind");
    return o.sigma_units ? o.delta * stationary_sigma(model) : o.delta;
}

double horizon_of(const AnalyticsOpts& o)
{
    if (o.horizon.empty()) throw CLI::ValidationError("--horizon", "required for this kind");
    return parse_duration(o.horizon);
}

void run_analytics(const AnalyticsOpts& o, RunContext& ctx)
{
    const auto params = parse_params(o.params);
    const DiffusionModel model = make_model(o.model, params);
    const double M = parse_level(o.stop);
    ctx.parameters() = {{"kind", o.kind}, {"model", o.model}, {"params", params}, {"stop_loss", o.stop},
                        {"sigma_units", o.sigma_units}};
    ctx.manifest_for_file(o.out);
    const unsigned threads = ctx.threads;

    if (o.kind == "frontier") {
        const auto grid = delta_grid(o, model);
        const double horizon = horizon_of(o);
        ctx.parameters().update({{"delta_grid", o.delta_grid}, {"horizon", horizon}});
        const auto pts = efficient_frontier(model, grid, M, horizon, threads);
        std::vector<double> d, loss, profit;
        for (const auto& p : pts) {
            d.push_back(p.delta);
            loss.push_back(p.expected_max_loss);
            profit.push_back(p.expected_profit);
        }
        ctx.write_output(o.out, [&](std::ostream& os) {
            write_table(os, {"delta", "expected_max_loss", "expected_profit"}, {d, loss, profit});
        });
        return;
    }
    if (o.kind == "maxloss") {
        if (!o.alpha_grid.empty()) {
            auto* ou = std::get_if<OrnsteinUhlenbeck>(&model);
            if (!ou) fail(ErrorCode::InvalidParam, "--alpha-grid needs the ou model");
            const auto alphas = parse_grid(o.alpha_grid);
            const double delta = single_delta(o, model);
            ctx.parameters().update({{"alpha_grid", o.alpha_grid}, {"delta", delta}});
            std::vector<double> prob(alphas.size()), loss(alphas.size());
            parallel_for(alphas.size(), threads, [&](std::size_t i) {
                OrnsteinUhlenbeck m = *ou;
                m.alpha = alphas[i];
                prob[i] = std::isfinite(M) ? stop_loss_probability(DiffusionModel{m}, delta, M) : 0.0;
                loss[i] = expected_max_loss(DiffusionModel{m}, delta, M);
            });
            ctx.write_output(o.out, [&](std::ostream& os) {
                write_table(os, {"alpha", "stop_probability", "expected_max_loss"}, {alphas, prob, loss});
            });
            return;
        }
        const auto grid = delta_grid(o, model);
        ctx.parameters()["delta_grid"] = o.delta_grid;
        std::vector<double> prob(grid.size()), loss(grid.size());
        parallel_for(grid.size(), threads, [&](std::size_t i) {
            prob[i] = std::isfinite(M) ? stop_loss_probability(model, grid[i], M) : 0.0;
            loss[i] = expected_max_loss(model, grid[i], M);
        });
        ctx.write_output(o.out, [&](std::ostream& os) {
            write_table(os, {"delta", "stop_probability", "expected_max_loss"}, {grid, prob, loss});
        });
        return;
    }
    if (o.kind == "profit") {
        const auto grid = delta_grid(o, model);
        const double horizon = horizon_of(o);
        ctx.parameters().update({{"delta_grid", o.delta_grid}, {"horizon", horizon}});
        std::vector<double> per_cycle(grid.size()), trades(grid.size()), total(grid.size());
        parallel_for(grid.size(), threads, [&](std::size_t i) {
            per_cycle[i] = per_cycle_expected_profit(model, grid[i], M);
            trades[i] = expected_trades(model, grid[i], horizon);
            total[i] = per_cycle[i] * trades[i];
        });
        ctx.write_output(o.out, [&](std::ostream& os) {
            write_table(os, {"delta", "per_cycle_profit", "expected_trades", "expected_profit"},
                        {grid, per_cycle, trades, total});
        });
        return;
    }
    if (o.kind == "mgf") {
        if (o.lambda_grid.empty()) throw CLI::ValidationError("--lambda-grid", "required for mgf");
        const auto lambdas = parse_grid(o.lambda_grid);
        const double delta = single_delta(o, model);
        ctx.parameters().update({{"lambda_grid", o.lambda_grid}, {"delta", delta}});
        std::vector<double> w(lambdas.size()), h(lambdas.size()), c(lambdas.size());
        parallel_for(lambdas.size(), threads, [&](std::size_t i) {
            w[i] = waiting_mgf(model, lambdas[i], delta);
            h[i] = holding_mgf(model, lambdas[i], delta);
            c[i] = w[i] * h[i];
        });
        ctx.write_output(o.out, [&](std::ostream& os) {
            write_table(os, {"lambda", "waiting", "holding", "cycle"}, {lambdas, w, h, c});
        });
        return;
    }
    // hitting-density
    const auto* ou = std::get_if<OrnsteinUhlenbeck>(&model);
    if (!ou) fail(ErrorCode::InvalidParam, "hitting-density needs the ou model");
    if (o.t_grid.empty()) throw CLI::ValidationError("--t-grid", "required for hitting-density");
    const auto ts = parse_grid(o.t_grid);
    const double delta = single_delta(o, model);
    ctx.parameters().update({{"t_grid", o.t_grid}, {"delta", delta}});
    std::vector<double> f(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) f[i] = ou_hitting_density(ts[i], delta, ou->alpha, ou->gamma, ou->mu);
    ctx.write_output(o.out, [&](std::ostream& os) { write_table(os, {"t", "density"}, {ts, f}); });
}

} // namespace

void add_analytics(CLI::App& app, Dispatch& dispatch)
{
    auto o = std::make_shared<AnalyticsOpts>();
    auto* sub = app.add_subcommand("analytics", "Closed-form and numerical BM/OU strategy analytics (CSV)");
    sub->add_option("kind", o->kind, "frontier | maxloss | profit | mgf | hitting-density")
        ->required()
        ->check(CLI::IsMember({"frontier", "maxloss", "profit", "mgf", "hitting-density"}));
    sub->add_option("--model", o->model, "bm | ou")->check(CLI::IsMember({"bm", "ou"}))->capture_default_str();
    sub->add_option("--params", o->params, "bm: sigma; ou: alpha,gamma[,mu]")->required();
    sub->add_option("--delta-grid", o->delta_grid, "Thresholds, lo:hi:n or a,b,c");
    sub->add_option("--alpha-grid", o->alpha_grid, "maxloss: sweep the OU mean-reversion speed at fixed --delta");
    sub->add_option("--lambda-grid", o->lambda_grid, "mgf: Laplace arguments");
    sub->add_option("--t-grid", o->t_grid, "hitting-density: times");
    sub->add_option("--delta", o->delta, "Single threshold (mgf, hitting-density, alpha sweeps)");
    sub->add_flag("--sigma-units", o->sigma_units, "Thresholds are multiples of the stationary std (BM: sigma)");
    sub->add_option("--stop-loss", o->stop, "Stop distance M, or inf")->capture_default_str();
    sub->add_option("--horizon", o->horizon, "Trading horizon for frontier/profit (units s/m/h/d)");
    sub->add_option("--out", o->out, "CSV file or -")->capture_default_str();
    sub->callback([o, &dispatch] {
        dispatch.command = "analytics";
        dispatch.action = [o](RunContext& ctx) { run_analytics(*o, ctx); };
    });
}

} // namespace exkit::cli
