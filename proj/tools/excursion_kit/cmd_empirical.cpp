#include "excursion_kit/run_context.hpp"

#include "exkit/csv.hpp"
#include "exkit/empirical.hpp"
#include "exkit/error.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <memory>

namespace exkit::cli {

void add_estimate(CLI::App& app, Dispatch& dispatch)
{
    struct Opts {
        std::string model, input, out = "-";
        double dt = 1.0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("estimate", "Fit a model to a signal path (JSON)");
    sub->add_option("model", o->model, "ou")->required()->check(CLI::IsMember({"ou"}));
    sub->add_option("--input", o->input, "time,value CSV sampled every dt")->required()->check(CLI::ExistingFile);
    sub->add_option("--dt", o->dt, "Sampling interval")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--out", o->out, "JSON file or -")->capture_default_str();
    sub->callback([o, &dispatch] {
        dispatch.command = "estimate";
        dispatch.action = [o](RunContext& ctx) {
            ctx.parameters() = {{"model", o->model}, {"input", o->input}, {"dt", o->dt}};
            const Path path = load_csv(ctx.input(o->input));
            const OUFit fit = estimate_ou_moments(path, o->dt);
            const json doc{{"model", "ou"},         {"alpha_hat", fit.alpha_hat}, {"mu_hat", fit.mu_hat},
                           {"gamma_hat", fit.gamma_hat}, {"rho_hat", fit.rho_hat},   {"dt", fit.dt},
                           {"stationary_std", fit.gamma_hat / std::sqrt(2.0 * fit.alpha_hat)}};
            ctx.manifest_for_file(o->out);
            ctx.write_output(o->out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
        };
    });
}

void add_signal(CLI::App& app, Dispatch& dispatch)
{
    struct Opts {
        std::string kind, a, b, out = "-", hedge_out, window = "5d", refit = "1d";
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("signal", "Build a trading signal from prices");
    sub->add_option("kind", o->kind, "pairs")->required()->check(CLI::IsMember({"pairs"}));
    sub->add_option("--a", o->a, "time,value CSV of asset A")->required()->check(CLI::ExistingFile);
    sub->add_option("--b", o->b, "time,value CSV of asset B")->required()->check(CLI::ExistingFile);
    sub->add_option("--window", o->window, "Regression window (units s/m/h/d)")->capture_default_str();
    sub->add_option("--refit", o->refit, "Refit interval (units s/m/h/d)")->capture_default_str();
    sub->add_option("--out", o->out, "time,value CSV of A - a_t B, or -")->capture_default_str();
    sub->add_option("--hedge-out", o->hedge_out, "Optional time,value CSV of the hedge ratio a_t");
    sub->callback([o, &dispatch] {
        dispatch.command = "signal";
        dispatch.action = [o](RunContext& ctx) {
            PairSignalConfig cfg;
            cfg.window = parse_duration(o->window);
            cfg.refit_interval = parse_duration(o->refit);
            ctx.parameters() = {{"kind", o->kind}, {"a", o->a}, {"b", o->b},
                                {"window", cfg.window}, {"refit", cfg.refit_interval}};
            const Path a = load_csv(ctx.input(o->a));
            const Path b = load_csv(ctx.input(o->b));
            const PairSignal sig = pairs_signal(a, b, cfg);
            ctx.manifest_for_file(o->out);
            ctx.write_output(o->out, [&](std::ostream& os) { write_csv(sig.signal, os); });
            if (!o->hedge_out.empty()) {
                const std::vector<double> t(sig.signal.times().begin(), sig.signal.times().end());
                ctx.write_output(o->hedge_out, [&](std::ostream& os) {
                    write_table(os, {"time", "value"}, {t, sig.hedge_ratio});
                });
            }
            ctx.summary() = {{"samples", sig.signal.size()}};
        };
    });
}

void add_report(CLI::App& app, Dispatch& dispatch)
{
    struct Opts {
        std::string a, b, out = "-";
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("report", "Compare two samples: KS test, rank-frequency tables, tail exponents");
    sub->add_option("--a", o->a, "Sample file (last CSV column)")->required()->check(CLI::ExistingFile);
    sub->add_option("--b", o->b, "Sample file (last CSV column)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o->out, "JSON file or -")->capture_default_str();
    sub->callback([o, &dispatch] {
        dispatch.command = "report";
        dispatch.action = [o](RunContext& ctx) {
            ctx.parameters() = {{"a", o->a}, {"b", o->b}};
            const auto a = load_samples(ctx.input(o->a));
            const auto b = load_samples(ctx.input(o->b));
            const DistributionReport r = distribution_report(a, b);
            auto table = [](const std::vector<RankFrequencyRow>& rows) {
                json t = json::array();
                for (const auto& row : rows) t.push_back({row.value, row.frequency});
                return t;
            };
            auto tail = [](const TailFit& f) {
                return json{{"exponent", f.exponent}, {"r_squared", f.r_squared}, {"points", f.points}};
            };
            const json doc{{"ks", {{"statistic", r.ks.statistic}, {"p_value", r.ks.p_value}}},
                           {"n_a", a.size()},
                           {"n_b", b.size()},
                           {"tail_a", tail(r.tail_a)},
                           {"tail_b", tail(r.tail_b)},
                           {"rank_frequency_a", table(r.rank_frequency_a)},
                           {"rank_frequency_b", table(r.rank_frequency_b)}};
            ctx.manifest_for_file(o->out);
            ctx.write_output(o->out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
        };
    });
}

} // namespace exkit::cli
