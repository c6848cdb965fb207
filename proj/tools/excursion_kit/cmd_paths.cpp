#include "excursion_kit/run_context.hpp"

#include "exkit/csv.hpp"
#include "exkit/error.hpp"
#include "exkit/excursion.hpp"
#include "exkit/roughness.hpp"
#include "exkit/strategy.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <memory>

namespace exkit::cli {

namespace {

json excursion_json(const DeltaExcursion& e, std::size_t index)
{
    json j;
    j["index"] = index;
    j["complete"] = e.complete;
    j["reached_delta"] = e.reached_delta();
    j["start_time"] = e.start_time();
    j["end_time"] = e.times.back();
    j["duration"] = e.duration();
    j["waiting"] = e.waiting_duration();
    j["holding"] = e.holding_duration();
    j["max_height"] = e.max_height();
    j["tau_index"] = e.tau_index;
    j["last_exit_index"] = e.last_exit_index;
    j["times"] = e.times;
    j["values"] = e.values;
    return j;
}

Side parse_side(const std::string& s)
{
    if (s == "short") return Side::short_only;
    if (s == "long") return Side::long_only;
    return Side::two_sided;
}

} // namespace

void add_decompose(CLI::App& app, Dispatch& dispatch)
{
    struct Opts {
        std::string input, out = "-", order = "none";
        double delta = 0.0;
        bool auto_shift = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("decompose", "Split a path into delta-excursions (JSON)");
    sub->add_option("--input", o->input, "time,value CSV")->required()->check(CLI::ExistingFile);
    sub->add_option("--delta", o->delta, "Threshold delta > 0")->required()->check(CLI::PositiveNumber);
    sub->add_option("--out", o->out, "Output JSON file or - for stdout")->capture_default_str();
    sub->add_flag("--auto-shift", o->auto_shift, "Subtract the first value instead of requiring S_0 = 0");
    sub->add_option("--two-sided", o->order, "Also report the nested two-sided split")
        ->check(CLI::IsMember({"none", "positive-first", "negative-first"}))
        ->capture_default_str();
    sub->callback([o, &dispatch] {
        dispatch.command = "decompose";
        dispatch.action = [o](RunContext& ctx) {
            ctx.parameters() = {{"input", o->input}, {"delta", o->delta}, {"auto_shift", o->auto_shift},
                                {"two_sided", o->order}};
            const Path path = load_csv(ctx.input(o->input));
            DecomposeOptions opts;
            opts.auto_shift = o->auto_shift;
            const auto excursions = decompose(path, o->delta, opts);
            json doc;
            doc["delta"] = o->delta;
            doc["samples"] = path.size();
            std::size_t complete = 0;
            doc["excursions"] = json::array();
            for (std::size_t i = 0; i < excursions.size(); ++i) {
                complete += excursions[i].complete ? 1 : 0;
                doc["excursions"].push_back(excursion_json(excursions[i], i));
            }
            doc["complete_excursions"] = complete;
            if (o->order != "none") {
                const auto order = o->order == "positive-first" ? SplitOrder::positive_first : SplitOrder::negative_first;
                const auto two = decompose_two_sided(path, o->delta, order, opts);
                json pieces = json::array();
                for (const auto& p : two.pieces)
                    pieces.push_back({{"first", p.first}, {"last", p.last}, {"complete", p.complete},
                                      {"inner_boundaries", p.inner_boundaries}});
                doc["two_sided"] = {{"order", o->order}, {"pieces", pieces}, {"boundaries", two.boundaries()}};
            }
            ctx.summary() = {{"excursions", excursions.size()}, {"complete_excursions", complete}};
            ctx.manifest_for_file(o->out);
            ctx.write_output(o->out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
        };
    });
}

void add_backtest(CLI::App& app, Dispatch& dispatch)
{
    struct Opts {
        std::string input, out, side = "short", stop = "inf";
        double delta = 0.0, initial = 0.0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("backtest", "Run the threshold strategy on a signal path");
    sub->add_option("--input", o->input, "time,value CSV of the signal")->required()->check(CLI::ExistingFile);
    sub->add_option("--delta", o->delta, "Entry threshold")->required()->check(CLI::PositiveNumber);
    sub->add_option("--side", o->side, "short: sell at +delta; long: buy at -delta; both")
        ->check(CLI::IsMember({"short", "long", "both"}))
        ->capture_default_str();
    sub->add_option("--stop-loss", o->stop, "Stop distance M beyond the threshold, or inf")->capture_default_str();
    sub->add_option("--initial-value", o->initial, "Starting portfolio value")->capture_default_str();
    sub->add_option("--out", o->out, "Output directory (ledger.csv, cycles.json, manifest.json)")->required();
    sub->callback([o, &dispatch] {
        dispatch.command = "backtest";
        dispatch.action = [o](RunContext& ctx) {
            StrategySpec spec;
            spec.side = parse_side(o->side);
            spec.delta = o->delta;
            spec.initial_value = o->initial;
            const double M = parse_level(o->stop);
            if (std::isfinite(M)) spec.stop_loss = M;
            ctx.parameters() = {{"input", o->input}, {"delta", o->delta}, {"side", o->side},
                                {"stop_loss", o->stop}, {"initial_value", o->initial}};
            const Path path = load_csv(ctx.input(o->input));
            const StrategyLedger ledger = run_strategy(path, spec);

            ctx.manifest_for_dir(o->out);
            ctx.write_in_dir(o->out, "ledger.csv", [&](std::ostream& os) {
                os << "time,position,value,realized,drawdown\n";
                for (std::size_t i = 0; i < ledger.times.size(); ++i)
                    os << format_double(ledger.times[i]) << ',' << ledger.positions[i] << ','
                       << format_double(ledger.value[i]) << ',' << format_double(ledger.realized[i]) << ','
                       << format_double(ledger.drawdown[i]) << '\n';
            });
            json cycles = json::array();
            std::size_t complete = 0, stopped = 0;
            for (const auto& t : ledger.trades) {
                complete += t.complete ? 1 : 0;
                stopped += t.stopped_out ? 1 : 0;
                cycles.push_back({{"leg", t.leg == Polarity::upper ? "short" : "long"},
                                  {"start_time", path.time(t.start_index)},
                                  {"entry_time", path.time(t.entry_index)},
                                  // Still open at the end of the path.
                                  {"exit_time", t.exit_index < path.size() ? json(path.time(t.exit_index)) : json(nullptr)},
                                  {"complete", t.complete},
                                  {"stopped_out", t.stopped_out},
                                  {"waiting", t.waiting_duration},
                                  {"holding", t.holding_duration},
                                  {"max_loss", t.max_loss},
                                  {"profit", t.profit}});
            }
            ctx.write_in_dir(o->out, "cycles.json", [&](std::ostream& os) {
                json doc{{"delta", o->delta}, {"cycles", cycles}};
                os << doc.dump(2) << '\n';
            });
            ctx.summary() = {{"trades", ledger.trades.size()},
                             {"complete_cycles", complete},
                             {"stopped_out", stopped},
                             {"final_value", ledger.value.back()},
                             {"worst_loss", worst_loss(ledger)}};
        };
    });
}

void add_roughness(CLI::App& app, Dispatch& dispatch)
{
    struct Opts {
        std::string input, out = "-";
        int n_min = 0, n_max = 12;
        double scale = 0.0;
        std::size_t min_count = 5;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("roughness", "Crossing curve D^delta over a dyadic delta grid");
    sub->add_option("--input", o->input, "time,value CSV")->required()->check(CLI::ExistingFile);
    sub->add_option("--n-min", o->n_min, "First grid exponent")->capture_default_str();
    sub->add_option("--n-max", o->n_max, "Last grid exponent")->capture_default_str();
    sub->add_option("--scale", o->scale, "Grid unit (0: sample standard deviation)")->capture_default_str();
    sub->add_option("--min-count", o->min_count, "Smallest count kept in the fit")->capture_default_str();
    sub->add_option("--out", o->out, "CSV delta,count,realized_profit or -")->capture_default_str();
    sub->callback([o, &dispatch] {
        dispatch.command = "roughness";
        dispatch.action = [o](RunContext& ctx) {
            ctx.parameters() = {{"input", o->input}, {"n_min", o->n_min}, {"n_max", o->n_max},
                                {"scale", o->scale}, {"min_count", o->min_count}};
            const Path path = load_csv(ctx.input(o->input));
            const CrossingCurve curve = crossing_curve(path, o->n_min, o->n_max, {o->scale});
            std::vector<double> counts(curve.counts.begin(), curve.counts.end());
            ctx.manifest_for_file(o->out);
            ctx.write_output(o->out, [&](std::ostream& os) {
                write_table(os, {"delta", "count", "realized_profit"}, {curve.deltas, counts, curve.realized_profit});
            });
            json fit{{"resolution", curve.resolution}};
            try {
                FitOptions fo;
                fo.min_count = o->min_count;
                const auto r = roughness_exponent(curve, fo);
                fit.update({{"p_hat", r.p_hat}, {"slope", r.slope}, {"r_squared", r.r_squared}, {"points", r.points},
                            {"delta_min", r.delta_min}, {"delta_max", r.delta_max}});
            } catch (const Error& e) {
                fit["fit_error"] = e.what();
            }
            ctx.summary() = fit;
        };
    });
}

} // namespace exkit::cli
