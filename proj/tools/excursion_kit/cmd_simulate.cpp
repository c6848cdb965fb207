#include "excursion_kit/run_context.hpp"

#include "exkit/csv.hpp"
#include "exkit/empirical.hpp"
#include "exkit/error.hpp"
#include "exkit/simulate.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>

namespace exkit::cli {

namespace {

std::string numbered(const char* stem, std::size_t i)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%04zu.csv", stem, i);
    return buf;
}

/// Splits "up_alpha=..,down_gamma=.." into the two leg parameter maps.
std::pair<std::map<std::string, double>, std::map<std::string, double>>
split_legs(const std::map<std::string, double>& params)
{
    std::map<std::string, double> up, down;
    for (const auto& [k, v] : params) {
        if (k.rfind("up_", 0) == 0)
            up[k.substr(3)] = v;
        else if (k.rfind("down_", 0) == 0)
            down[k.substr(5)] = v;
        else if (k != "delta")
            fail(ErrorCode::InvalidParam, "concat parameter '" + k + "' needs an up_ or down_ prefix");
    }
    return {up, down};
}

void write_paths(RunContext& ctx, const std::string& out, const std::vector<Path>& paths)
{
    if (out == "-") {
        if (paths.size() != 1) throw CLI::ValidationError("--out", "'-' needs --paths 1");
        ctx.manifest_for_file(out);
        ctx.write_output(out, [&](std::ostream& os) { write_csv(paths.front(), os); });
        return;
    }
    ctx.manifest_for_dir(out);
    for (std::size_t i = 0; i < paths.size(); ++i)
        ctx.write_in_dir(out, numbered("path", i), [&](std::ostream& os) { write_csv(paths[i], os); });
}

} // namespace

void add_simulate(CLI::App& app, Dispatch& dispatch)
{
    struct Opts {
        std::string model, params, out;
        std::string up_model = "ou", down_model = "ou";
        double dt = 1.0, x0 = 0.0, delta = 0.0;
        std::string horizon;
        std::size_t steps = 1000, paths = 1;
        std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("simulate", "Simulate BM, OU, fBM, fOU or concatenated paths");
    sub->add_option("--model", o->model, "bm | ou | fbm | fou | concat")
        ->required()
        ->check(CLI::IsMember({"bm", "ou", "fbm", "fou", "concat"}));
    sub->add_option("--params", o->params,
                    "k=v list. bm: sigma; ou: alpha,gamma[,mu]; fbm: H; fou: lambda,gamma,H; "
                    "concat: up_*/down_* keys of the two leg models");
    sub->add_option("--up-model", o->up_model, "concat: law of the 0 -> delta leg (bm | ou)")->capture_default_str();
    sub->add_option("--down-model", o->down_model, "concat: law of the delta -> 0 leg (bm | ou)")->capture_default_str();
    sub->add_option("--delta", o->delta, "concat: switching level")->check(CLI::PositiveNumber);
    sub->add_option("--horizon", o->horizon, "concat: total time, overrides --steps (units s/m/h/d)");
    sub->add_option("--dt", o->dt, "Time step")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--steps", o->steps, "Increments per path")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--paths", o->paths, "Number of paths")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", o->seed, "RNG seed")->capture_default_str();
    sub->add_option("--x0", o->x0, "Start value (not concat)")->capture_default_str();
    sub->add_option("--out", o->out, "Output directory (path_NNNN.csv), or - for a single path")->required();
    sub->callback([o, &dispatch] {
        dispatch.command = "simulate";
        dispatch.action = [o](RunContext& ctx) {
            const auto params = parse_params(o->params);
            SimConfig cfg;
            cfg.dt = o->dt;
            cfg.n_steps = o->steps;
            cfg.n_paths = o->paths;
            cfg.seed = o->seed;
            cfg.x0 = o->x0;
            cfg.threads = ctx.threads;
            ctx.set_seed(o->seed);
            ctx.parameters() = {{"model", o->model}, {"params", params},  {"dt", o->dt},
                                {"steps", o->steps}, {"paths", o->paths}, {"x0", o->x0}};
            if (o->model != "concat") {
                const auto paths = simulate(make_model(o->model, params), cfg);
                ctx.progress() << "simulated " << paths.size() << " path(s)\n";
                write_paths(ctx, o->out, paths);
                return;
            }
            if (o->out == "-") throw CLI::ValidationError("--out", "concat writes a directory");
            const auto [up, down] = split_legs(params);
            ConcatSpec spec;
            spec.up_model = make_model(o->up_model, up);
            spec.down_model = make_model(o->down_model, down);
            spec.delta = o->delta;
            if (auto it = params.find("delta"); it != params.end() && o->delta == 0.0) spec.delta = it->second;
            if (!o->horizon.empty()) spec.horizon = parse_duration(o->horizon);
            ctx.parameters().update({{"up_model", o->up_model}, {"down_model", o->down_model},
                                     {"delta", spec.delta}, {"horizon", spec.horizon}});
            const auto batch = simulate_concat(spec, cfg);
            ctx.progress() << "simulated " << batch.paths.size() << " concatenated path(s)\n";
            write_paths(ctx, o->out, batch.paths);
            for (std::size_t i = 0; i < batch.paths.size(); ++i) {
                ctx.write_in_dir(o->out, numbered("segments", i), [&](std::ostream& os) {
                    os << "time,segment\n";
                    const auto& p = batch.paths[i];
                    for (std::size_t k = 0; k < p.size(); ++k)
                        os << format_double(p.time(k)) << ','
                           << (batch.labels[i][k] == SegmentLabel::up ? "up" : "down") << '\n';
                });
            }
        };
    });
}

void add_bootstrap(CLI::App& app, Dispatch& dispatch)
{
    struct Opts {
        std::string input, out, delta = "auto", horizon;
        std::size_t paths = 100;
        std::uint64_t seed = 0;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("bootstrap", "Resample paths from the empirical delta-excursion measure");
    sub->add_option("--input", o->input, "time,value CSV of the source signal")->required()->check(CLI::ExistingFile);
    sub->add_option("--delta", o->delta, "Threshold, or auto for the sample standard deviation")->capture_default_str();
    sub->add_option("--horizon", o->horizon, "Length of each generated path (units s/m/h/d)")->required();
    sub->add_option("--paths", o->paths, "Number of paths")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", o->seed, "RNG seed")->capture_default_str();
    sub->add_option("--out", o->out, "Output directory (path_NNNN.csv)")->required();
    sub->callback([o, &dispatch] {
        dispatch.command = "bootstrap";
        dispatch.action = [o](RunContext& ctx) {
            const double horizon = parse_duration(o->horizon);
            const Path source = load_csv(ctx.input(o->input));
            const Path shifted = source.shifted_to_zero();
            const double delta = o->delta == "auto" ? sample_stddev(shifted.values()) : parse_level(o->delta);
            if (!(delta > 0.0) || !std::isfinite(delta))
                throw CLI::ValidationError("--delta", "must be a positive number or auto");
            ctx.set_seed(o->seed);
            ctx.parameters() = {{"input", o->input}, {"delta", o->delta}, {"delta_value", delta},
                                {"horizon", horizon}, {"paths", o->paths}};
            const auto measure = empirical_measure(shifted, delta);
            const auto paths = bootstrap_paths(measure, horizon, o->paths, o->seed, ctx.threads);
            ctx.progress() << "resampled " << paths.size() << " path(s) from " << measure.excursions.size()
                           << " excursions\n";
            write_paths(ctx, o->out, paths);
            ctx.summary() = {{"source_excursions", measure.excursions.size()}, {"delta", delta}};
        };
    });
}

} // namespace exkit::cli
