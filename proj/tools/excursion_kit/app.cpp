#include "excursion_kit/app.hpp"

#include "excursion_kit/run_context.hpp"
#include "exkit/error.hpp"
#include "exkit/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace exkit::cli {

int run(int argc, const char* const* argv)
{
    return run(argc, argv, std::cout, std::cerr);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Delta-excursion analysis of sampled paths: decomposition, threshold strategy backtests, "
                 "BM/OU analytics and path synthesis.",
                 "excursion_kit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", EXKIT_VERSION);

    unsigned threads = default_thread_count();
    std::string manifest;
    app.add_option("--threads", threads, "Worker threads (default: $EXCURSION_KIT_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    app.add_option("--manifest", manifest, "Manifest path (default: next to the output)");

    Dispatch dispatch;
    add_decompose(app, dispatch);
    add_simulate(app, dispatch);
    add_backtest(app, dispatch);
    add_roughness(app, dispatch);
    add_analytics(app, dispatch);
    add_bootstrap(app, dispatch);
    add_estimate(app, dispatch);
    add_signal(app, dispatch);
    add_report(app, dispatch);

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        RunContext ctx(dispatch.command, args, out, err);
        ctx.threads = threads;
        if (!manifest.empty()) ctx.manifest_override = manifest;
        dispatch.action(ctx);
        ctx.finish();
    } catch (const CLI::Error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace exkit::cli
