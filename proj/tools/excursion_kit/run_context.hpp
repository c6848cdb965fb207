#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace exkit::cli {

using json = nlohmann::ordered_json;

inline constexpr int manifest_schema_version = 1;

/// Bookkeeping for one invocation: inputs are digested, outputs listed, and
/// the manifest written once the command succeeds.
class RunContext {
public:
    RunContext(std::string command, std::vector<std::string> argv, std::ostream& out, std::ostream& err);

    [[nodiscard]] const std::string& command() const noexcept { return command_; }
    json& parameters() noexcept { return parameters_; }
    json& summary() noexcept { return summary_; }
    void set_seed(std::uint64_t seed) { seed_ = seed; }
    unsigned threads = 1;
    std::optional<std::filesystem::path> manifest_override;

    /// Records the file and its digest; returns the path unchanged.
    std::filesystem::path input(const std::filesystem::path& file);

    /// Writes to `target`, or to standard output when target is "-".
    void write_output(const std::string& target, const std::function<void(std::ostream&)>& writer);
    /// Creates `dir` if needed and writes dir/name.
    void write_in_dir(const std::filesystem::path& dir, const std::string& name,
                      const std::function<void(std::ostream&)>& writer);

    /// Where the manifest goes unless --manifest was given: dir/manifest.json
    /// for directory outputs, <file>.manifest.json for file outputs, standard
    /// error for "-".
    void manifest_for_file(const std::string& target);
    void manifest_for_dir(const std::filesystem::path& dir);

    std::ostream& progress() noexcept { return err_; }
    [[nodiscard]] json manifest() const;
    void finish();

private:
    std::string command_;
    std::vector<std::string> argv_;
    std::ostream& out_;
    std::ostream& err_;
    json parameters_ = json::object();
    json summary_ = json::object();
    std::optional<std::uint64_t> seed_;
    json inputs_ = json::array();
    std::vector<std::string> outputs_;
    std::optional<std::filesystem::path> manifest_path_;
};

/// FNV-1a 64-bit digest of a file, as 16 hex digits.
std::string file_digest(const std::filesystem::path& file);

/// "30", "90s", "15m", "6h", "5d" -> seconds (a bare number is taken as is).
double parse_duration(const std::string& text);
/// "alpha=0.5,mu=0,gamma=0.1".
std::map<std::string, double> parse_params(const std::string& text);
/// "lo:hi:n" (n evenly spaced points, ends included) or "a,b,c".
std::vector<double> parse_grid(const std::string& text);
/// Number, or inf / infinity.
double parse_level(const std::string& text);

void write_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& columns);

/// What a subcommand does once argv has been parsed.
struct Dispatch {
    std::string command;
    std::function<void(RunContext&)> action;
};

void add_decompose(CLI::App& app, Dispatch& dispatch);
void add_backtest(CLI::App& app, Dispatch& dispatch);
void add_roughness(CLI::App& app, Dispatch& dispatch);
void add_simulate(CLI::App& app, Dispatch& dispatch);
void add_bootstrap(CLI::App& app, Dispatch& dispatch);
void add_analytics(CLI::App& app, Dispatch& dispatch);
void add_estimate(CLI::App& app, Dispatch& dispatch);
void add_signal(CLI::App& app, Dispatch& dispatch);
void add_report(CLI::App& app, Dispatch& dispatch);

} // namespace exkit::cli
