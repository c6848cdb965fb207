#include "excursion_kit/run_context.hpp"

#include "exkit/csv.hpp"
#include "exkit/error.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#ifndef EXKIT_VERSION
#define EXKIT_VERSION "unknown"
#endif

namespace exkit::cli {

namespace fs = std::filesystem;

RunContext::RunContext(std::string command, std::vector<std::string> argv, std::ostream& out, std::ostream& err)
    : command_(std::move(command)), argv_(std::move(argv)), out_(out), err_(err)
{
}

fs::path RunContext::input(const fs::path& file)
{
    inputs_.push_back({{"path", file.string()}, {"fnv1a64", file_digest(file)}});
    return file;
}

void RunContext::write_output(const std::string& target, const std::function<void(std::ostream&)>& writer)
{
    if (target == "-") {
        writer(out_);
        out_.flush();
        outputs_.push_back("-");
        return;
    }
    const fs::path file(target);
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
    std::ofstream os(file, std::ios::binary);
    if (!os) fail(ErrorCode::IoError, "cannot write " + target);
    writer(os);
    os.close();
    if (!os) fail(ErrorCode::IoError, "write failed for " + target);
    outputs_.push_back(target);
}

void RunContext::write_in_dir(const fs::path& dir, const std::string& name,
                              const std::function<void(std::ostream&)>& writer)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail(ErrorCode::IoError, "cannot create directory " + dir.string() + ": " + ec.message());
    write_output((dir / name).string(), writer);
}

void RunContext::manifest_for_file(const std::string& target)
{
    if (target == "-")
        manifest_path_.reset();
    else
        manifest_path_ = fs::path(target + ".manifest.json");
}

void RunContext::manifest_for_dir(const fs::path& dir)
{
    manifest_path_ = dir / "manifest.json";
}

json RunContext::manifest() const
{
    json m;
    m["schema_version"] = manifest_schema_version;
    m["tool"] = "excursion_kit";
    m["version"] = EXKIT_VERSION;
    m["command"] = command_;
    m["argv"] = argv_;
    m["parameters"] = parameters_;
    if (seed_)
        m["seed"] = *seed_;
    else
        m["seed"] = nullptr;
    m["threads"] = threads;
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    if (!summary_.empty()) m["summary"] = summary_;
    return m;
}

void RunContext::finish()
{
    const auto target = manifest_override ? manifest_override : manifest_path_;
    // The thread count never changes the outputs; leave it out of what must
    // be byte-identical across reruns.
    json m = manifest();
    m.erase("threads");
    const std::string text = m.dump(2) + "\n";
    if (!target) {
        err_ << text;
        return;
    }
    if (target->has_parent_path()) fs::create_directories(target->parent_path());
    std::ofstream os(*target, std::ios::binary);
    if (!os) fail(ErrorCode::IoError, "cannot write manifest " + target->string());
    os << text;
}

std::string file_digest(const fs::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open " + file.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

namespace {

double to_number(std::string_view s, const std::string& what)
{
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw CLI::ValidationError(what, "not a number: '" + std::string(s) + "'");
    return v;
}

std::string_view strip(std::string_view s)
{
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

} // namespace

double parse_duration(const std::string& text)
{
    std::string_view s = strip(text);
    double unit = 1.0;
    if (!s.empty()) {
        switch (s.back()) {
        case 's': unit = 1.0; break;
        case 'm': unit = 60.0; break;
        case 'h': unit = 3600.0; break;
        case 'd': unit = 86400.0; break;
        default: unit = 0.0;
        }
        if (unit != 0.0)
            s.remove_suffix(1);
        else
            unit = 1.0;
    }
    const double v = to_number(s, "duration");
    if (!(v > 0.0) || !std::isfinite(v)) throw CLI::ValidationError("duration", "must be positive: " + text);
    return v * unit;
}

std::map<std::string, double> parse_params(const std::string& text)
{
    std::map<std::string, double> out;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = strip(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw CLI::ValidationError("--params", "expected key=value, got '" + std::string(item) + "'");
        out[std::string(strip(item.substr(0, eq)))] = to_number(strip(item.substr(eq + 1)), "--params");
    }
    return out;
}

std::vector<double> parse_grid(const std::string& text)
{
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string_view> parts;
        std::string_view rest = text;
        for (auto c = rest.find(':'); ; c = rest.find(':')) {
            parts.push_back(strip(rest.substr(0, c)));
            if (c == std::string_view::npos) break;
            rest = rest.substr(c + 1);
        }
        if (parts.size() != 3) throw CLI::ValidationError("grid", "expected lo:hi:n, got '" + text + "'");
        const double lo = to_number(parts[0], "grid"), hi = to_number(parts[1], "grid");
        const double n = to_number(parts[2], "grid");
        if (!(n >= 1.0) || n != std::floor(n) || n > 1e7) throw CLI::ValidationError("grid", "bad point count in '" + text + "'");
        const auto count = static_cast<std::size_t>(n);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
        return out;
    }
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = strip(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (!item.empty()) out.push_back(to_number(item, "grid"));
    }
    if (out.empty()) throw CLI::ValidationError("grid", "empty grid");
    return out;
}

double parse_level(const std::string& text)
{
    const std::string_view s = strip(text);
    if (s == "inf" || s == "infinity" || s == "none") return std::numeric_limits<double>::infinity();
    return to_number(s, "level");
}

void write_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& columns)
{
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_double(columns[c][r]);
        out << '\n';
    }
}

} // namespace exkit::cli
