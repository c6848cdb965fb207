#include "exkit/csv.hpp"

#include "exkit/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace exkit {

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view s, double& out)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::ifstream open_input(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) fail(ErrorCode::IoError, "cannot open " + file.string());
    return in;
}

} // namespace

Path parse_csv(std::istream& in, const std::string& source)
{
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<double> times, values;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        if (!header_seen) {
            const auto comma = row.find(',');
            if (comma == std::string_view::npos || trim(row.substr(0, comma)) != "time" ||
                trim(row.substr(comma + 1)) != "value")
                fail(ErrorCode::ParseError, source + ": expected header 'time,value'");
            header_seen = true;
            continue;
        }
        const auto comma = row.find(',');
        double t = 0.0, v = 0.0;
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos ||
            !parse_number(row.substr(0, comma), t) || !parse_number(row.substr(comma + 1), v))
            fail(ErrorCode::ParseError, source + ":" + std::to_string(line_no) + ": malformed row");
        if (!times.empty() && !(t > times.back()))
            fail(ErrorCode::NonMonotoneTime,
                 source + ":" + std::to_string(line_no) + ": time stamps must be strictly increasing");
        times.push_back(t);
        values.push_back(v);
    }
    if (!header_seen) fail(ErrorCode::ParseError, source + ": empty file");
    return Path(std::move(times), std::move(values));
}

Path load_csv(const std::filesystem::path& file)
{
    auto in = open_input(file);
    Path p = parse_csv(in, file.string());
    p.set_label(file.stem().string());
    return p;
}

void write_csv(const Path& path, std::ostream& out)
{
    out << "time,value\n";
    for (std::size_t i = 0; i < path.size(); ++i)
        out << format_double(path.time(i)) << ',' << format_double(path.value(i)) << '\n';
}

void write_csv(const Path& path, const std::filesystem::path& file)
{
    std::ofstream out(file);
    if (!out) fail(ErrorCode::IoError, "cannot write " + file.string());
    write_csv(path, out);
}

std::vector<double> load_samples(const std::filesystem::path& file)
{
    auto in = open_input(file);
    std::string line;
    std::size_t line_no = 0;
    std::vector<double> out;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto comma = row.rfind(',');
        const auto field = comma == std::string_view::npos ? row : row.substr(comma + 1);
        double v = 0.0;
        if (!parse_number(field, v)) {
            if (out.empty() && line_no == 1) continue;
            fail(ErrorCode::ParseError, file.string() + ":" + std::to_string(line_no) + ": not a number");
        }
        out.push_back(v);
    }
    if (out.empty()) fail(ErrorCode::ParseError, file.string() + ": no samples");
    return out;
}

} // namespace exkit
