#pragma once

#include "exkit/path.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace exkit {

/// Shortest-form-safe decimal with 17 significant digits.
std::string format_double(double x);

/// Reads a `time,value` CSV. Blank lines are skipped; CRLF is accepted.
Path load_csv(const std::filesystem::path& file);
Path parse_csv(std::istream& in, const std::string& source = "<stream>");

void write_csv(const Path& path, std::ostream& out);
void write_csv(const Path& path, const std::filesystem::path& file);

/// Numeric samples from a CSV: the last column of every data row. A
/// non-numeric first row is treated as a header.
std::vector<double> load_samples(const std::filesystem::path& file);

} // namespace exkit
