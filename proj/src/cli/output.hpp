#pragma once

#include <fstream>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace topocrit::cli {

/// 17 significant digits; NaN as "nan".
std::string format_number(double x);

/// CSV with a leading "# generator config" comment and a header row, LF line endings.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::string& comment, const std::vector<std::string>& columns);

    void row(const std::vector<double>& values);

private:
    std::ostream& os_;
    std::size_t width_;
};

/// Output stream bound to a file, or to `fallback` when the path is empty.
class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback);
    std::ostream& stream() { return file_ ? *file_ : fallback_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream& fallback_;
};

/// "dir/name.csv" + "_x" → "dir/name_x.csv".
std::string with_suffix(const std::string& path, const std::string& suffix, const std::string& extension = "");

}  // namespace topocrit::cli
