#include "output.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>

#include <fmt/format.h>

#include "topocrit/errors.hpp"

namespace topocrit::cli {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    return fmt::format("{:.17g}", x);
}

CsvWriter::CsvWriter(std::ostream& os, const std::string& comment, const std::vector<std::string>& columns)
    : os_(os), width_(columns.size()) {
    os_ << "# " << comment << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
    os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != width_) throw InvalidArgument("CsvWriter: row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_number(values[i]);
    os_ << '\n';
}

OutputTarget::OutputTarget(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw InvalidArgument("cannot open output file '" + path + "'");
}

std::string with_suffix(const std::string& path, const std::string& suffix, const std::string& extension) {
    const std::filesystem::path p(path);
    const std::string ext = extension.empty() ? p.extension().string() : extension;
    return (p.parent_path() / (p.stem().string() + suffix + ext)).string();
}

}  // namespace topocrit::cli
