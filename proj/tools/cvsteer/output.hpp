#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace cvsteer::cli {

/// Bad flags or ranges: exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json, Svg };

Format parse_format(const std::string& name);
const char* to_string(Format format);

struct OutputSpec {
    Format format = Format::Csv;
    std::string path = "-"; // "-" is standard output

    bool to_stdout() const { return path.empty() || path == "-"; }
    /// Throws UsageError unless svg is allowed for this subcommand.
    void require_svg_allowed(bool allowed) const;
};

/// 17 significant digits.
std::string fmt(double v);

/// Empty cells print as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

std::string to_csv_cell(const Cell& cell);
nlohmann::json to_json(const Cell& cell);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    std::string to_csv() const;
    /// One object per row, keyed by header.
    nlohmann::json rows_json() const;
};

/// {"meta": {"command", "inputs", "version"}, "rows": [...]} plus extras.
nlohmann::json json_document(const std::string& command, const nlohmann::json& inputs, const Table& table);
std::string dump(const nlohmann::json& doc);

/// Writes `content` to `path` through a temporary file in the same
/// directory that is renamed into place; nothing is left behind on failure.
void write_atomically(const std::filesystem::path& path, const std::string& content);

void emit(const OutputSpec& spec, const std::string& content, std::ostream& out);

} // namespace cvsteer::cli
