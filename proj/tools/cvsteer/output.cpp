#include "output.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>
#include <type_traits>

#include <unistd.h>

#include "cvsteer/version.hpp"

namespace cvsteer::cli {

Format parse_format(const std::string& name)
{
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "svg") return Format::Svg;
    throw UsageError("unknown format '" + name + "' (expected csv, json or svg)");
}

const char* to_string(Format format)
{
    switch (format) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Svg: return "svg";
    }
    return "?";
}

void OutputSpec::require_svg_allowed(bool allowed) const
{
    if (format == Format::Svg && !allowed) {
        throw UsageError("svg output is only available for steer-region and keyrate");
    }
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv_cell(const Cell& cell)
{
    struct {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return fmt(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return v; }
    } visitor;
    return std::visit(visitor, cell);
}

nlohmann::json to_json(const Cell& cell)
{
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::monostate>) {
                return nullptr;
            } else {
                return v;
            }
        },
        cell);
}

std::string Table::to_csv() const
{
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out += ',';
            out += to_csv_cell(r[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json Table::rows_json() const
{
    auto out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) obj[header[i]] = to_json(r[i]);
        out.push_back(std::move(obj));
    }
    return out;
}

nlohmann::json json_document(const std::string& command, const nlohmann::json& inputs, const Table& table)
{
    nlohmann::json doc;
    doc["meta"] = {{"command", command}, {"inputs", inputs}, {"version", std::string(kVersion)}};
    doc["rows"] = table.rows_json();
    return doc;
}

std::string dump(const nlohmann::json& doc)
{
    return doc.dump(2) + "\n";
}

void write_atomically(const std::filesystem::path& path, const std::string& content)
{
    const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    const auto tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f << content;
        f.flush();
        if (!f) {
            f.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw std::runtime_error("cannot move output into " + path.string() + ": " + ec.message());
    }
}

void emit(const OutputSpec& spec, const std::string& content, std::ostream& out)
{
    if (spec.to_stdout()) {
        out << content;
        out.flush();
        return;
    }
    write_atomically(spec.path, content);
}

} // namespace cvsteer::cli
