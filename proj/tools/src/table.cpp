#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "tcd/cli/run.hpp"

namespace tcd::cli {

namespace {

struct CsvCell {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return std::isfinite(v) ? format_number(v) : std::string{}; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const {
        if (v.find_first_of(",\"\n") == std::string::npos) {
            return v;
        }
        std::string quoted = "\"";
        for (char ch : v) {
            if (ch == '"') {
                quoted += '"';
            }
            quoted += ch;
        }
        return quoted + '"';
    }
};

struct JsonCell {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
        return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
};

} // namespace

std::string format_number(double value) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return {buf.data(), ptr};
}

void write_csv(const Table& table, std::ostream& out) {
    for (const auto& [key, cell] : table.meta) {
        out << "# " << key << '=' << std::visit(CsvCell{}, cell) << '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
        }
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[table.columns[i]] = std::visit(JsonCell{}, row[i]);
        }
        rows.push_back(std::move(obj));
    }
    if (table.meta.empty()) {
        out << rows.dump(2) << '\n';
        return;
    }
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [key, cell] : table.meta) {
        meta[key] = std::visit(JsonCell{}, cell);
    }
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    doc["meta"] = std::move(meta);
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

} // namespace tcd::cli
