#include "chd/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "chd/errors.hpp"

namespace chd {

namespace {

nlohmann::json table_json(const Table& table) {
    nlohmann::json j;
    j["comments"] = table.comments;
    j["columns"] = table.columns;
    auto rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw ArgumentError("table row width does not match the header");
        }
        auto r = nlohmann::json::array();
        for (double v : row) {
            if (std::isfinite(v)) {
                r.push_back(nlohmann::json::parse(format_g17(v)));
            } else {
                r.push_back(nullptr);
            }
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (const auto& c : table.comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw ArgumentError("table row width does not match the header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_g17(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    return table_json(table).dump(2) + "\n";
}

std::string to_csv(const NamedTables& tables) {
    std::string out;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) out += '\n';
        out += "# block: " + tables[i].first + '\n';
        out += to_csv(tables[i].second);
    }
    return out;
}

std::string to_json(const NamedTables& tables) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, table] : tables) j[name] = table_json(table);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot open for writing: " + path);
    f << content;
    if (!f) throw ArgumentError("write failed: " + path);
}

}  // namespace chd
