#pragma once

#include <string>
#include <utility>
#include <vector>

namespace chd {

/// Column-oriented result block. Rendered output is byte-stable: numbers go
/// through %.17g, so identical runs produce identical files.
struct Table {
    std::vector<std::string> comments;  ///< emitted as leading "# " lines (CSV)
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_g17(double v);

std::string to_csv(const Table& table);

/// {"comments": [...], "columns": [...], "rows": [[...], ...]} with the same
/// %.17g rendering (numbers as strings would lose tooling; they stay numeric
/// and are re-parsed from the %.17g text so the two formats agree bit-for-bit).
std::string to_json(const Table& table);

/// Multiple named blocks. CSV: blocks in order, separated by one blank line,
/// each prefixed with "# block: <name>". JSON: {"<name>": {...}, ...}.
using NamedTables = std::vector<std::pair<std::string, Table>>;
std::string to_csv(const NamedTables& tables);
std::string to_json(const NamedTables& tables);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace chd
